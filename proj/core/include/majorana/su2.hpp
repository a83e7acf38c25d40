#pragma once

#include "majorana/spin.hpp"

namespace majorana {

// Wigner little-d matrix element d^j_{m' m}(beta), arguments doubled so
// half-integer spins stay integral.
double wigner_d(int two_j, int two_mp, int two_m, double beta);

// Active z-y-z rotation of a spin state:
// psi'_{m'} = sum_m e^{-i m' alpha} d^j_{m' m}(beta) e^{-i m gamma} psi_m.
SpinState rotate_state_zyz(const SpinState& s, double alpha, double beta, double gamma);

// The matching SO(3) rotation Rz(alpha) Ry(beta) Rz(gamma) for star vectors.
Mat3 so3_zyz(double alpha, double beta, double gamma);

}  // namespace majorana
