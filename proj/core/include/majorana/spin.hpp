#pragma once

#include <array>
#include <complex>
#include <vector>

#include "majorana/errors.hpp"
#include "majorana/vec3.hpp"

namespace majorana {

using Complex = std::complex<double>;

// Star counts (N = 2j) are capped: the permanent and the matching expansions
// grow exponentially and this library targets desk-scale spins.
constexpr int kMaxStars = 12;

// A point on the unit sphere.
class Star {
 public:
  // Requires ||v|| = 1 within 1e-8; the stored vector is renormalized exactly.
  explicit Star(const Vec3& v);

  // Normalizes an arbitrary nonzero direction.
  static Star unit(const Vec3& v);

  static Star polar(double theta, double phi);

  const Vec3& n() const { return n_; }
  double theta() const;  // colatitude in [0, pi]
  double phi() const;    // longitude in (-pi, pi]

 private:
  Star() = default;
  Vec3 n_;
};

// Deterministic ordering used for labeling and output: descending z, then x, y.
bool star_less(const Star& a, const Star& b);

// Unordered multiset of 2j stars. Stored as a vector, but the order carries no
// meaning; coincident stars appear with their multiplicity.
using Constellation = std::vector<Star>;

// Spin-j amplitude vector in the |j,m> basis, indexed k = 0..2j with m = j - k.
class SpinState {
 public:
  // Normalizes the amplitudes; rejects vectors whose norm is off by more
  // than 1e-6 (invalid_input).
  SpinState(int two_j, std::vector<Complex> amps);

  static SpinState basis(int two_j, int two_m);  // |j,m>

  int two_j() const { return two_j_; }
  double j() const { return 0.5 * two_j_; }
  int dim() const { return two_j_ + 1; }
  const std::vector<Complex>& amps() const { return amps_; }
  const Complex& amp(int k) const { return amps_[k]; }

 private:
  int two_j_;
  std::vector<Complex> amps_;
};

// Spin-1/2 amplitudes (|up>, |down>) of the state polarized along the unit
// vector n. Phase convention: the first nonvanishing component (|up> if
// possible, else |down>) is real non-negative.
std::array<Complex, 2> qubit_state(const Vec3& n);

// |n, j> = |n>^{(x) 2j} in the Dicke basis, same phase convention.
SpinState coherent_state(const Star& n, int two_j);

// <a|b> of the two gauge-fixed spin-1/2 states; |<a|b>|^2 = (1 + a.b)/2.
Complex qubit_overlap(const Star& a, const Star& b);

// Hermitian inner product <a|b>; requires equal spin.
Complex state_overlap(const SpinState& a, const SpinState& b);

// Normalized symmetric tensor product of the constellation's qubit states.
// Uses the explicit permutation sum for N <= 4 and the polynomial-coefficient
// route (stellar reconstruct) above that; the two agree to machine precision.
SpinState symmetrize(const Constellation& c);

// Reference implementation of the permutation sum; factorial cost, N <= 8.
SpinState symmetrize_direct(const Constellation& c);

// Normalization factor A_N: permanent of the N x N Gram matrix of qubit
// overlaps. Real and positive; an imaginary residual above 1e-8 trips an
// internal consistency error.
double gram_permanent_norm(const Constellation& c);

// Permanent by Ryser inclusion-exclusion with Gray-code updates, n <= 12.
Complex permanent(const std::vector<std::vector<Complex>>& a);

// Rotates the overall phase so that the first amplitude (from m = j downward)
// with magnitude above 1e-12 * max is real non-negative.
SpinState fix_gauge(const SpinState& s);

// Binomial coefficients as exact doubles, n <= 2 * kMaxStars.
double binomial(int n, int k);

}  // namespace majorana
