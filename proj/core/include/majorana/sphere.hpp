#pragma once

#include <span>

#include "majorana/spin.hpp"

namespace majorana {

// Barycenter/relative frame of a star pair. Theta is the half-angle between
// the stars: 2*Theta = arccos(n_i . n_j), so |R| = cos(Theta) and
// |r| = 2 sin(Theta). Degenerate directions are flagged, not errors; callers
// that multiply by a vanishing weight treat flagged terms as exact zero.
struct PairFrame {
  Vec3 R{};  // (n_i + n_j) / 2
  Vec3 r{};  // n_i - n_j
  double theta = 0.0;
  Vec3 R_hat{};
  Vec3 r_hat{};
  bool R_degenerate = false;  // antipodal pair
  bool r_degenerate = false;  // coincident pair
};

PairFrame pair_frame(const Star& a, const Star& b);

// Dot product of two unit vectors clamped to [-1, 1], with the exactly
// coincident / exactly antipodal neighborhoods snapped to +/-1 so that
// weights and measures vanish or saturate exactly there.
double snapped_dot(const Vec3& a, const Vec3& b);

// sin^2(Theta) and cos(Theta) from a (snapped) pair dot product.
struct PairTrig {
  double sin2 = 0.0;
  double cos = 0.0;
};
PairTrig pair_trig(double t_dot);

// C(x) = sin^2 x / (1 + cos^2 x) on [0, pi/2]; strictly increasing,
// C(0) = 0, C(pi/2) = 1.
double c_function(double theta);

// Minimal geodesic transport of a tangent vector from one unit direction to
// another (rotation about from x to). Antiparallel endpoints within one step
// are rejected as too coarse.
Vec3 parallel_transport(const Vec3& v, const Vec3& from, const Vec3& to);

// Open-path accumulation of the single-star Berry phase: minus the sum of
// arguments of consecutive spin-1/2 coherent overlaps. Each step must stay
// below pi/2.
double phase_accumulate(std::span<const Star> path);

// gamma_i = closed-loop integral of the star connection, i.e. -1/2 times the
// signed solid angle of the geodesic polygon through the samples
// (counterclockwise from outside is positive). Accumulated on the real line;
// the branch is fixed step by step. The path must end where it starts.
double solid_angle_phase(std::span<const Star> path);

// Finite self-rotation increment between two pair frames: parallel-transport
// r_hat along the geodesic from R_hat to R_hat', then take the signed angle
// from the transported vector to r_hat' about R_hat'. First order in the step
// this is R_hat . (r_hat x d r_hat).
double self_rotation_step(const PairFrame& a, const PairFrame& b);

// The literal differential form R_hat . (r_hat x (r_hat' - r_hat)); agrees
// with the transport version to O(step^2).
double self_rotation_step_differential(const PairFrame& a, const PairFrame& b);

}  // namespace majorana
