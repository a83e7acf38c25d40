#include "majorana/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace majorana {

namespace {

constexpr double kDegenerate = 1e-7;   // on |R| or |r|
constexpr double kSnap = 5e-14;        // on sin^2 or cos^2 of the half-angle
constexpr double kPi = std::numbers::pi;

}  // namespace

double snapped_dot(const Vec3& a, const Vec3& b) {
  double t = std::clamp(dot(a, b), -1.0, 1.0);
  if (0.5 * (1.0 - t) < kSnap) t = 1.0;
  if (0.5 * (1.0 + t) < kSnap) t = -1.0;
  return t;
}

PairTrig pair_trig(double t_dot) {
  const double t = std::clamp(t_dot, -1.0, 1.0);
  double s2 = 0.5 * (1.0 - t);
  double c2 = 0.5 * (1.0 + t);
  if (s2 < kSnap) s2 = 0.0;
  if (c2 < kSnap) c2 = 0.0;
  return {s2, std::sqrt(c2)};
}

PairFrame pair_frame(const Star& a, const Star& b) {
  PairFrame f;
  f.R = 0.5 * (a.n() + b.n());
  f.r = a.n() - b.n();
  f.theta = 0.5 * std::acos(std::clamp(dot(a.n(), b.n()), -1.0, 1.0));
  const double nR = norm(f.R), nr = norm(f.r);
  f.R_degenerate = nR < kDegenerate;
  f.r_degenerate = nr < kDegenerate;
  if (!f.R_degenerate) f.R_hat = f.R / nR;
  if (!f.r_degenerate) f.r_hat = f.r / nr;
  return f;
}

double c_function(double theta) {
  if (!(theta >= -1e-12 && theta <= kPi / 2 + 1e-12))
    fail(errc::invalid_input, "half-angle must lie in [0, pi/2]");
  theta = std::clamp(theta, 0.0, kPi / 2);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double c2 = std::cos(theta) * std::cos(theta);
  return s2 / (1.0 + c2);
}

Vec3 parallel_transport(const Vec3& v, const Vec3& from, const Vec3& to) {
  const Vec3 ax = cross(from, to);
  const double s = norm(ax);
  const double c = std::clamp(dot(from, to), -1.0, 1.0);
  if (s < 1e-300) {
    if (c > 0.0) return v;  // no motion
    fail(errc::sampling_too_coarse, "antiparallel transport endpoints within one step");
  }
  const Vec3 u = ax / s;
  // rotate v about u by the angle with sin = s, cos = c
  return v * c + cross(u, v) * s + u * (dot(u, v) * (1.0 - c));
}

double phase_accumulate(std::span<const Star> path) {
  double acc = 0.0;
  for (size_t k = 0; k + 1 < path.size(); ++k) {
    const Vec3& a = path[k].n();
    const Vec3& b = path[k + 1].n();
    if (angle_between(a, b) >= kPi / 2) {
      std::ostringstream msg;
      msg << "angular step at sample " << k << " reaches pi/2; refine the sampling";
      fail(errc::sampling_too_coarse, msg.str());
    }
    const auto qa = qubit_state(a);
    const auto qb = qubit_state(b);
    const Complex ovl = std::conj(qa[0]) * qb[0] + std::conj(qa[1]) * qb[1];
    acc -= std::arg(ovl);
  }
  return acc;
}

double solid_angle_phase(std::span<const Star> path) {
  if (path.size() < 2) return 0.0;
  if (angle_between(path.front().n(), path.back().n()) > 1e-6)
    fail(errc::invalid_input, "path is not closed");
  double acc = phase_accumulate(path);
  // close the residual gap between the last and first samples
  const Star ends[2] = {path.back(), path.front()};
  acc += phase_accumulate(ends);
  return acc;
}

double self_rotation_step(const PairFrame& a, const PairFrame& b) {
  if (a.R_degenerate || a.r_degenerate || b.R_degenerate || b.r_degenerate)
    fail(errc::degenerate_geometry, "self-rotation step on a degenerate pair frame");
  const Vec3 transported = parallel_transport(a.r_hat, a.R_hat, b.R_hat);
  const double s = dot(b.R_hat, cross(transported, b.r_hat));
  const double c = dot(transported, b.r_hat);
  return std::atan2(s, c);
}

double self_rotation_step_differential(const PairFrame& a, const PairFrame& b) {
  if (a.R_degenerate || a.r_degenerate || b.R_degenerate || b.r_degenerate)
    fail(errc::degenerate_geometry, "self-rotation step on a degenerate pair frame");
  return dot(a.R_hat, cross(a.r_hat, b.r_hat - a.r_hat));
}

}  // namespace majorana
