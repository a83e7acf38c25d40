#include "majorana/paths.hpp"

#include <cmath>
#include <numbers>

#include "majorana/berry.hpp"
#include "majorana/random.hpp"

namespace majorana {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_samples(int samples, int minimum) {
  if (samples < minimum) fail(errc::invalid_input, "too few samples for this path");
}

// One smooth closed curve on the sphere: a constant plus a truncated Fourier
// series in R^3, normalized. Rejected and redrawn while the raw curve comes
// too close to the origin.
struct FourierCurve {
  Vec3 base;
  std::vector<Vec3> cos_c, sin_c;

  Vec3 eval(double u) const {
    Vec3 v = base;
    for (size_t k = 0; k < cos_c.size(); ++k) {
      const double w = kTwoPi * static_cast<double>(k + 1) * u;
      v = v + cos_c[k] * std::cos(w) + sin_c[k] * std::sin(w);
    }
    return v;
  }
};

std::vector<FourierCurve> make_fourier_curves(int two_j, uint64_t seed, int modes,
                                              double amplitude) {
  if (two_j < 1) fail(errc::invalid_input, "need at least one star");
  if (two_j > kMaxStars) fail(errc::size_cap, "spin limited to 2j = 12");
  if (modes < 1 || modes > 16) fail(errc::invalid_input, "mode count must lie in [1, 16]");
  if (!(amplitude > 0.0) || amplitude > 2.0)
    fail(errc::invalid_input, "amplitude must lie in (0, 2]");

  Rng rng(seed);
  std::vector<FourierCurve> curves;
  curves.reserve(two_j);
  for (int i = 0; i < two_j; ++i) {
    FourierCurve c;
    bool ok = false;
    for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
      c.base = rng.unit_vector();
      c.cos_c.assign(modes, {});
      c.sin_c.assign(modes, {});
      for (int k = 0; k < modes; ++k) {
        const double scale = amplitude / ((k + 1) * (k + 1));
        c.cos_c[k] = Vec3{rng.gaussian(), rng.gaussian(), rng.gaussian()} * scale;
        c.sin_c[k] = Vec3{rng.gaussian(), rng.gaussian(), rng.gaussian()} * scale;
      }
      ok = true;
      for (int p = 0; p < 256; ++p) {
        if (norm(c.eval(p / 256.0)) < 0.3) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) fail(errc::numeric_failure, "could not draw a curve clear of the origin");
    curves.push_back(std::move(c));
  }
  return curves;
}

StarLoop loop_from_curves(const std::vector<FourierCurve>& curves, int samples,
                          double continuity_bound) {
  const int n = static_cast<int>(curves.size());
  std::vector<std::vector<Star>> samp(samples + 1);
  for (int t = 0; t < samples; ++t) {
    const double u = static_cast<double>(t) / samples;
    samp[t].reserve(n);
    for (const auto& c : curves) samp[t].push_back(Star::unit(c.eval(u)));
  }
  samp[samples] = samp[0];
  return build_star_loop(std::move(samp), continuity_bound);
}

}  // namespace

StarLoop make_corotation_loop(double theta1, double theta2, double phi1, double phi2,
                              int samples) {
  require_samples(samples, 64);
  if (!(theta1 >= 0.0 && theta1 <= std::numbers::pi && theta2 >= 0.0 &&
        theta2 <= std::numbers::pi))
    fail(errc::invalid_input, "latitudes must lie in [0, pi]");
  std::vector<std::vector<Star>> samp(samples + 1);
  for (int t = 0; t < samples; ++t) {
    const double u = kTwoPi * t / samples;
    samp[t] = {Star::polar(theta1, u + phi1), Star::polar(theta2, u + phi2)};
  }
  samp[samples] = samp[0];
  return build_star_loop(std::move(samp), 0.1);
}

StarLoop make_rigid_rotation_loop(const Constellation& c, const Star& axis, double angle,
                                  int samples) {
  const int n = static_cast<int>(c.size());
  if (n < 1) fail(errc::invalid_input, "constellation is empty");
  require_samples(samples, 2);

  const Mat3 rot_full = axis_angle_matrix(axis.n(), angle);
  std::vector<Star> rotated;
  rotated.reserve(n);
  for (const auto& s : c) rotated.push_back(Star::unit(rot_full * s.n()));
  const auto sigma = match_stars(rotated, c);
  for (int i = 0; i < n; ++i)
    if (angle_between(rotated[i].n(), c[sigma[i]].n()) > 1e-6)
      fail(errc::invalid_input, "rotation does not return the constellation to itself");

  std::vector<std::vector<Star>> samp(samples + 1);
  for (int t = 0; t < samples; ++t) {
    const Mat3 rot = axis_angle_matrix(axis.n(), angle * t / samples);
    samp[t].reserve(n);
    for (const auto& s : c) samp[t].push_back(Star::unit(rot * s.n()));
  }
  samp[samples].reserve(n);
  for (int i = 0; i < n; ++i) samp[samples].push_back(c[sigma[i]]);
  const double bound = std::min(0.45, 1.5 * std::abs(angle) / samples + 1e-3);
  return build_star_loop(std::move(samp), bound);
}

StarLoop make_sliding_loop(const Vec3& normal, const std::vector<Schedule>& schedules,
                           int samples) {
  require_samples(samples, 64);
  if (schedules.empty()) fail(errc::invalid_input, "sliding path needs at least one schedule");
  if (schedules.size() > kMaxStars) fail(errc::size_cap, "sliding limited to 12 stars");
  const double len = norm(normal);
  if (!(len > 0.0)) fail(errc::invalid_input, "plane normal must be nonzero");
  const Vec3 nz = normal / len;
  const Vec3 seed = std::abs(nz.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  const Vec3 e1 = normalized(cross(nz, seed));
  const Vec3 e2 = cross(nz, e1);

  auto alpha = [](const Schedule& s, double u) {
    double a = s.offset + kTwoPi * s.turns * u;
    for (size_t k = 0; k < s.cos_coeffs.size(); ++k)
      a += s.cos_coeffs[k] * std::cos(kTwoPi * (k + 1) * u);
    for (size_t k = 0; k < s.sin_coeffs.size(); ++k)
      a += s.sin_coeffs[k] * std::sin(kTwoPi * (k + 1) * u);
    return a;
  };

  std::vector<std::vector<Star>> samp(samples + 1);
  for (int t = 0; t < samples; ++t) {
    const double u = static_cast<double>(t) / samples;
    samp[t].reserve(schedules.size());
    for (const auto& s : schedules) {
      const double a = alpha(s, u);
      samp[t].push_back(Star::unit(e1 * std::cos(a) + e2 * std::sin(a)));
    }
  }
  samp[samples].reserve(schedules.size());
  for (const auto& s : schedules) {
    const double a = alpha(s, 0.0);  // u = 1 differs by exactly 2 pi turns
    samp[samples].push_back(Star::unit(e1 * std::cos(a) + e2 * std::sin(a)));
  }
  return build_star_loop(std::move(samp), 0.2);
}

StarLoop make_fourier_loop(int two_j, uint64_t seed, int modes, double amplitude, int samples) {
  require_samples(samples, 64);
  const auto curves = make_fourier_curves(two_j, seed, modes, amplitude);
  return loop_from_curves(curves, samples, 0.1);
}

int fourier_recommended_samples(int two_j, uint64_t seed, int modes, double amplitude,
                                double max_step) {
  if (!(max_step > 0.0)) fail(errc::invalid_input, "step bound must be positive");
  const auto curves = make_fourier_curves(two_j, seed, modes, amplitude);
  const int probe = 1024;
  double worst = 0.0;
  for (const auto& c : curves) {
    Vec3 prev = normalized(c.eval(0.0));
    for (int t = 1; t <= probe; ++t) {
      const Vec3 curr = normalized(c.eval(static_cast<double>(t) / probe));
      worst = std::max(worst, angle_between(prev, curr));
      prev = curr;
    }
  }
  const int needed = static_cast<int>(std::ceil(worst * probe / max_step * 1.05));
  return std::max(needed, 128);
}

double max_angular_step(const StarLoop& loop) {
  double worst = 0.0;
  for (size_t t = 0; t + 1 < loop.samples.size(); ++t)
    for (size_t i = 0; i < loop.samples[t].size(); ++i)
      worst = std::max(worst, angle_between(loop.samples[t][i].n(), loop.samples[t + 1][i].n()));
  return worst;
}

double corotation_closed_form(double theta1, double theta2, double phi1, double phi2) {
  const Star n1 = Star::polar(theta1, phi1);
  const Star n2 = Star::polar(theta2, phi2);
  const double t = snapped_dot(n1.n(), n2.n());
  const auto [s2, cos_theta] = pair_trig(t);
  const Vec3 r_bar = 0.5 * (n1.n() + n2.n());
  const double r_len = norm(r_bar);
  if (r_len < 1e-9)
    fail(errc::degenerate_geometry, "antipodal stars have no barycenter direction");
  const double cos_lat = r_bar.z / r_len;
  const double half = 0.5 * std::acos(std::clamp(t, -1.0, 1.0));
  return std::numbers::pi * std::cos(theta1) + std::numbers::pi * std::cos(theta2) +
         kTwoPi * cos_lat * c_function(half) * cos_theta;
}

StarLoop generate_loop(const PathSpec& spec) {
  if (std::holds_alternative<CorotationSpec>(spec.payload)) {
    const auto& p = std::get<CorotationSpec>(spec.payload);
    return make_corotation_loop(p.theta1, p.theta2, p.phi1, p.phi2, spec.samples);
  }
  if (std::holds_alternative<RigidRotationSpec>(spec.payload)) {
    const auto& p = std::get<RigidRotationSpec>(spec.payload);
    return make_rigid_rotation_loop(p.stars, Star::unit(p.axis), p.angle, spec.samples);
  }
  if (std::holds_alternative<SlidingSpec>(spec.payload)) {
    const auto& p = std::get<SlidingSpec>(spec.payload);
    return make_sliding_loop(p.normal, p.schedules, spec.samples);
  }
  if (std::holds_alternative<FourierRandomSpec>(spec.payload)) {
    const auto& p = std::get<FourierRandomSpec>(spec.payload);
    return make_fourier_loop(p.two_j, p.seed, p.modes, p.amplitude, spec.samples);
  }
  const auto& p = std::get<SampledSpec>(spec.payload);
  if (!p.star_samples.empty()) return build_star_loop(p.star_samples, spec.continuity_bound);
  if (!p.amp_samples.empty()) return track_loop(p.amp_samples, spec.continuity_bound);
  fail(errc::invalid_input, "sampled path carries neither stars nor amplitudes");
}

}  // namespace majorana
