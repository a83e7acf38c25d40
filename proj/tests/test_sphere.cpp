#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "helpers.hpp"
#include "majorana/sphere.hpp"

using namespace majorana;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Star> circle_path(double colatitude, int t_count, double phase = 0.0) {
  std::vector<Star> path;
  path.reserve(t_count + 1);
  for (int t = 0; t <= t_count; ++t)
    path.push_back(Star::polar(colatitude, 2.0 * kPi * (t % t_count) / t_count + phase));
  return path;
}

// smooth non-degenerate pair motion used by the transport tests
std::pair<Star, Star> pair_at(double u) {
  const Star a = Star::unit({std::cos(u) + 0.2, std::sin(2.0 * u), 0.8 + 0.3 * std::sin(u)});
  const Star b = Star::unit({0.3 - std::sin(u), std::cos(u), -0.5 + 0.2 * std::cos(2.0 * u)});
  return {a, b};
}

}  // namespace

TEST_SUITE_BEGIN("sphere");

TEST_CASE("pair frame geometry and flags") {
  const Star z({0.0, 0.0, 1.0}), x({1.0, 0.0, 0.0});

  const PairFrame same = pair_frame(z, z);
  CHECK(same.theta == doctest::Approx(0.0));
  CHECK(norm(same.R) == doctest::Approx(1.0));
  CHECK(same.r_degenerate);
  CHECK_FALSE(same.R_degenerate);

  const PairFrame anti = pair_frame(z, Star({0.0, 0.0, -1.0}));
  CHECK(anti.theta == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(anti.R_degenerate);
  CHECK_FALSE(anti.r_degenerate);

  const PairFrame quarter = pair_frame(z, x);
  CHECK(2.0 * quarter.theta == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(quarter.R_hat.x == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(quarter.R_hat.z == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const Star a = Star::unit(rng.unit_vector());
    const Star b = Star::unit(rng.unit_vector());
    const PairFrame f = pair_frame(a, b);
    CHECK(std::abs(dot(f.R, f.r)) < 1e-12);
    CHECK(norm(f.R) == doctest::Approx(std::cos(f.theta)).epsilon(1e-12));
    CHECK(norm(f.r) == doctest::Approx(2.0 * std::sin(f.theta)).epsilon(1e-12));
  }
}

TEST_CASE("solid angle of latitude circles") {
  for (double colat : {0.2, 0.9, kPi / 2}) {
    const double gamma = solid_angle_phase(circle_path(colat, 4000));
    CHECK(gamma == doctest::Approx(-kPi * (1.0 - std::cos(colat))).epsilon(1e-6));
  }
  // equatorial great circle encloses half the sphere
  CHECK(solid_angle_phase(circle_path(kPi / 2, 4000)) == doctest::Approx(-kPi).epsilon(1e-7));

  const std::vector<Star> point(5, Star::polar(0.7, 0.3));
  CHECK(solid_angle_phase(point) == doctest::Approx(0.0));
}

TEST_CASE("solid angle rotation invariance and reversal antisymmetry") {
  Rng rng(42);
  const auto path = circle_path(0.8, 600, 0.3);
  const double base = solid_angle_phase(path);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 axis = rng.unit_vector();
    const Mat3 rot = axis_angle_matrix(axis, rng.uniform(0.0, 2.0 * kPi));
    std::vector<Star> rotated;
    for (const auto& s : path) rotated.push_back(Star::unit(rot * s.n()));
    CHECK(std::abs(solid_angle_phase(rotated) - base) < 1e-9);
  }
  std::vector<Star> reversed(path.rbegin(), path.rend());
  CHECK(solid_angle_phase(reversed) == doctest::Approx(-base).epsilon(1e-12));
}

TEST_CASE("solid angle rejects coarse and open paths") {
  std::vector<Star> coarse;
  for (int t = 0; t <= 3; ++t) coarse.push_back(Star::polar(kPi / 2, 2.0 * kPi * (t % 3) / 3.0));
  CHECK_THROWS_AS(solid_angle_phase(coarse), error);

  std::vector<Star> open = {Star::polar(0.3, 0.0), Star::polar(0.4, 0.2), Star::polar(0.8, 0.4)};
  CHECK_THROWS_AS(solid_angle_phase(open), error);
}

TEST_CASE("self-rotation endpoints") {
  const auto [a, b] = pair_at(0.0);
  const PairFrame f = pair_frame(a, b);
  CHECK(self_rotation_step(f, f) == doctest::Approx(0.0));
}

TEST_CASE("rigid rotation about the barycenter is pure self-rotation") {
  const Star a = Star::polar(0.6, 0.1), b = Star::polar(0.9, 1.4);
  const PairFrame f0 = pair_frame(a, b);
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const Mat3 rot = axis_angle_matrix(f0.R_hat, eps);
    const PairFrame f1 = pair_frame(Star::unit(rot * a.n()), Star::unit(rot * b.n()));
    CHECK(std::abs(self_rotation_step(f0, f1) - eps) < 2.0 * eps * eps * eps + 1e-13);
  }
}

TEST_CASE("corotation step rate is cos(latitude)") {
  const double t1 = 0.5, t2 = 1.0, dphi = 0.6;
  const Star a0 = Star::polar(t1, 0.0), b0 = Star::polar(t2, dphi);
  const PairFrame f0 = pair_frame(a0, b0);
  const double cos_lat = f0.R_hat.z;
  for (double dt : {1e-2, 1e-3}) {
    const Star a1 = Star::polar(t1, dt), b1 = Star::polar(t2, dphi + dt);
    const double step = self_rotation_step(f0, pair_frame(a1, b1));
    CHECK(std::abs(step - cos_lat * dt) < 0.5 * dt * dt);
  }
}

TEST_CASE("transport and differential forms agree to second order") {
  Rng rng(43);
  std::vector<double> ratios;
  for (int trial = 0; trial < 40; ++trial) {
    const double u0 = rng.uniform(0.0, 5.0);
    const double h = 0.02;
    auto diff_at = [&](double step) {
      const auto [a0, b0] = pair_at(u0);
      const auto [a1, b1] = pair_at(u0 + step);
      const PairFrame f0 = pair_frame(a0, b0);
      const PairFrame f1 = pair_frame(a1, b1);
      return std::abs(self_rotation_step(f0, f1) - self_rotation_step_differential(f0, f1));
    };
    const double d1 = diff_at(h), d2 = diff_at(h / 2);
    if (d1 > 1e-12 && d2 > 1e-13) ratios.push_back(d1 / d2);
  }
  REQUIRE(ratios.size() > 20);
  std::sort(ratios.begin(), ratios.end());
  const double med = ratios[ratios.size() / 2];
  CHECK(med > 3.2);
  CHECK(med < 4.8);
}

TEST_CASE("accumulated self-rotation is invariant under global rotation") {
  Rng rng(44);
  auto accumulate = [](const Mat3& rot) {
    double acc = 0.0;
    const int t_count = 500;
    for (int t = 0; t < t_count; ++t) {
      const auto [a0, b0] = pair_at(2.0 * kPi * t / t_count * 0.2);
      const auto [a1, b1] = pair_at(2.0 * kPi * (t + 1) / t_count * 0.2);
      const PairFrame f0 = pair_frame(Star::unit(rot * a0.n()), Star::unit(rot * b0.n()));
      const PairFrame f1 = pair_frame(Star::unit(rot * a1.n()), Star::unit(rot * b1.n()));
      acc += self_rotation_step(f0, f1);
    }
    return acc;
  };
  const double base = accumulate(Mat3::identity());
  for (int trial = 0; trial < 10; ++trial) {
    const Mat3 rot = axis_angle_matrix(rng.unit_vector(), rng.uniform(0.0, 2.0 * kPi));
    CHECK(std::abs(accumulate(rot) - base) < 1e-10);
  }
}

TEST_CASE("C function endpoints, value and monotonicity") {
  CHECK(c_function(0.0) == doctest::Approx(0.0));
  CHECK(c_function(kPi / 2) == doctest::Approx(1.0));
  CHECK(c_function(kPi / 4) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(c_function(-0.2), error);
  CHECK_THROWS_AS(c_function(2.0), error);
  double prev = -1.0;
  for (int k = 0; k <= 400; ++k) {
    const double val = c_function(kPi / 2 * k / 400.0);
    CHECK(val > prev);
    prev = val;
  }
}

TEST_SUITE_END();
