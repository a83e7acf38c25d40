#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "majorana/entanglement.hpp"
#include "majorana/paths.hpp"

using namespace majorana;
using testing::random_constellation;

namespace {
constexpr double kPi = std::numbers::pi;

// independent amplitude-level concurrence: C = 2 |v00 v11 - v01 v10| for the
// normalized symmetrized two-qubit vector
double concurrence_from_amplitudes(const Star& a, const Star& b) {
  const auto qa = qubit_state(a.n());
  const auto qb = qubit_state(b.n());
  Complex v[4];
  v[0] = 2.0 * qa[0] * qb[0];
  v[1] = qa[0] * qb[1] + qa[1] * qb[0];
  v[2] = v[1];
  v[3] = 2.0 * qa[1] * qb[1];
  double n2 = 0.0;
  for (const auto& c : v) n2 += std::norm(c);
  return 2.0 * std::abs(v[0] * v[3] - v[1] * v[2]) / n2;
}
}  // namespace

TEST_SUITE_BEGIN("entanglement");

TEST_CASE("two-star measures: endpoints and values") {
  Rng rng(61);
  const Star s = Star::unit(rng.unit_vector());
  const Star anti = Star::unit(-s.n());

  CHECK(concurrence2({s, s}) == 0.0);
  CHECK(concurrence2({s, anti}) == 1.0);
  CHECK(barycentric2({s, s}) == 0.0);
  CHECK(barycentric2({s, anti}) == 1.0);

  // orthogonal directions: C = 1/3, E_B = 1/2
  CHECK(concurrence2({Star({0.0, 0.0, 1.0}), Star({1.0, 0.0, 0.0})}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(barycentric2({Star({0.0, 0.0, 1.0}), Star({1.0, 0.0, 0.0})}) ==
        doctest::Approx(0.5).epsilon(1e-14));

  CHECK_THROWS_AS(concurrence2({s}), error);
  CHECK_THROWS_AS(barycentric2({s, s, s}), error);
}

TEST_CASE("concurrence equals C(Theta) and the amplitude-level construction") {
  Rng rng(62);
  for (int trial = 0; trial < 500; ++trial) {
    const Constellation c = random_constellation(rng, 2);
    const double theta = 0.5 * std::acos(std::clamp(dot(c[0].n(), c[1].n()), -1.0, 1.0));
    CHECK(std::abs(concurrence2(c) - c_function(theta)) < 1e-12);
    CHECK(std::abs(concurrence2(c) - concurrence_from_amplitudes(c[0], c[1])) < 1e-12);

    const PairFrame f = pair_frame(c[0], c[1]);
    CHECK(std::abs(barycentric2(c) - (1.0 - dot(f.R, f.R))) < 1e-12);
  }
}

TEST_CASE("three-star measures: closed forms and plug-in values") {
  // pairwise orthogonal directions
  const Constellation ortho{Star({1.0, 0.0, 0.0}), Star({0.0, 1.0, 0.0}), Star({0.0, 0.0, 1.0})};
  CHECK(barycentric3(ortho) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(three_tangle(ortho) == doctest::Approx(2.0 / 27.0).epsilon(1e-13));

  Rng rng(63);
  const Star any = Star::unit(rng.unit_vector());
  CHECK(barycentric3({any, any, any}) == 0.0);
  CHECK(three_tangle({any, any, Star::unit(rng.unit_vector())}) == 0.0);

  // evenly spread stars at a common colatitude
  for (double colat : {0.3, 0.8, 1.3}) {
    const Constellation tri{Star::polar(colat, 0.0), Star::polar(colat, 2.0 * kPi / 3.0),
                            Star::polar(colat, 4.0 * kPi / 3.0)};
    const double theta =
        0.5 * std::acos(std::clamp(dot(tri[0].n(), tri[1].n()), -1.0, 1.0));
    const double s = std::sin(theta), cth = std::cos(theta);
    CHECK(barycentric3(tri) == doctest::Approx(4.0 / 3.0 * s * s).epsilon(1e-12));
    CHECK(three_tangle(tri) ==
          doctest::Approx(4.0 / 27.0 * std::pow(s, 6) / std::pow(cth, 4)).epsilon(1e-12));
  }
}

TEST_CASE("weight bound holds, with equality on even triangles") {
  Rng rng(64);
  for (int trial = 0; trial < 5000; ++trial) {
    const EntanglementReport rep = weight_bound_check(random_constellation(rng, 3));
    CHECK(*rep.bound_lhs <= *rep.bound_rhs + 1e-10);
    CHECK(rep.bound_ok);
  }
  const Constellation tri{Star::polar(0.9, 0.0), Star::polar(0.9, 2.0 * kPi / 3.0),
                          Star::polar(0.9, 4.0 * kPi / 3.0)};
  const EntanglementReport even = weight_bound_check(tri);
  CHECK(*even.bound_lhs == doctest::Approx(*even.bound_rhs).epsilon(1e-12));
}

TEST_CASE("measures are invariant under global rotation") {
  Rng rng(65);
  for (int trial = 0; trial < 50; ++trial) {
    const Constellation c = random_constellation(rng, 3);
    const double eb = barycentric3(c), t3 = three_tangle(c);
    const Mat3 rot = axis_angle_matrix(rng.unit_vector(), rng.uniform(0.0, 2.0 * kPi));
    Constellation moved;
    for (const auto& s : c) moved.push_back(Star::unit(rot * s.n()));
    CHECK(std::abs(barycentric3(moved) - eb) < 1e-12);
    CHECK(std::abs(three_tangle(moved) - t3) < 1e-12);
  }
}

TEST_CASE("measure-weighted integral equals the spin-1 pair term") {
  for (uint64_t seed : {101u, 102u, 103u}) {
    const int t_count = fourier_recommended_samples(2, seed, 2, 0.4, 0.01);
    const StarLoop loop = make_fourier_loop(2, seed, 2, 0.4, t_count);
    const BerryReport rep = decompose(loop);
    CHECK(std::abs(entangled_phase_terms(loop) - rep.pair_terms[0].integral) < 1e-12);
  }
}

TEST_CASE("rigid rotation factorizes into measures times the self-rotation angle") {
  // corotation of a fixed pair: C sqrt(1-E_B) phi with constant measures
  const double t1 = 0.5, t2 = 1.2, dphi = 0.9;
  const StarLoop loop = make_corotation_loop(t1, t2, 0.0, dphi, 4000);
  const BerryReport rep = decompose(loop);
  const Constellation c{Star::polar(t1, 0.0), Star::polar(t2, dphi)};
  const double weight = concurrence2(c) * std::sqrt(1.0 - barycentric2(c));

  double phi = 0.0;
  for (size_t t = 0; t + 1 < loop.samples.size(); ++t)
    phi += self_rotation_step(pair_frame(loop.samples[t][0], loop.samples[t][1]),
                              pair_frame(loop.samples[t + 1][0], loop.samples[t + 1][1]));
  CHECK(rep.pair_terms[0].integral == doctest::Approx(weight * phi).epsilon(1e-10));

  // and the accumulated angle is the cos(latitude)-reduced full turn
  const PairFrame f = pair_frame(c[0], c[1]);
  CHECK(phi == doctest::Approx(2.0 * kPi * f.R_hat.z).epsilon(1e-6));
}

TEST_CASE("equilateral rigid rotation matches the quarter-power identity") {
  const Constellation tri{Star::polar(0.8, 0.0), Star::polar(0.8, 2.0 * kPi / 3.0),
                          Star::polar(0.8, 4.0 * kPi / 3.0)};
  const RigidReport rigid = rigid_rotation_phase(tri, Star({0.0, 0.0, 1.0}), 2.0 * kPi, 2000);
  double pair_sum = 0.0, phi_sum = 0.0;
  for (const auto& p : rigid.report.pair_terms) pair_sum += p.integral;
  for (const auto& p : rigid.rigid_pairs) phi_sum += p.self_rotation;
  const double factor = 0.5 * std::pow(three_tangle(tri) * barycentric3(tri), 0.25);
  CHECK(pair_sum == doctest::Approx(factor * phi_sum).epsilon(1e-9));
}

TEST_SUITE_END();
