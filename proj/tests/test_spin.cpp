#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "majorana/berry.hpp"
#include "majorana/stellar.hpp"

using namespace majorana;
using testing::dot_matrix;
using testing::random_constellation;
using testing::random_state;

TEST_SUITE_BEGIN("spin");

TEST_CASE("coherent state at the poles and the equator") {
  const SpinState north = coherent_state(Star({0.0, 0.0, 1.0}), 1);
  CHECK(north.amp(0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(north.amp(1)) < 1e-14);

  const SpinState south = coherent_state(Star({0.0, 0.0, -1.0}), 2);
  CHECK(std::abs(south.amp(0)) < 1e-14);
  CHECK(std::abs(south.amp(1)) < 1e-14);
  CHECK(south.amp(2).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(south.amp(2).imag() == 0.0);

  const SpinState equator = coherent_state(Star({1.0, 0.0, 0.0}), 1);
  CHECK(equator.amp(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(equator.amp(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(equator.amp(1).imag()) < 1e-15);
}

TEST_CASE("coherent state rejects non-unit directions") {
  CHECK_THROWS_AS(Star({1.0, 1.0, 1.0}), error);
  CHECK_THROWS_AS(coherent_state(Star::unit({1.0, 1.0, 1.0}), 0), error);
}

TEST_CASE("qubit overlap endpoints and modulus identity") {
  Rng rng(11);
  const Star a = Star::unit(rng.unit_vector());
  CHECK(std::abs(qubit_overlap(a, a) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(qubit_overlap(a, Star::unit(-a.n()))) < 1e-14);

  const Star z({0.0, 0.0, 1.0}), x({1.0, 0.0, 0.0});
  CHECK(std::abs(qubit_overlap(z, x)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));

  for (int trial = 0; trial < 500; ++trial) {
    const Star u = Star::unit(rng.unit_vector());
    const Star v = Star::unit(rng.unit_vector());
    const double lhs = std::norm(qubit_overlap(u, v));
    const double rhs = 0.5 * (1.0 + dot(u.n(), v.n()));
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("symmetrize reproduces the named small states") {
  const SpinState m0 = symmetrize({Star({0.0, 0.0, 1.0}), Star({0.0, 0.0, -1.0})});
  CHECK(std::abs(m0.amp(0)) < 1e-14);
  CHECK(m0.amp(1).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(m0.amp(2)) < 1e-14);

  Rng rng(21);
  const Star n = Star::unit(rng.unit_vector());
  const SpinState pair = symmetrize({n, n});
  CHECK(testing::fidelity(pair, coherent_state(n, 2)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("symmetrize agrees with the coefficient route for N <= 4") {
  Rng rng(22);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const Constellation c = random_constellation(rng, n);
      const SpinState direct = symmetrize_direct(c);
      const SpinState coeff = reconstruct(c);
      for (int k = 0; k <= n; ++k)
        CHECK(std::abs(direct.amp(k) - coeff.amp(k)) < 1e-12);
    }
  }
}

TEST_CASE("symmetrize is permutation invariant and normalized") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    Constellation c = random_constellation(rng, 4);
    const SpinState ref = symmetrize(c);
    double n2 = 0.0;
    for (const auto& a : ref.amps()) n2 += std::norm(a);
    CHECK(std::abs(n2 - 1.0) < 1e-12);
    for (int shuffle = 0; shuffle < 4; ++shuffle) {
      for (size_t i = c.size(); i > 1; --i) std::swap(c[i - 1], c[rng.raw() % i]);
      const SpinState perm = symmetrize(c);
      for (size_t k = 0; k < ref.amps().size(); ++k)
        CHECK(std::abs(perm.amp(k) - ref.amp(k)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(symmetrize({}), error);
}

TEST_CASE("gram permanent norm closed forms") {
  Rng rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const Constellation c = random_constellation(rng, 2);
    const double t = dot(c[0].n(), c[1].n());
    CHECK(gram_permanent_norm(c) == doctest::Approx(0.5 * (3.0 + t)).epsilon(1e-12));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const Constellation c = random_constellation(rng, 3);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) sum += dot(c[i].n(), c[j].n());
    CHECK(gram_permanent_norm(c) == doctest::Approx(3.0 + sum).epsilon(1e-12));
  }
  const Star s = Star::unit(rng.unit_vector());
  CHECK(gram_permanent_norm({s, s}) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("gram permanent matches the matching expansion up to N = 6") {
  Rng rng(25);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const Constellation c = random_constellation(rng, n);
      const double a = gram_permanent_norm(c);
      CHECK(std::abs(lee_norm(dot_matrix(c)) - a) / a < 1e-10);
    }
  }
}

TEST_CASE("state overlap basics") {
  Rng rng(26);
  const SpinState psi = random_state(rng, 4);
  CHECK(std::abs(state_overlap(psi, psi) - Complex(1.0)) < 1e-13);

  const SpinState m0 = SpinState::basis(2, 0);
  CHECK(std::abs(state_overlap(m0, coherent_state(Star({0.0, 0.0, 1.0}), 2))) < 1e-14);

  CHECK_THROWS_AS(state_overlap(random_state(rng, 2), random_state(rng, 3)), error);

  for (int trial = 0; trial < 100; ++trial) {
    const Star a = Star::unit(rng.unit_vector());
    const Star b = Star::unit(rng.unit_vector());
    const int two_j = 1 + static_cast<int>(rng.raw() % 6);
    const double lhs = std::abs(state_overlap(coherent_state(a, two_j), coherent_state(b, two_j)));
    const double rhs = std::pow(0.5 * (1.0 + dot(a.n(), b.n())), 0.5 * two_j);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("state constructor rejects malformed input") {
  CHECK_THROWS_AS(SpinState(2, {Complex(1.0), Complex(0.0)}), error);          // wrong size
  CHECK_THROWS_AS(SpinState(1, {Complex(2.0), Complex(0.0)}), error);          // not normalized
  CHECK_THROWS_AS(SpinState(-1, {}), error);
  CHECK_THROWS_AS(SpinState(14, std::vector<Complex>(15, 0.26)), error);       // above the cap
}

TEST_SUITE_END();
