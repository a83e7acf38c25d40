#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "majorana/random.hpp"
#include "majorana/spin.hpp"

namespace majorana::testing {

inline SpinState random_state(Rng& rng, int two_j) {
  std::vector<Complex> amps(two_j + 1);
  double n2 = 0.0;
  for (auto& a : amps) {
    a = rng.complex_gaussian();
    n2 += std::norm(a);
  }
  const double len = std::sqrt(n2);
  for (auto& a : amps) a /= len;
  return SpinState(two_j, std::move(amps));
}

inline Constellation random_constellation(Rng& rng, int n) {
  Constellation c;
  c.reserve(n);
  for (int i = 0; i < n; ++i) c.push_back(Star::unit(rng.unit_vector()));
  return c;
}

// fidelity between states that may differ by a global phase
inline double fidelity(const SpinState& a, const SpinState& b) {
  return std::abs(state_overlap(a, b));
}

inline std::vector<std::vector<double>> dot_matrix(const Constellation& c) {
  const int n = static_cast<int>(c.size());
  std::vector<std::vector<double>> dots(n, std::vector<double>(n, 1.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) dots[i][j] = dots[j][i] = dot(c[i].n(), c[j].n());
  return dots;
}

}  // namespace majorana::testing
