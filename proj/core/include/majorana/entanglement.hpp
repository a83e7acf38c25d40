#pragma once

#include <optional>

#include "majorana/berry.hpp"

namespace majorana {

// Entanglement measures of symmetric two- and three-qubit states, computed
// from the star geometry alone.
struct EntanglementReport {
  std::optional<double> concurrence;   // two stars
  double barycentric = 0.0;            // E_B
  std::optional<double> three_tangle;  // three stars
  std::optional<double> bound_lhs;     // prod w_ij
  std::optional<double> bound_rhs;     // tau3 (1 - 3/4 E_B)^{1/2} / 4
  bool bound_ok = true;
};

// Concurrence of the symmetric two-qubit state:
// (1 - n1.n2)/(3 + n1.n2) = sin^2(Theta)/(1 + cos^2(Theta)); exactly 0 for
// coincident and exactly 1 for antipodal stars.
double concurrence2(const Constellation& c);

// Barycentric measure E_B = sin^2(Theta) = 1 - |R|^2 of a two-star state.
double barycentric2(const Constellation& c);

// E_B = (4/9) sum_{i<j} sin^2(Theta_ij) of a three-star state.
double barycentric3(const Constellation& c);

// tau3 = (4/3) (prod sin(Theta_ij) / sum cos^2(Theta_ij))^2.
double three_tangle(const Constellation& c);

// Both sides of prod w_ij <= tau3 sqrt(1 - 3/4 E_B) / 4 for a three-star
// configuration; flags a violation beyond 1e-10.
EntanglementReport weight_bound_check(const Constellation& c);

// Integral of C sqrt(1 - E_B) d phi over a two-star loop; the same quantity
// as the spin-1 pair term of decompose, re-expressed through the measures.
double entangled_phase_terms(const StarLoop& loop);

}  // namespace majorana
