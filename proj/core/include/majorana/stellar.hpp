#pragma once

#include <span>
#include <vector>

#include "majorana/spin.hpp"

namespace majorana {

// The 2j stars n_k whose antipodal coherent states annihilate the state:
// <-n_k, j | psi> = 0. Implemented as root finding of the degree-2j Majorana
// polynomial in the stereographic variable z = tan(theta/2) e^{i phi}; roots
// at infinity become south-pole stars with the right multiplicity. Every
// returned star keeps its orthogonality residual below 1e-8, otherwise a
// numeric_failure is raised. Output is sorted with star_less.
Constellation extract_stars(const SpinState& psi);

// Inverse of extract_stars: the normalized symmetric state, built from the
// elementary-symmetric products of the qubit components. O(N^2), exact for
// coincident and polar stars.
SpinState reconstruct(const Constellation& c);

// |< coherent(-n, j) | psi >|
double orthogonality_residual(const Star& n, const SpinState& psi);

// Min-total-angle matching between two equal-size star lists. Exact subset
// DP (N <= 12); returns map[i] = index in `to` assigned to from[i].
std::vector<int> match_stars(std::span<const Star> from, std::span<const Star> to);

enum class Closure { cyclic, permuted };

// Time-discretized closed (or permutation-closed) trajectory of a labeled
// constellation. Consecutive samples differ star-by-star by less than the
// continuity bound; label i of the last sample continues to label
// permutation[i] of the first. closure == cyclic iff the permutation is the
// identity.
struct StarLoop {
  int two_j = 0;
  std::vector<std::vector<Star>> samples;
  Closure closure = Closure::cyclic;
  std::vector<int> permutation;
  double continuity_bound = 0.1;
};

// Validates step continuity on externally labeled samples and detects the
// closure permutation by matching the last sample against the first.
StarLoop build_star_loop(std::vector<std::vector<Star>> samples, double continuity_bound = 0.1);

// Extracts stars per sample and assigns labels by minimum-total-displacement
// matching between consecutive samples. Requires consecutive state fidelity
// above 0.5 and first ~ last up to a global phase; any matched step above the
// continuity bound raises sampling_too_coarse.
StarLoop track_loop(std::span<const SpinState> states, double continuity_bound = 0.1);

}  // namespace majorana
