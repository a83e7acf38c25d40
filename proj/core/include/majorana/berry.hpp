#pragma once

#include <span>
#include <utility>
#include <vector>

#include "majorana/sphere.hpp"
#include "majorana/stellar.hpp"

namespace majorana {

// Gauge-invariant discrete phase of a closed state loop:
// gamma = -sum_k arg<psi_k | psi_{k+1}>, including the wrap factor
// <psi_last | psi_first>, accumulated on the real line. Consecutive
// fidelities must exceed 0.99 and the endpoints must agree up to a phase.
double berry_oracle(std::span<const SpinState> states);

// Expansion of the normalization A_N in symmetric functions of the pairwise
// dot products: the explicit list of k-pair partial matchings together with
// the combinatorial coefficients. Mainly for inspection and cross-checks;
// lee_norm et al. use an equivalent subset recursion.
struct LeeExpansion {
  int n = 0;
  // matchings[k] lists every k-pair partial matching of {0..n-1}
  std::vector<std::vector<std::vector<std::pair<int, int>>>> matchings;

  static LeeExpansion build(int n);
  double coefficient(int k) const;  // (n+1)!/2^n / (2k+1)!!
  double evaluate(const std::vector<std::vector<double>>& dots) const;
  double derivative(const std::vector<std::vector<double>>& dots, int i, int j) const;
};

// A_N from the matching expansion; treats the dot products as independent
// formal variables. Entries must lie in [-1, 1]; the diagonal is ignored.
double lee_norm(const std::vector<std::vector<double>>& dots);

// A_N together with every partial derivative dA/dt_ij, evaluated in one
// subset-recursion pass.
struct LeeTerms {
  double value = 0.0;
  std::vector<std::vector<double>> d;
};
LeeTerms lee_eval(const std::vector<std::vector<double>>& dots);

// Weighting factor w_ij = -cos(Theta_ij) d ln A_N / d ln(2 sin^2 Theta_ij)
//                       = 2 sin^2(Theta_ij) cos(Theta_ij) (dA/dt_ij) / A_N,
// with the degenerate neighborhoods snapped to exact zero.
double weight_factor(const std::vector<std::vector<double>>& dots, int i, int j);
double weight_from(const LeeTerms& lee, const std::vector<std::vector<double>>& dots, int i, int j);

struct PairTermEntry {
  int i = 0;
  int j = 0;
  double integral = 0.0;  // sum over steps of w_ij(midpoint Theta) * d phi_ij
  double theta_mean = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;

  bool operator==(const PairTermEntry&) const = default;
};

// Decomposition of the Berry phase of a star loop: per-star solid-angle
// phases plus pairwise self-rotation integrals, checked against the discrete
// oracle on the reconstructed states. Accumulated (unreduced) phases are kept
// for winding diagnostics; the residual is |formula - oracle| folded mod 2*pi
// into [0, pi].
struct BerryReport {
  double j = 0.0;
  int samples = 0;
  Closure closure = Closure::cyclic;
  std::vector<int> permutation;
  std::vector<double> gamma_star_terms;
  std::vector<PairTermEntry> pair_terms;
  double gamma_formula = 0.0;
  double gamma_oracle = 0.0;
  double gamma_formula_mod_2pi = 0.0;
  double gamma_oracle_mod_2pi = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool verified = false;

  bool operator==(const BerryReport&) const = default;
};

BerryReport decompose(const StarLoop& loop, double tolerance = 1e-4);

// Rigid rotation of a constellation: generates the loop, decomposes it, and
// also evaluates the constant-weight fast path sum_i gamma_i +
// sum_{i<j} w_ij phi_ij. The two routes must agree; disagreement above 1e-6
// is an internal consistency error. The rotation must return the star
// multiset to itself (possibly permuted).
struct RigidPairEntry {
  int i = 0;
  int j = 0;
  double weight = 0.0;          // constant w_ij along the rotation
  double self_rotation = 0.0;   // accumulated phi_ij
  bool operator==(const RigidPairEntry&) const = default;
};

struct RigidReport {
  BerryReport report;
  std::vector<RigidPairEntry> rigid_pairs;
  double gamma_rigid = 0.0;
};

RigidReport rigid_rotation_phase(const Constellation& c, const Star& axis, double angle,
                                 int samples, double tolerance = 1e-4);

// Angle folded to (-pi, pi].
double fold_angle(double x);

// |a - b| mod 2*pi folded into [0, pi].
double phase_residual(double a, double b);

}  // namespace majorana
