#include "majorana/berry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace majorana {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_dots(const std::vector<std::vector<double>>& dots) {
  const int n = static_cast<int>(dots.size());
  if (n < 1) fail(errc::invalid_input, "empty dot matrix");
  if (n > kMaxStars) fail(errc::size_cap, "dot matrix limited to 12 stars");
  for (const auto& row : dots) {
    if (static_cast<int>(row.size()) != n) fail(errc::invalid_input, "dot matrix must be square");
    for (double t : row)
      if (!(t >= -1.0 - 1e-9 && t <= 1.0 + 1e-9))
        fail(errc::invalid_input, "dot products must lie in [-1, 1]");
  }
}

double double_factorial_odd(int k) {  // (2k+1)!!
  double f = 1.0;
  for (int m = 3; m <= 2 * k + 1; m += 2) f *= m;
  return f;
}

double lee_prefactor(int n) {  // (n+1)!/2^n
  double f = 1.0;
  for (int m = 2; m <= n + 1; ++m) f *= m;
  return f / std::pow(2.0, n);
}

// D[mask][k] = sum over k-pair partial matchings within the index set `mask`
// of the products of their dot products.
std::vector<std::vector<double>> matching_sums(const std::vector<std::vector<double>>& dots) {
  const int n = static_cast<int>(dots.size());
  const size_t full = size_t{1} << n;
  std::vector<std::vector<double>> d(full);
  d[0] = {1.0};
  for (size_t mask = 1; mask < full; ++mask) {
    const int bits = std::popcount(mask);
    const int kmax = bits / 2;
    std::vector<double> acc(kmax + 1, 0.0);
    const int i = std::countr_zero(mask);
    const size_t rest = mask ^ (size_t{1} << i);
    const auto& skip = d[rest];  // i left unmatched
    for (size_t k = 0; k < skip.size(); ++k) acc[k] += skip[k];
    for (int j = i + 1; j < n; ++j) {
      if (!(rest >> j & 1)) continue;
      const auto& sub = d[rest ^ (size_t{1} << j)];
      const double t = dots[i][j];
      for (size_t k = 0; k < sub.size(); ++k) acc[k + 1] += t * sub[k];
    }
    d[mask] = std::move(acc);
  }
  return d;
}

}  // namespace

double fold_angle(double x) { return std::remainder(x, kTwoPi); }

double phase_residual(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

double berry_oracle(std::span<const SpinState> states) {
  if (states.size() < 2) fail(errc::invalid_input, "a loop needs at least two samples");
  const Complex wrap = state_overlap(states.back(), states.front());
  if (std::abs(wrap) < 1.0 - 1e-9)
    fail(errc::invalid_input, "first and last states differ beyond a global phase");
  double acc = 0.0;
  for (size_t k = 0; k + 1 < states.size(); ++k) {
    const Complex ovl = state_overlap(states[k], states[k + 1]);
    if (std::abs(ovl) <= 0.99) {
      std::ostringstream msg;
      msg << "state fidelity " << std::abs(ovl) << " at sample " << k
          << " is below 0.99; refine the sampling";
      fail(errc::sampling_too_coarse, msg.str());
    }
    acc += std::arg(ovl);
  }
  acc += std::arg(wrap);
  return -acc;
}

LeeExpansion LeeExpansion::build(int n) {
  if (n < 1) fail(errc::invalid_input, "expansion needs at least one star");
  if (n > kMaxStars) fail(errc::size_cap, "expansion limited to 12 stars");
  LeeExpansion lee;
  lee.n = n;
  lee.matchings.resize(n / 2 + 1);
  lee.matchings[0].push_back({});

  // grow matchings by always deciding the smallest unused index
  std::vector<std::pair<int, int>> current;
  std::vector<bool> used(n, false);
  auto recurse = [&](auto&& self, int i) -> void {
    while (i < n && used[i]) ++i;
    if (i >= n) return;
    used[i] = true;
    for (int j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      current.emplace_back(i, j);
      lee.matchings[current.size()].push_back(current);
      self(self, i + 1);
      current.pop_back();
      used[j] = false;
    }
    used[i] = false;
    self(self, i + 1);  // leave i unmatched
  };
  recurse(recurse, 0);
  return lee;
}

double LeeExpansion::coefficient(int k) const {
  return lee_prefactor(n) / double_factorial_odd(k);
}

double LeeExpansion::evaluate(const std::vector<std::vector<double>>& dots) const {
  double total = 0.0;
  for (size_t k = 0; k < matchings.size(); ++k) {
    double dk = 0.0;
    for (const auto& m : matchings[k]) {
      double prod = 1.0;
      for (const auto& [i, j] : m) prod *= dots[i][j];
      dk += prod;
    }
    total += coefficient(static_cast<int>(k)) * dk;
  }
  return total;
}

double LeeExpansion::derivative(const std::vector<std::vector<double>>& dots, int i, int j) const {
  if (i > j) std::swap(i, j);
  double total = 0.0;
  for (size_t k = 1; k < matchings.size(); ++k) {
    double dk = 0.0;
    for (const auto& m : matchings[k]) {
      bool contains = false;
      double prod = 1.0;
      for (const auto& [a, b] : m) {
        if (a == i && b == j)
          contains = true;
        else
          prod *= dots[a][b];
      }
      if (contains) dk += prod;
    }
    total += coefficient(static_cast<int>(k)) * dk;
  }
  return total;
}

double lee_norm(const std::vector<std::vector<double>>& dots) {
  validate_dots(dots);
  const int n = static_cast<int>(dots.size());
  const auto d = matching_sums(dots);
  const auto& top = d.back();
  double total = 0.0;
  for (size_t k = 0; k < top.size(); ++k) total += top[k] / double_factorial_odd(static_cast<int>(k));
  return lee_prefactor(n) * total;
}

LeeTerms lee_eval(const std::vector<std::vector<double>>& dots) {
  validate_dots(dots);
  const int n = static_cast<int>(dots.size());
  const auto d = matching_sums(dots);
  const double pref = lee_prefactor(n);
  LeeTerms out;
  {
    const auto& top = d.back();
    double total = 0.0;
    for (size_t k = 0; k < top.size(); ++k)
      total += top[k] / double_factorial_odd(static_cast<int>(k));
    out.value = pref * total;
  }
  out.d.assign(n, std::vector<double>(n, 0.0));
  const size_t full = (size_t{1} << n) - 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // matchings containing the pair (i,j) factor through the complement
      const auto& sub = d[full ^ (size_t{1} << i) ^ (size_t{1} << j)];
      double total = 0.0;
      for (size_t k = 0; k < sub.size(); ++k)
        total += sub[k] / double_factorial_odd(static_cast<int>(k) + 1);
      out.d[i][j] = out.d[j][i] = pref * total;
    }
  }
  return out;
}

double weight_from(const LeeTerms& lee, const std::vector<std::vector<double>>& dots, int i,
                   int j) {
  const auto [s2, c] = pair_trig(dots[i][j]);
  if (s2 == 0.0 || c == 0.0) return 0.0;
  return 2.0 * s2 * c * lee.d[i][j] / lee.value;
}

double weight_factor(const std::vector<std::vector<double>>& dots, int i, int j) {
  const int n = static_cast<int>(dots.size());
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    fail(errc::invalid_input, "weight factor needs two distinct star indices");
  return weight_from(lee_eval(dots), dots, i, j);
}

BerryReport decompose(const StarLoop& loop, double tolerance) {
  const int n = loop.two_j;
  const int t_count = static_cast<int>(loop.samples.size());
  if (t_count < 2) fail(errc::invalid_input, "a loop needs at least two samples");
  const int pairs = n * (n - 1) / 2;

  std::vector<std::pair<int, int>> pair_index;
  pair_index.reserve(pairs);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pair_index.emplace_back(i, j);

  std::vector<std::array<Complex, 2>> q_first(n), q_prev(n), q_curr(n);
  std::vector<double> gamma_star(n, 0.0);
  std::vector<PairFrame> frames_prev(pairs), frames_curr(pairs);
  std::vector<double> two_theta_prev(pairs), two_theta_curr(pairs);
  std::vector<double> integral(pairs, 0.0);
  std::vector<double> theta_sum(pairs, 0.0);
  std::vector<double> theta_min(pairs, std::numeric_limits<double>::infinity());
  std::vector<double> theta_max(pairs, -std::numeric_limits<double>::infinity());
  std::vector<std::vector<double>> dots_mid(n, std::vector<double>(n, 1.0));

  for (int t = 0; t < t_count; ++t) {
    const auto& sample = loop.samples[t];
    for (int i = 0; i < n; ++i) q_curr[i] = qubit_state(sample[i].n());
    for (int p = 0; p < pairs; ++p) {
      const auto [i, j] = pair_index[p];
      frames_curr[p] = pair_frame(sample[i], sample[j]);
      two_theta_curr[p] = angle_between(sample[i].n(), sample[j].n());
    }
    if (t == 0) {
      q_first = q_curr;
    } else {
      for (int i = 0; i < n; ++i) {
        const Complex ovl =
            std::conj(q_prev[i][0]) * q_curr[i][0] + std::conj(q_prev[i][1]) * q_curr[i][1];
        gamma_star[i] -= std::arg(ovl);
      }
      if (pairs > 0) {
        for (int p = 0; p < pairs; ++p) {
          const auto [i, j] = pair_index[p];
          const double mid = 0.5 * (two_theta_prev[p] + two_theta_curr[p]);
          dots_mid[i][j] = dots_mid[j][i] = std::cos(mid);
        }
        const LeeTerms lee = lee_eval(dots_mid);
        for (int p = 0; p < pairs; ++p) {
          const auto [i, j] = pair_index[p];
          const double w = weight_from(lee, dots_mid, i, j);
          if (w != 0.0) {
            if (frames_prev[p].R_degenerate || frames_prev[p].r_degenerate ||
                frames_curr[p].R_degenerate || frames_curr[p].r_degenerate)
              fail(errc::degenerate_geometry,
                   "degenerate pair frame with a nonvanishing weight");
            integral[p] += w * self_rotation_step(frames_prev[p], frames_curr[p]);
          }
          const double theta_mid = 0.25 * (two_theta_prev[p] + two_theta_curr[p]);
          theta_sum[p] += theta_mid;
          theta_min[p] = std::min(theta_min[p], theta_mid);
          theta_max[p] = std::max(theta_max[p], theta_mid);
        }
      }
    }
    q_prev = q_curr;
    frames_prev = frames_curr;
    two_theta_prev = two_theta_curr;
  }

  // junction: label i of the last sample continues as label sigma(i) of the
  // first (a zero-length step for cyclic loops with a repeated endpoint)
  for (int i = 0; i < n; ++i) {
    const auto& qa = q_prev[i];
    const auto& qb = q_first[loop.permutation[i]];
    const Complex ovl = std::conj(qa[0]) * qb[0] + std::conj(qa[1]) * qb[1];
    gamma_star[i] -= std::arg(ovl);
  }

  std::vector<SpinState> states;
  states.reserve(t_count);
  for (const auto& sample : loop.samples) states.push_back(reconstruct(sample));
  const double oracle = berry_oracle(states);

  BerryReport rep;
  rep.j = 0.5 * n;
  rep.samples = t_count;
  rep.closure = loop.closure;
  rep.permutation = loop.permutation;
  rep.gamma_star_terms = gamma_star;
  rep.pair_terms.reserve(pairs);
  double total = 0.0;
  for (double g : gamma_star) total += g;
  for (int p = 0; p < pairs; ++p) {
    PairTermEntry e;
    e.i = pair_index[p].first;
    e.j = pair_index[p].second;
    e.integral = integral[p];
    e.theta_mean = theta_sum[p] / (t_count - 1);
    e.theta_min = theta_min[p];
    e.theta_max = theta_max[p];
    rep.pair_terms.push_back(e);
    total += integral[p];
  }
  rep.gamma_formula = total;
  rep.gamma_oracle = oracle;
  rep.gamma_formula_mod_2pi = fold_angle(total);
  rep.gamma_oracle_mod_2pi = fold_angle(oracle);
  rep.residual = phase_residual(total, oracle);
  rep.tolerance = tolerance;
  rep.verified = rep.residual < tolerance;
  return rep;
}

RigidReport rigid_rotation_phase(const Constellation& c, const Star& axis, double angle,
                                 int samples, double tolerance) {
  const int n = static_cast<int>(c.size());
  if (n < 1) fail(errc::invalid_input, "constellation is empty");
  if (n > kMaxStars) fail(errc::size_cap, "constellation limited to 12 stars");
  if (samples < 2) fail(errc::invalid_input, "need at least two samples");
  if (!(std::abs(angle) > 0.0)) fail(errc::invalid_input, "rotation angle must be nonzero");

  // the rotation must map the star multiset to itself
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

  const StarLoop loop = build_star_loop(std::move(samp), std::min(0.45, 1.5 * std::abs(angle) / samples + 1e-3));

  RigidReport out;
  out.report = decompose(loop, tolerance);

  // constant-weight fast path
  std::vector<std::vector<double>> dots(n, std::vector<double>(n, 1.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) dots[i][j] = dots[j][i] = snapped_dot(c[i].n(), c[j].n());
  const LeeTerms lee = lee_eval(dots);
  double gamma_fast = 0.0;
  for (double g : out.report.gamma_star_terms) gamma_fast += g;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      RigidPairEntry e;
      e.i = i;
      e.j = j;
      e.weight = weight_from(lee, dots, i, j);
      if (e.weight != 0.0) {
        double phi = 0.0;
        for (size_t t = 0; t + 1 < loop.samples.size(); ++t) {
          const PairFrame fa = pair_frame(loop.samples[t][i], loop.samples[t][j]);
          const PairFrame fb = pair_frame(loop.samples[t + 1][i], loop.samples[t + 1][j]);
          phi += self_rotation_step(fa, fb);
        }
        e.self_rotation = phi;
        gamma_fast += e.weight * phi;
      }
      out.rigid_pairs.push_back(e);
    }
  }
  out.gamma_rigid = gamma_fast;
  if (std::abs(gamma_fast - out.report.gamma_formula) > 1e-6)
    fail(errc::internal_consistency,
         "constant-weight evaluation disagrees with the step-wise decomposition");
  return out;
}

}  // namespace majorana
