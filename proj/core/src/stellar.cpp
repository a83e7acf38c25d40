#include "majorana/stellar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "majorana/roots.hpp"

namespace majorana {

namespace {

Vec3 root_to_direction(Complex z) {
  const double t = std::norm(z);
  if (!std::isfinite(t) || t > 1e30) return {0.0, 0.0, -1.0};
  return Vec3{2.0 * z.real(), 2.0 * z.imag(), 1.0 - t} / (1.0 + t);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

double orthogonality_residual(const Star& n, const SpinState& psi) {
  const Star anti = Star::unit(-n.n());
  return std::abs(state_overlap(coherent_state(anti, psi.two_j()), psi));
}

Constellation extract_stars(const SpinState& psi) {
  const int n = psi.two_j();
  if (n == 0) return {};

  // Majorana coefficients, ascending in the degree d of the stereographic
  // variable: coeff[d] = (-1)^{n-d} sqrt(C(n, n-d)) a_{n-d}.
  std::vector<Complex> coeff(n + 1);
  double cmax = 0.0;
  for (int d = 0; d <= n; ++d) {
    const int k = n - d;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    coeff[d] = sign * std::sqrt(binomial(n, k)) * psi.amp(k);
    cmax = std::max(cmax, std::abs(coeff[d]));
  }

  // Vanishing high-degree coefficients are roots at infinity (south pole);
  // vanishing low-degree ones are roots at the origin (north pole).
  int deg = n, poles = 0;
  while (deg > 0 && std::abs(coeff[deg]) <= 1e-13 * cmax) {
    --deg;
    ++poles;
  }
  int lo = 0, origins = 0;
  while (lo < deg && std::abs(coeff[lo]) <= 1e-14 * cmax) {
    ++lo;
    ++origins;
  }

  std::vector<Complex> core(coeff.begin() + lo, coeff.begin() + deg + 1);
  std::vector<Complex> finite_roots;
  if (core.size() >= 2) finite_roots = aberth_roots(core);

  std::vector<Vec3> dirs;
  dirs.reserve(n);
  for (int i = 0; i < origins; ++i) dirs.push_back({0.0, 0.0, 1.0});
  for (int i = 0; i < poles; ++i) dirs.push_back({0.0, 0.0, -1.0});
  for (const auto& z : finite_roots) dirs.push_back(root_to_direction(z));

  // Coalesce root clusters into multiple stars, but only where the merged
  // direction still annihilates the state: a cluster of a genuine m-fold root
  // passes easily while accidentally close distinct roots are kept apart.
  const int total = static_cast<int>(dirs.size());
  UnionFind uf(total);
  for (int i = 0; i < total; ++i)
    for (int k = i + 1; k < total; ++k)
      if (norm(dirs[i] - dirs[k]) < 1e-2) uf.unite(i, k);

  std::vector<std::vector<int>> groups(total);
  for (int i = 0; i < total; ++i) groups[uf.find(i)].push_back(i);

  Constellation stars;
  stars.reserve(n);
  for (const auto& g : groups) {
    if (g.empty()) continue;
    if (g.size() == 1) {
      stars.push_back(Star::unit(dirs[g[0]]));
      continue;
    }
    Vec3 mean{};
    for (int idx : g) mean = mean + dirs[idx];
    const Star centroid = Star::unit(mean);
    if (orthogonality_residual(centroid, psi) < 1e-10) {
      for (size_t r = 0; r < g.size(); ++r) stars.push_back(centroid);
    } else {
      for (int idx : g) stars.push_back(Star::unit(dirs[idx]));
    }
  }

  double worst = 0.0;
  for (const auto& s : stars) worst = std::max(worst, orthogonality_residual(s, psi));
  if (worst > 1e-8) {
    std::ostringstream msg;
    msg << "star orthogonality residual " << worst << " exceeds 1e-8";
    fail(errc::numeric_failure, msg.str());
  }

  std::sort(stars.begin(), stars.end(), star_less);
  return stars;
}

SpinState reconstruct(const Constellation& c) {
  const int n = static_cast<int>(c.size());
  if (n < 1) fail(errc::invalid_input, "constellation is empty");
  if (n > kMaxStars) fail(errc::size_cap, "constellation limited to 12 stars");

  // E_k = coefficient of x^k in prod_i (up_i + down_i x)
  std::vector<Complex> e(n + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const auto q = qubit_state(c[i].n());
    for (int k = i + 1; k >= 1; --k) e[k] = e[k] * q[0] + e[k - 1] * q[1];
    e[0] *= q[0];
  }
  std::vector<Complex> amps(n + 1);
  double n2 = 0.0;
  for (int k = 0; k <= n; ++k) {
    amps[k] = e[k] / std::sqrt(binomial(n, k));
    n2 += std::norm(amps[k]);
  }
  const double len = std::sqrt(n2);
  if (!(len > 0.0)) fail(errc::internal_consistency, "reconstructed state has zero norm");
  for (auto& a : amps) a /= len;
  return fix_gauge(SpinState(n, std::move(amps)));
}

std::vector<int> match_stars(std::span<const Star> from, std::span<const Star> to) {
  const int n = static_cast<int>(from.size());
  if (n != static_cast<int>(to.size())) fail(errc::invalid_input, "star lists differ in size");
  if (n > kMaxStars) fail(errc::size_cap, "matching limited to 12 stars");
  if (n == 0) return {};

  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost[i][j] = angle_between(from[i].n(), to[j].n());

  // dp[mask]: best total cost assigning from[0..popcount-1] to the column set
  // `mask`; ties resolve to the lowest column index, which keeps relabeling
  // of exactly coincident stars deterministic.
  const size_t full = size_t{1} << n;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(full, kInf);
  std::vector<int8_t> pick(full, -1);
  dp[0] = 0.0;
  for (size_t mask = 1; mask < full; ++mask) {
    const int i = std::popcount(mask) - 1;
    for (int j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      const double cand = dp[mask ^ (size_t{1} << j)] + cost[i][j];
      if (cand < dp[mask]) {
        dp[mask] = cand;
        pick[mask] = static_cast<int8_t>(j);
      }
    }
  }
  std::vector<int> out(n);
  size_t mask = full - 1;
  for (int i = n - 1; i >= 0; --i) {
    const int j = pick[mask];
    out[i] = j;
    mask ^= size_t{1} << j;
  }
  return out;
}

namespace {

std::vector<int> identity_permutation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

}  // namespace

StarLoop build_star_loop(std::vector<std::vector<Star>> samples, double continuity_bound) {
  if (samples.size() < 2) fail(errc::invalid_input, "a loop needs at least two samples");
  if (!(continuity_bound > 0.0) || continuity_bound >= std::numbers::pi / 2)
    fail(errc::invalid_input, "continuity bound must lie in (0, pi/2)");
  const int n = static_cast<int>(samples.front().size());
  if (n < 1) fail(errc::invalid_input, "samples carry no stars");
  for (const auto& s : samples)
    if (static_cast<int>(s.size()) != n) fail(errc::invalid_input, "inconsistent star count across samples");

  for (size_t t = 0; t + 1 < samples.size(); ++t) {
    for (int i = 0; i < n; ++i) {
      const double step = angle_between(samples[t][i].n(), samples[t + 1][i].n());
      if (step >= continuity_bound) {
        std::ostringstream msg;
        msg << "star step " << step << " at sample " << t << " exceeds the continuity bound "
            << continuity_bound;
        fail(errc::sampling_too_coarse, msg.str());
      }
    }
  }

  const auto sigma = match_stars(samples.back(), samples.front());
  for (int i = 0; i < n; ++i) {
    const double gap = angle_between(samples.back()[i].n(), samples.front()[sigma[i]].n());
    if (gap >= continuity_bound)
      fail(errc::invalid_input, "loop does not close, even up to a star permutation");
  }
  const bool cyclic = sigma == identity_permutation(n);

  StarLoop loop;
  loop.two_j = n;
  loop.samples = std::move(samples);
  loop.closure = cyclic ? Closure::cyclic : Closure::permuted;
  loop.permutation = sigma;
  loop.continuity_bound = continuity_bound;
  return loop;
}

StarLoop track_loop(std::span<const SpinState> states, double continuity_bound) {
  if (states.size() < 2) fail(errc::invalid_input, "a loop needs at least two samples");
  const int n = states.front().two_j();
  if (n < 1) fail(errc::invalid_input, "spin-0 states carry no stars");
  for (const auto& s : states)
    if (s.two_j() != n) fail(errc::invalid_input, "inconsistent spin across samples");

  for (size_t t = 0; t + 1 < states.size(); ++t) {
    const double f = std::abs(state_overlap(states[t], states[t + 1]));
    if (f <= 0.5) {
      std::ostringstream msg;
      msg << "consecutive state fidelity " << f << " at sample " << t
          << " is too low; refine the sampling";
      fail(errc::sampling_too_coarse, msg.str());
    }
  }
  if (std::abs(state_overlap(states.back(), states.front())) < 1.0 - 1e-9)
    fail(errc::invalid_input, "first and last states differ beyond a global phase");

  std::vector<std::vector<Star>> samples(states.size());
  samples[0] = extract_stars(states[0]);
  for (size_t t = 1; t < states.size(); ++t) {
    const auto raw = extract_stars(states[t]);
    const auto map = match_stars(samples[t - 1], raw);
    samples[t].reserve(n);
    for (int i = 0; i < n; ++i) samples[t].push_back(raw[map[i]]);
  }
  return build_star_loop(std::move(samples), continuity_bound);
}

}  // namespace majorana
