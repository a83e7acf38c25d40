#include "majorana/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "majorana/errors.hpp"

namespace majorana {

namespace {

using C = std::complex<double>;

struct Eval {
  C p;
  C dp;
};

Eval horner(const std::vector<C>& c, C z) {
  const int n = static_cast<int>(c.size()) - 1;
  C p = c[n], dp = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return {p, dp};
}

// sum_k |c_k| |z|^k; |p(z)| below eps times this means z is a root of a
// polynomial within rounding distance of the input.
double backward_scale(const std::vector<C>& c, double az) {
  double s = 0.0, zp = 1.0;
  for (const auto& ck : c) {
    s += std::abs(ck) * zp;
    zp *= az;
  }
  return s;
}

}  // namespace

std::vector<C> aberth_roots(const std::vector<C>& coeffs) {
  if (coeffs.size() < 2) return {};
  if (std::abs(coeffs.back()) == 0.0)
    fail(errc::invalid_input, "leading coefficient must be nonzero");

  // Exact zero roots come off first so the initial radius below is defined.
  std::vector<C> c = coeffs;
  std::vector<C> roots;
  while (c.size() > 1 && c.front() == C(0.0)) {
    roots.emplace_back(0.0);
    c.erase(c.begin());
  }
  const int m = static_cast<int>(c.size()) - 1;
  if (m == 0) return roots;

  // Start on a circle at the geometric-mean root radius, angles offset so the
  // points avoid symmetry axes of real-coefficient inputs.
  const double r0 = std::pow(std::abs(c[0] / c[m]), 1.0 / m);
  std::vector<C> z(m);
  for (int i = 0; i < m; ++i) {
    const double a = 2.0 * std::numbers::pi * i / m + 0.397;
    z[i] = r0 * C(std::cos(a), std::sin(a));
  }

  constexpr int kMaxIter = 400;
  constexpr double kEpsValue = 8.8e-16;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    bool settled = true;
    for (int i = 0; i < m; ++i) {
      const auto [p, dp] = horner(c, z[i]);
      if (std::abs(p) <= kEpsValue * backward_scale(c, std::abs(z[i]))) continue;
      C newton;
      if (dp == C(0.0)) {
        z[i] += C(1e-8, 1e-8) * (1.0 + std::abs(z[i]));
        settled = false;
        continue;
      }
      newton = p / dp;
      C repel = 0.0;
      for (int k = 0; k < m; ++k) {
        if (k == i) continue;
        const C d = z[i] - z[k];
        if (std::abs(d) > 0.0) repel += 1.0 / d;
      }
      C corr = newton / (1.0 - newton * repel);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = newton;
      z[i] -= corr;
      if (std::abs(corr) > 1e-14 * (1.0 + std::abs(z[i]))) settled = false;
    }
    if (settled) break;
  }

  for (int i = 0; i < m; ++i) {
    for (int it = 0; it < 3; ++it) {
      const auto [p, dp] = horner(c, z[i]);
      if (dp == C(0.0)) break;
      const C cand = z[i] - p / dp;
      if (std::abs(horner(c, cand).p) < std::abs(p))
        z[i] = cand;
      else
        break;
    }
  }

  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto [p, dp] = horner(c, z[i]);
    (void)dp;
    worst = std::max(worst, std::abs(p) / std::max(backward_scale(c, std::abs(z[i])), 1e-300));
  }
  if (worst > 1e-10) {
    std::ostringstream msg;
    msg << "root iteration did not converge (backward error " << worst << ")";
    fail(errc::numeric_failure, msg.str());
  }

  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace majorana
