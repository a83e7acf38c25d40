#include "majorana/spin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "majorana/stellar.hpp"

namespace majorana {

namespace {

constexpr double kUnitTol = 1e-8;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

double binomial(int n, int k) {
  constexpr int kMax = 2 * kMaxStars;
  static const auto table = [] {
    std::array<std::array<double, kMax + 1>, kMax + 1> c{};
    for (int i = 0; i <= kMax; ++i) {
      c[i][0] = 1.0;
      for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j < i ? c[i - 1][j] : 0.0);
    }
    return c;
  }();
  if (n < 0 || k < 0 || k > n || n > kMax) fail(errc::invalid_input, "binomial index out of range");
  return table[n][k];
}

Star::Star(const Vec3& v) {
  const double len = norm(v);
  if (!std::isfinite(len) || std::abs(len - 1.0) > kUnitTol)
    fail(errc::invalid_input, "star direction must be a unit vector");
  n_ = v / len;
}

Star Star::unit(const Vec3& v) {
  const double len = norm(v);
  if (!std::isfinite(len) || len == 0.0)
    fail(errc::invalid_input, "cannot normalize a zero direction");
  Star s;
  s.n_ = v / len;
  return s;
}

Star Star::polar(double theta, double phi) {
  Star s;
  s.n_ = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  return s;
}

double Star::theta() const { return std::acos(std::clamp(n_.z, -1.0, 1.0)); }

double Star::phi() const {
  if (n_.x == 0.0 && n_.y == 0.0) return 0.0;
  return std::atan2(n_.y, n_.x);
}

bool star_less(const Star& a, const Star& b) {
  if (a.n().z != b.n().z) return a.n().z > b.n().z;
  if (a.n().x != b.n().x) return a.n().x < b.n().x;
  return a.n().y < b.n().y;
}

SpinState::SpinState(int two_j, std::vector<Complex> amps)
    : two_j_(two_j), amps_(std::move(amps)) {
  if (two_j_ < 0) fail(errc::invalid_input, "2j must be a non-negative integer");
  if (two_j_ > kMaxStars) fail(errc::size_cap, "2j exceeds the supported maximum of 12");
  if (static_cast<int>(amps_.size()) != two_j_ + 1)
    fail(errc::invalid_input, "amplitude count must be 2j+1");
  double n2 = 0.0;
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      fail(errc::invalid_input, "amplitudes must be finite");
    n2 += std::norm(a);
  }
  const double len = std::sqrt(n2);
  if (!(len > 0.0) || std::abs(len - 1.0) > 1e-6)
    fail(errc::invalid_input, "state vector is not normalized");
  for (auto& a : amps_) a /= len;
}

SpinState SpinState::basis(int two_j, int two_m) {
  if (std::abs(two_m) > two_j || (two_j - two_m) % 2 != 0)
    fail(errc::invalid_input, "magnetic quantum number incompatible with spin");
  std::vector<Complex> amps(two_j + 1, 0.0);
  amps[(two_j - two_m) / 2] = 1.0;
  return SpinState(two_j, std::move(amps));
}

std::array<Complex, 2> qubit_state(const Vec3& n) {
  const double z = std::clamp(n.z, -1.0, 1.0);
  Complex up, down;
  if (z >= 0.0) {
    const double c = std::sqrt(0.5 * (1.0 + z));
    up = c;
    down = Complex(n.x, n.y) / (2.0 * c);
  } else {
    const double s = std::sqrt(0.5 * (1.0 - z));
    up = Complex(n.x, -n.y) / (2.0 * s);
    down = s;
  }
  const double au = std::abs(up);
  if (au > 0.0) {
    const Complex ph = std::conj(up) / au;
    up = au;
    down *= ph;
  } else {
    down = std::abs(down);  // exact south pole
  }
  return {up, down};
}

SpinState coherent_state(const Star& n, int two_j) {
  if (two_j < 1) fail(errc::invalid_input, "coherent state needs 2j >= 1");
  if (two_j > kMaxStars) fail(errc::size_cap, "2j exceeds the supported maximum of 12");
  const auto q = qubit_state(n.n());
  std::vector<Complex> up_pow(two_j + 1), dn_pow(two_j + 1);
  up_pow[0] = dn_pow[0] = 1.0;
  for (int k = 1; k <= two_j; ++k) {
    up_pow[k] = up_pow[k - 1] * q[0];
    dn_pow[k] = dn_pow[k - 1] * q[1];
  }
  std::vector<Complex> amps(two_j + 1);
  for (int k = 0; k <= two_j; ++k)
    amps[k] = std::sqrt(binomial(two_j, k)) * up_pow[two_j - k] * dn_pow[k];
  return fix_gauge(SpinState(two_j, std::move(amps)));
}

Complex qubit_overlap(const Star& a, const Star& b) {
  const auto qa = qubit_state(a.n());
  const auto qb = qubit_state(b.n());
  return std::conj(qa[0]) * qb[0] + std::conj(qa[1]) * qb[1];
}

Complex state_overlap(const SpinState& a, const SpinState& b) {
  if (a.two_j() != b.two_j()) fail(errc::invalid_input, "spin mismatch in overlap");
  Complex s = 0.0;
  for (int k = 0; k < a.dim(); ++k) s += std::conj(a.amp(k)) * b.amp(k);
  return s;
}

SpinState fix_gauge(const SpinState& s) {
  const auto& a = s.amps();
  double amax = 0.0;
  for (const auto& c : a) amax = std::max(amax, std::abs(c));
  int k0 = 0;
  for (int k = 0; k < static_cast<int>(a.size()); ++k) {
    if (std::abs(a[k]) > 1e-12 * amax) {
      k0 = k;
      break;
    }
  }
  const double mag = std::abs(a[k0]);
  const Complex ph = std::conj(a[k0]) / mag;
  std::vector<Complex> out(a.size());
  for (size_t k = 0; k < a.size(); ++k) out[k] = ph * a[k];
  out[k0] = mag;  // drop the residual imaginary dust on the anchor
  return SpinState(s.two_j(), std::move(out));
}

Complex permanent(const std::vector<std::vector<Complex>>& a) {
  const int n = static_cast<int>(a.size());
  if (n < 1) fail(errc::invalid_input, "permanent of an empty matrix");
  if (n > kMaxStars) fail(errc::size_cap, "permanent limited to 12 x 12");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) fail(errc::invalid_input, "permanent needs a square matrix");

  // Ryser: perm(A) = (-1)^n sum_{S != 0} (-1)^{|S|} prod_i sum_{j in S} a_ij,
  // with the row sums updated one column at a time along a Gray code.
  std::vector<Complex> rowsum(n, 0.0);
  Complex total = 0.0;
  uint32_t prev = 0;
  for (uint32_t k = 1; k < (1u << n); ++k) {
    const uint32_t gray = k ^ (k >> 1);
    const uint32_t changed = gray ^ prev;
    const int col = std::countr_zero(changed);
    const double dir = (gray & changed) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) rowsum[i] += dir * a[i][col];
    prev = gray;
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= rowsum[i];
    total += ((n - std::popcount(gray)) % 2 == 0) ? prod : -prod;
  }
  return total;
}

double gram_permanent_norm(const Constellation& c) {
  const int n = static_cast<int>(c.size());
  if (n < 1) fail(errc::invalid_input, "constellation is empty");
  if (n > kMaxStars) fail(errc::size_cap, "constellation limited to 12 stars");
  std::vector<std::array<Complex, 2>> q(n);
  for (int i = 0; i < n; ++i) q[i] = qubit_state(c[i].n());
  std::vector<std::vector<Complex>> g(n, std::vector<Complex>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g[i][j] = std::conj(q[i][0]) * q[j][0] + std::conj(q[i][1]) * q[j][1];
  const Complex p = permanent(g);
  if (std::abs(p.imag()) > 1e-8 * std::max(1.0, std::abs(p.real())))
    fail(errc::internal_consistency, "Gram permanent has a non-real residual");
  return p.real();
}

SpinState symmetrize_direct(const Constellation& c) {
  const int n = static_cast<int>(c.size());
  if (n < 1) fail(errc::invalid_input, "constellation is empty");
  if (n > 8) fail(errc::size_cap, "permutation sum limited to 8 stars");

  std::vector<std::array<Complex, 2>> q(n);
  for (int i = 0; i < n; ++i) q[i] = qubit_state(c[i].n());

  // Sum the product state over all orderings in the computational basis;
  // bit i of b selects the |down> component of the i-th slot.
  std::vector<Complex> tensor(size_t{1} << n, 0.0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    for (size_t b = 0; b < tensor.size(); ++b) {
      Complex amp = 1.0;
      for (int i = 0; i < n; ++i) amp *= q[order[i]][(b >> i) & 1];
      tensor[b] += amp;
    }
  } while (std::next_permutation(order.begin(), order.end()));

  const double a_n = gram_permanent_norm(c);
  const double scale = 1.0 / std::sqrt(factorial(n) * a_n);
  std::vector<Complex> amps(n + 1, 0.0);
  for (size_t b = 0; b < tensor.size(); ++b) amps[std::popcount(b)] += tensor[b];
  double n2 = 0.0;
  for (int k = 0; k <= n; ++k) {
    amps[k] *= scale / std::sqrt(binomial(n, k));
    n2 += std::norm(amps[k]);
  }
  if (std::abs(n2 - 1.0) > 1e-10)
    fail(errc::internal_consistency, "symmetrized state norm check failed");
  return fix_gauge(SpinState(n, std::move(amps)));
}

SpinState symmetrize(const Constellation& c) {
  const int n = static_cast<int>(c.size());
  if (n < 1) fail(errc::invalid_input, "constellation is empty");
  if (n > kMaxStars) fail(errc::size_cap, "constellation limited to 12 stars");
  return n <= 4 ? symmetrize_direct(c) : reconstruct(c);
}

}  // namespace majorana
