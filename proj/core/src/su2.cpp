#include "majorana/su2.hpp"

#include <cmath>

namespace majorana {

namespace {

long double ln_factorial(int n) { return std::lgammal(static_cast<long double>(n) + 1.0L); }

}  // namespace

double wigner_d(int two_j, int two_mp, int two_m, double beta) {
  if (two_j < 0 || std::abs(two_m) > two_j || std::abs(two_mp) > two_j ||
      (two_j - two_m) % 2 != 0 || (two_j - two_mp) % 2 != 0)
    fail(errc::invalid_input, "incompatible spin projection indices");

  const int a = (two_j + two_m) / 2;    // j + m
  const int b = (two_j - two_m) / 2;    // j - m
  const int ap = (two_j + two_mp) / 2;  // j + m'
  const int bp = (two_j - two_mp) / 2;  // j - m'
  const int dm = (two_mp - two_m) / 2;  // m' - m

  const long double c = std::cos(static_cast<long double>(beta) * 0.5L);
  const long double s = std::sin(static_cast<long double>(beta) * 0.5L);
  const long double pref =
      0.5L * (ln_factorial(a) + ln_factorial(b) + ln_factorial(ap) + ln_factorial(bp));

  const int kmin = std::max(0, -dm);
  const int kmax = std::min(a, bp);
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double den =
        ln_factorial(a - k) + ln_factorial(k) + ln_factorial(bp - k) + ln_factorial(dm + k);
    const long double sign = ((dm + k) % 2 == 0) ? 1.0L : -1.0L;
    const int pc = two_j - dm - 2 * k;  // power of cos(beta/2)
    const int ps = dm + 2 * k;          // power of sin(beta/2)
    sum += sign * std::exp(pref - den) * std::pow(c, pc) * std::pow(s, ps);
  }
  return static_cast<double>(sum);
}

SpinState rotate_state_zyz(const SpinState& st, double alpha, double beta, double gamma) {
  const int two_j = st.two_j();
  std::vector<Complex> out(st.dim(), 0.0);
  for (int kp = 0; kp < st.dim(); ++kp) {
    const int two_mp = two_j - 2 * kp;
    Complex acc = 0.0;
    for (int k = 0; k < st.dim(); ++k) {
      const int two_m = two_j - 2 * k;
      const double d = wigner_d(two_j, two_mp, two_m, beta);
      const Complex phase = std::polar(1.0, -0.5 * (two_mp * alpha + two_m * gamma));
      acc += phase * d * st.amp(k);
    }
    out[kp] = acc;
  }
  return SpinState(two_j, std::move(out));
}

Mat3 so3_zyz(double alpha, double beta, double gamma) {
  return rotation_z(alpha) * rotation_y(beta) * rotation_z(gamma);
}

}  // namespace majorana
