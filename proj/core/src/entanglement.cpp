#include "majorana/entanglement.hpp"

#include <cmath>

namespace majorana {

namespace {

double snapped_pair_dot(const Constellation& c, int i, int j) {
  return snapped_dot(c[i].n(), c[j].n());
}

void require_stars(const Constellation& c, size_t count, const char* what) {
  if (c.size() != count) fail(errc::invalid_input, what);
}

}  // namespace

double concurrence2(const Constellation& c) {
  require_stars(c, 2, "concurrence needs exactly two stars");
  const double t = snapped_pair_dot(c, 0, 1);
  return (1.0 - t) / (3.0 + t);
}

double barycentric2(const Constellation& c) {
  require_stars(c, 2, "barycentric measure needs exactly two stars");
  const double t = snapped_pair_dot(c, 0, 1);
  return 0.5 * (1.0 - t);
}

double barycentric3(const Constellation& c) {
  require_stars(c, 3, "barycentric measure needs exactly three stars");
  double sum = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) sum += pair_trig(snapped_pair_dot(c, i, j)).sin2;
  return (4.0 / 9.0) * sum;
}

double three_tangle(const Constellation& c) {
  require_stars(c, 3, "three-tangle needs exactly three stars");
  double prod_sin = 1.0, sum_cos2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const auto [s2, cs] = pair_trig(snapped_pair_dot(c, i, j));
      prod_sin *= std::sqrt(s2);
      sum_cos2 += cs * cs;
    }
  }
  if (sum_cos2 < 1e-12)
    fail(errc::degenerate_geometry, "three-tangle denominator vanishes");
  const double ratio = prod_sin / sum_cos2;
  return (4.0 / 3.0) * ratio * ratio;
}

EntanglementReport weight_bound_check(const Constellation& c) {
  require_stars(c, 3, "weight bound needs exactly three stars");
  std::vector<std::vector<double>> dots(3, std::vector<double>(3, 1.0));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) dots[i][j] = dots[j][i] = snapped_pair_dot(c, i, j);
  const LeeTerms lee = lee_eval(dots);
  double lhs = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) lhs *= weight_from(lee, dots, i, j);

  EntanglementReport rep;
  rep.barycentric = barycentric3(c);
  rep.three_tangle = three_tangle(c);
  rep.bound_lhs = lhs;
  rep.bound_rhs = 0.25 * *rep.three_tangle * std::sqrt(std::max(0.0, 1.0 - 0.75 * rep.barycentric));
  rep.bound_ok = lhs <= *rep.bound_rhs + 1e-10;
  return rep;
}

double entangled_phase_terms(const StarLoop& loop) {
  if (loop.two_j != 2) fail(errc::invalid_input, "entangled phase terms need a two-star loop");
  double acc = 0.0;
  PairFrame prev = pair_frame(loop.samples[0][0], loop.samples[0][1]);
  double two_theta_prev = angle_between(loop.samples[0][0].n(), loop.samples[0][1].n());
  for (size_t t = 1; t < loop.samples.size(); ++t) {
    const PairFrame curr = pair_frame(loop.samples[t][0], loop.samples[t][1]);
    const double two_theta = angle_between(loop.samples[t][0].n(), loop.samples[t][1].n());
    const double t_mid = std::cos(0.5 * (two_theta_prev + two_theta));
    const auto [s2, cs] = pair_trig(t_mid);
    const double conc = s2 / (1.0 + cs * cs);
    const double root = std::sqrt(std::max(0.0, 1.0 - s2));  // sqrt(1 - E_B)
    const double w = conc * root;
    if (w != 0.0) {
      if (prev.R_degenerate || prev.r_degenerate || curr.R_degenerate || curr.r_degenerate)
        fail(errc::degenerate_geometry, "degenerate pair frame with a nonvanishing weight");
      acc += w * self_rotation_step(prev, curr);
    }
    prev = curr;
    two_theta_prev = two_theta;
  }
  return acc;
}

}  // namespace majorana
