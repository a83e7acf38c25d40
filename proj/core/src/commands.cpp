#include "majorana/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "majorana/entanglement.hpp"
#include "majorana/paths.hpp"
#include "majorana/random.hpp"
#include "majorana/report.hpp"

namespace majorana {

namespace {

using json = nlohmann::json;

int two_j_from(const json& j, const char* key = "j") {
  if (!j.contains(key) || !j[key].is_number())
    fail(errc::invalid_input, std::string("missing numeric field: ") + key);
  const double val = j[key].get<double>();
  const double doubled = 2.0 * val;
  const int two_j = static_cast<int>(std::lround(doubled));
  if (std::abs(doubled - two_j) > 1e-9 || two_j < 0)
    fail(errc::invalid_input, "j must be a non-negative half-integer");
  return two_j;
}

Vec3 vec3_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
      !j[2].is_number())
    fail(errc::invalid_input, std::string(what) + " must be a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::vector<Complex> amps_from(const json& j) {
  if (!j.is_array() || j.empty()) fail(errc::invalid_input, "amps must be a list of (re, im) pairs");
  std::vector<Complex> amps;
  amps.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      fail(errc::invalid_input, "each amplitude must be a (re, im) pair");
    amps.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return amps;
}

json parse_document(std::istream& in) {
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) fail(errc::invalid_input, "input is not well-formed JSON");
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    fail(errc::invalid_input, "input document needs a \"kind\" string");
  return doc;
}

// Builds a state from raw amplitudes with the CLI renormalization policy:
// silently exact, renormalize-with-warning below 1e-6 deviation, reject above.
SpinState state_from_document(const json& doc, std::ostream& diag, bool* renormalized) {
  const int two_j = two_j_from(doc);
  auto amps = amps_from(doc["amps"]);
  if (static_cast<int>(amps.size()) != two_j + 1)
    fail(errc::invalid_input, "amplitude count must be 2j+1");
  double n2 = 0.0;
  for (const auto& a : amps) n2 += std::norm(a);
  const double deviation = std::abs(std::sqrt(n2) - 1.0);
  if (deviation >= 1e-6)
    fail(errc::invalid_input, "state norm deviates by " + std::to_string(deviation));
  if (renormalized) *renormalized = deviation > 1e-12;
  if (deviation > 1e-12)
    diag << "note: input norm off by " << deviation << "; renormalizing\n";
  return SpinState(two_j, std::move(amps));
}

PathSpec path_spec_from(const json& doc, const CmdOptions& opt, std::ostream& diag) {
  PathSpec spec;
  const std::string kind = doc["kind"].get<std::string>();
  spec.samples = doc.value("samples", 2000);
  if (opt.samples) spec.samples = *opt.samples;
  spec.continuity_bound = doc.value("continuity_bound", 0.1);

  if (kind == "corotation") {
    CorotationSpec p;
    p.theta1 = doc.value("theta1", 0.0);
    p.theta2 = doc.value("theta2", 0.0);
    p.phi1 = doc.value("phi1", 0.0);
    p.phi2 = doc.value("phi2", 0.0);
    spec.payload = p;
  } else if (kind == "rigid_rotation") {
    RigidRotationSpec p;
    if (!doc.contains("stars") || !doc["stars"].is_array())
      fail(errc::invalid_input, "rigid_rotation needs a \"stars\" list");
    for (const auto& s : doc["stars"]) p.stars.push_back(Star::unit(vec3_from(s, "star")));
    p.axis = vec3_from(doc.at("axis"), "axis");
    if (!doc.contains("angle") || !doc["angle"].is_number())
      fail(errc::invalid_input, "rigid_rotation needs a numeric \"angle\"");
    p.angle = doc["angle"].get<double>();
    spec.payload = p;
  } else if (kind == "sliding") {
    SlidingSpec p;
    p.normal = vec3_from(doc.at("normal"), "normal");
    if (!doc.contains("schedules") || !doc["schedules"].is_array())
      fail(errc::invalid_input, "sliding needs a \"schedules\" list");
    for (const auto& s : doc["schedules"]) {
      Schedule sched;
      sched.offset = s.value("offset", 0.0);
      sched.turns = s.value("turns", 1);
      sched.cos_coeffs = s.value("cos", std::vector<double>{});
      sched.sin_coeffs = s.value("sin", std::vector<double>{});
      p.schedules.push_back(std::move(sched));
    }
    spec.payload = p;
  } else if (kind == "fourier_random") {
    FourierRandomSpec p;
    p.two_j = two_j_from(doc);
    p.seed = doc.value("seed", uint64_t{1});
    if (opt.seed) p.seed = *opt.seed;
    p.modes = doc.value("modes", 3);
    p.amplitude = doc.value("amplitude", 0.4);
    spec.payload = p;
  } else if (kind == "sampled") {
    SampledSpec p;
    if (doc.contains("star_samples")) {
      for (const auto& sample : doc["star_samples"]) {
        std::vector<Star> stars;
        for (const auto& s : sample) stars.push_back(Star::unit(vec3_from(s, "star")));
        p.star_samples.push_back(std::move(stars));
      }
    } else if (doc.contains("amp_samples")) {
      for (const auto& sample : doc["amp_samples"]) {
        json wrapper;
        wrapper["j"] = doc.at("j");
        wrapper["amps"] = sample;
        p.amp_samples.push_back(state_from_document(wrapper, diag, nullptr));
      }
    } else {
      fail(errc::invalid_input, "sampled path needs \"star_samples\" or \"amp_samples\"");
    }
    spec.payload = p;
  } else {
    fail(errc::invalid_input, "unknown path kind: " + kind);
  }
  return spec;
}

int run_guarded(std::ostream& diag, int (*body)(const json&, std::ostream&, std::ostream&,
                                                const CmdOptions&),
                std::istream& in, std::ostream& out, const CmdOptions& opt) {
  try {
    const json doc = parse_document(in);
    return body(doc, out, diag, opt);
  } catch (const error& e) {
    diag << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 2;
  }
}

int stars_body(const json& doc, std::ostream& out, std::ostream& diag, const CmdOptions& opt) {
  if (doc["kind"] != "state") fail(errc::invalid_input, "stars expects a \"state\" document");
  bool renormalized = false;
  const SpinState psi = state_from_document(doc, diag, &renormalized);
  const Constellation stars = extract_stars(psi);

  StarReport rep;
  rep.j = psi.j();
  rep.renormalized = renormalized;
  for (size_t i = 0; i < stars.size();) {
    size_t k = i;
    while (k < stars.size() && stars[k].n() == stars[i].n()) ++k;
    StarLine line;
    line.n = stars[i].n();
    line.theta = stars[i].theta();
    line.phi = stars[i].phi();
    line.multiplicity = static_cast<int>(k - i);
    line.residual = orthogonality_residual(stars[i], psi);
    rep.stars.push_back(line);
    i = k;
  }
  out << (opt.format == "table" ? star_report_table(rep) : star_report_to_json(rep));
  return 0;
}

int berry_body(const json& doc, std::ostream& out, std::ostream& diag, const CmdOptions& opt) {
  const PathSpec spec = path_spec_from(doc, opt, diag);
  const double tolerance = opt.tolerance.value_or(doc.value("tolerance", 1e-4));

  if (std::holds_alternative<RigidRotationSpec>(spec.payload)) {
    const auto& p = std::get<RigidRotationSpec>(spec.payload);
    const RigidReport rep =
        rigid_rotation_phase(p.stars, Star::unit(p.axis), p.angle, spec.samples, tolerance);
    out << (opt.format == "table" ? berry_report_table(rep.report) : rigid_report_to_json(rep));
    return rep.report.verified ? 0 : 1;
  }
  const StarLoop loop = generate_loop(spec);
  const BerryReport rep = decompose(loop, tolerance);
  out << (opt.format == "table" ? berry_report_table(rep) : berry_report_to_json(rep));
  return rep.verified ? 0 : 1;
}

void emit_csv_row(std::ostream& out, const std::vector<double>& row) {
  char buf[40];
  for (size_t k = 0; k < row.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", row[k]);
    out << buf << (k + 1 < row.size() ? "," : "\n");
  }
}

int sweep_body(const json& doc, std::ostream& out, std::ostream& diag, const CmdOptions& opt) {
  (void)diag;
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "pair_measures") {
    // Theta sweep of concurrence, barycentric measure and the pair weight
    const int count = doc.value("count", 64);
    const double start = doc.value("theta_start", 0.0);
    const double stop = doc.value("theta_stop", std::numbers::pi / 2);
    if (count < 2) fail(errc::invalid_input, "sweep needs at least two rows");
    out << "theta,concurrence,barycentric,w12\n";
    for (int k = 0; k < count; ++k) {
      const double theta = start + (stop - start) * k / (count - 1);
      const Constellation c{Star::polar(0.0, 0.0), Star::polar(2.0 * theta, 0.0)};
      std::vector<std::vector<double>> dots(2, std::vector<double>(2, 1.0));
      dots[0][1] = dots[1][0] = snapped_dot(c[0].n(), c[1].n());
      emit_csv_row(out, {theta, concurrence2(c), barycentric2(c), weight_factor(dots, 0, 1)});
    }
    return 0;
  }
  if (kind == "corotation_term") {
    // barycenter-latitude sweep of the corotation pair term
    const double half_angle = doc.value("half_angle", 0.4);
    const int count = doc.value("count", 16);
    const int samples = opt.samples.value_or(doc.value("samples", 4000));
    const double start = doc.value("latitude_start", half_angle + 0.05);
    const double stop = doc.value("latitude_stop", std::numbers::pi / 2 - 0.05);
    if (count < 2) fail(errc::invalid_input, "sweep needs at least two rows");
    out << "latitude,pair_term,pair_term_over_cos\n";
    for (int k = 0; k < count; ++k) {
      const double lat = start + (stop - start) * k / (count - 1);
      const StarLoop loop =
          make_corotation_loop(lat - half_angle, lat + half_angle, 0.0, 0.0, samples);
      const BerryReport rep = decompose(loop);
      const double term = rep.pair_terms[0].integral;
      emit_csv_row(out, {lat, term, term / std::cos(lat)});
    }
    return 0;
  }
  if (kind == "bound_margin") {
    const int count = doc.value("count", 1000);
    const uint64_t seed = opt.seed.value_or(doc.value("seed", uint64_t{1}));
    Rng rng(seed);
    out << "index,lhs,rhs,margin\n";
    for (int k = 0; k < count; ++k) {
      const Constellation c{Star::unit(rng.unit_vector()), Star::unit(rng.unit_vector()),
                            Star::unit(rng.unit_vector())};
      const EntanglementReport rep = weight_bound_check(c);
      emit_csv_row(out, {static_cast<double>(k), *rep.bound_lhs, *rep.bound_rhs,
                         *rep.bound_rhs - *rep.bound_lhs});
    }
    return 0;
  }
  fail(errc::invalid_input, "unknown sweep kind: " + kind);
}

}  // namespace

int exit_code_for(errc code) {
  switch (code) {
    case errc::invalid_input:
    case errc::size_cap:
      return 2;
    default:
      return 3;
  }
}

int cmd_stars(std::istream& in, std::ostream& out, std::ostream& diag, const CmdOptions& opt) {
  return run_guarded(diag, stars_body, in, out, opt);
}

int cmd_berry(std::istream& in, std::ostream& out, std::ostream& diag, const CmdOptions& opt) {
  return run_guarded(diag, berry_body, in, out, opt);
}

int cmd_sweep(std::istream& in, std::ostream& out, std::ostream& diag, const CmdOptions& opt) {
  return run_guarded(diag, sweep_body, in, out, opt);
}

int cmd_verify(std::ostream& out, std::ostream& diag, const SelfcheckOptions& opt) {
  (void)diag;
  const auto results = run_selfchecks(opt);
  bool all_pass = true;
  char line[512];
  for (size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    all_pass = all_pass && r.pass;
    std::snprintf(line, sizeof(line), "[%s] %zu. %-32s (%.2f s)  %s\n", r.pass ? "PASS" : "FAIL",
                  k + 1, r.name.c_str(), r.seconds, r.detail.c_str());
    out << line;
  }
  out << (all_pass ? "all checks passed\n" : "CHECKS FAILED\n");
  return all_pass ? 0 : 1;
}

}  // namespace majorana
