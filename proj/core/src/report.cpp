#include "majorana/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace majorana {

namespace {

using ordered_json = nlohmann::ordered_json;

// %.17g round-trips every finite double; keep a decimal marker so the value
// parses back as a float, not an integer.
std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos && s.find("inf") == std::string::npos &&
      s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

void escape_string(const std::string& in, std::string& out) {
  out += '"';
  for (char ch : in) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

bool is_scalar_array(const ordered_json& v) {
  for (const auto& e : v)
    if (e.is_object() || e.is_array()) return false;
  return true;
}

void write_value(const ordered_json& v, std::string& out, int level) {
  const std::string pad(2 * level, ' ');
  const std::string pad_in(2 * (level + 1), ' ');
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t k = 0;
      for (auto it = v.begin(); it != v.end(); ++it, ++k) {
        out += pad_in;
        escape_string(it.key(), out);
        out += ": ";
        write_value(it.value(), out, level + 1);
        if (k + 1 < v.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      if (is_scalar_array(v)) {
        out += '[';
        for (size_t k = 0; k < v.size(); ++k) {
          write_value(v[k], out, level);
          if (k + 1 < v.size()) out += ", ";
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (size_t k = 0; k < v.size(); ++k) {
        out += pad_in;
        write_value(v[k], out, level + 1);
        if (k + 1 < v.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      return;
    }
    case ordered_json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    case ordered_json::value_t::number_integer:
      out += std::to_string(v.get<int64_t>());
      return;
    case ordered_json::value_t::number_unsigned:
      out += std::to_string(v.get<uint64_t>());
      return;
    case ordered_json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      return;
    case ordered_json::value_t::string:
      escape_string(v.get<std::string>(), out);
      return;
    default:
      out += "null";
      return;
  }
}

std::string emit(const ordered_json& v) {
  std::string out;
  write_value(v, out, 0);
  out += '\n';
  return out;
}

ordered_json pair_terms_json(const std::vector<PairTermEntry>& terms) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : terms) {
    ordered_json e;
    e["i"] = t.i;
    e["j"] = t.j;
    e["integral"] = t.integral;
    e["theta_mean"] = t.theta_mean;
    e["theta_min"] = t.theta_min;
    e["theta_max"] = t.theta_max;
    arr.push_back(std::move(e));
  }
  return arr;
}

ordered_json berry_body(const BerryReport& rep) {
  ordered_json j;
  j["kind"] = "berry_report";
  j["j"] = rep.j;
  j["samples"] = rep.samples;
  j["closure"] = rep.closure == Closure::cyclic ? "cyclic" : "permuted";
  j["permutation"] = rep.permutation;
  j["tolerance"] = rep.tolerance;
  j["gamma_star_terms"] = rep.gamma_star_terms;
  j["pair_terms"] = pair_terms_json(rep.pair_terms);
  j["gamma_formula"] = rep.gamma_formula;
  j["gamma_oracle"] = rep.gamma_oracle;
  j["gamma_formula_mod_2pi"] = rep.gamma_formula_mod_2pi;
  j["gamma_oracle_mod_2pi"] = rep.gamma_oracle_mod_2pi;
  j["residual"] = rep.residual;
  j["verified"] = rep.verified;
  return j;
}

double require_double(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    fail(errc::invalid_input, std::string("report field missing or non-numeric: ") + key);
  return j[key].get<double>();
}

}  // namespace

std::string berry_report_to_json(const BerryReport& rep) { return emit(berry_body(rep)); }

BerryReport berry_report_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::invalid_input, "malformed report document");
  if (!j.contains("kind") || j["kind"] != "berry_report")
    fail(errc::invalid_input, "not a berry_report document");
  BerryReport rep;
  rep.j = require_double(j, "j");
  rep.samples = j.value("samples", 0);
  rep.closure = j.value("closure", "cyclic") == std::string("cyclic") ? Closure::cyclic
                                                                      : Closure::permuted;
  rep.permutation = j.value("permutation", std::vector<int>{});
  rep.tolerance = require_double(j, "tolerance");
  rep.gamma_star_terms = j.value("gamma_star_terms", std::vector<double>{});
  if (j.contains("pair_terms")) {
    for (const auto& e : j["pair_terms"]) {
      PairTermEntry t;
      t.i = e.value("i", 0);
      t.j = e.value("j", 0);
      t.integral = require_double(e, "integral");
      t.theta_mean = require_double(e, "theta_mean");
      t.theta_min = require_double(e, "theta_min");
      t.theta_max = require_double(e, "theta_max");
      rep.pair_terms.push_back(t);
    }
  }
  rep.gamma_formula = require_double(j, "gamma_formula");
  rep.gamma_oracle = require_double(j, "gamma_oracle");
  rep.gamma_formula_mod_2pi = require_double(j, "gamma_formula_mod_2pi");
  rep.gamma_oracle_mod_2pi = require_double(j, "gamma_oracle_mod_2pi");
  rep.residual = require_double(j, "residual");
  rep.verified = j.value("verified", false);
  return rep;
}

std::string rigid_report_to_json(const RigidReport& rep) {
  ordered_json j = berry_body(rep.report);
  j["kind"] = "rigid_report";
  ordered_json arr = ordered_json::array();
  for (const auto& p : rep.rigid_pairs) {
    ordered_json e;
    e["i"] = p.i;
    e["j"] = p.j;
    e["weight"] = p.weight;
    e["self_rotation"] = p.self_rotation;
    arr.push_back(std::move(e));
  }
  j["rigid_pairs"] = std::move(arr);
  j["gamma_rigid"] = rep.gamma_rigid;
  return emit(j);
}

std::string star_report_to_json(const StarReport& rep) {
  ordered_json j;
  j["kind"] = "star_report";
  j["j"] = rep.j;
  j["renormalized"] = rep.renormalized;
  ordered_json arr = ordered_json::array();
  for (const auto& s : rep.stars) {
    ordered_json e;
    e["n"] = std::vector<double>{s.n.x, s.n.y, s.n.z};
    e["theta"] = s.theta;
    e["phi"] = s.phi;
    e["multiplicity"] = s.multiplicity;
    e["residual"] = s.residual;
    arr.push_back(std::move(e));
  }
  j["stars"] = std::move(arr);
  return emit(j);
}

std::string berry_report_table(const BerryReport& rep) {
  constexpr double kDeg = 180.0 / std::numbers::pi;
  std::ostringstream os;
  char line[160];
  os << "Berry phase decomposition (j = " << rep.j << ", "
     << (rep.closure == Closure::cyclic ? "cyclic" : "permuted") << " closure, " << rep.samples
     << " samples)\n";
  for (size_t i = 0; i < rep.gamma_star_terms.size(); ++i) {
    std::snprintf(line, sizeof(line), "  star %-2zu  gamma_i = %+.12f rad  (%+.6f deg)\n", i,
                  rep.gamma_star_terms[i], rep.gamma_star_terms[i] * kDeg);
    os << line;
  }
  for (const auto& p : rep.pair_terms) {
    std::snprintf(line, sizeof(line),
                  "  pair (%d,%d)  integral = %+.12f rad  Theta mean/min/max = %.6f/%.6f/%.6f\n",
                  p.i, p.j, p.integral, p.theta_mean, p.theta_min, p.theta_max);
    os << line;
  }
  std::snprintf(line, sizeof(line), "  total   %+.12f rad  (mod 2pi: %+.12f)\n",
                rep.gamma_formula, rep.gamma_formula_mod_2pi);
  os << line;
  std::snprintf(line, sizeof(line), "  oracle  %+.12f rad  (mod 2pi: %+.12f)\n",
                rep.gamma_oracle, rep.gamma_oracle_mod_2pi);
  os << line;
  std::snprintf(line, sizeof(line), "  residual %.3e  (tolerance %.3e)  %s\n", rep.residual,
                rep.tolerance, rep.verified ? "verified" : "NOT verified");
  os << line;
  return os.str();
}

std::string star_report_table(const StarReport& rep) {
  constexpr double kDeg = 180.0 / std::numbers::pi;
  std::ostringstream os;
  os << "Majorana stars (j = " << rep.j << ")\n";
  char line[160];
  for (const auto& s : rep.stars) {
    std::snprintf(line, sizeof(line),
                  "  n = (%+.12f, %+.12f, %+.12f)  theta = %9.6f rad (%8.4f deg)  phi = %9.6f rad"
                  "  x%d  residual %.2e\n",
                  s.n.x, s.n.y, s.n.z, s.theta, s.theta * kDeg, s.phi, s.multiplicity, s.residual);
    os << line;
  }
  return os.str();
}

}  // namespace majorana
