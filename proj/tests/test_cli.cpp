#include <doctest.h>

#include <numbers>
#include <sstream>

#include "helpers.hpp"
#include "majorana/commands.hpp"
#include "majorana/paths.hpp"
#include "majorana/report.hpp"

using namespace majorana;

namespace {
constexpr double kPi = std::numbers::pi;

int run_berry(const std::string& doc, std::string& out, const CmdOptions& opt = {}) {
  std::istringstream in(doc);
  std::ostringstream os, diag;
  const int code = cmd_berry(in, os, diag, opt);
  out = os.str();
  return code;
}
}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("path generators close and respect the continuity bound") {
  const StarLoop coro = make_corotation_loop(0.4, 1.0, 0.1, 0.9, 500);
  CHECK(coro.closure == Closure::cyclic);
  CHECK(max_angular_step(coro) < coro.continuity_bound);
  for (int i = 0; i < 2; ++i)
    CHECK(angle_between(coro.samples.front()[i].n(), coro.samples.back()[i].n()) == 0.0);

  const StarLoop fourier = make_fourier_loop(3, 4242, 3, 0.4, 2000);
  CHECK(fourier.closure == Closure::cyclic);
  CHECK(max_angular_step(fourier) < 0.1);

  // identical seeds give identical loops
  const StarLoop again = make_fourier_loop(3, 4242, 3, 0.4, 2000);
  for (size_t t = 0; t < fourier.samples.size(); ++t)
    for (int i = 0; i < 3; ++i) CHECK(fourier.samples[t][i].n() == again.samples[t][i].n());
}

TEST_CASE("berry report round-trips field-exactly") {
  const StarLoop loop = make_corotation_loop(0.3, 1.1, 0.0, 0.8, 900);
  const BerryReport rep = decompose(loop, 1e-4);
  const std::string text = berry_report_to_json(rep);
  const BerryReport back = berry_report_from_json(text);
  CHECK(back == rep);
  CHECK(berry_report_to_json(back) == text);
}

TEST_CASE("malformed report documents are rejected") {
  CHECK_THROWS_AS(berry_report_from_json("{"), error);
  CHECK_THROWS_AS(berry_report_from_json("{\"kind\": \"something_else\"}"), error);
}

TEST_CASE("stars command: listing, renormalization warning, rejection") {
  CmdOptions opt;
  {
    std::istringstream in(R"({"kind":"state","j":1,"amps":[[0,0],[1,0],[0,0]]})");
    std::ostringstream out, diag;
    CHECK(cmd_stars(in, out, diag, opt) == 0);
    CHECK(out.str().find("\"multiplicity\": 1") != std::string::npos);
    CHECK(diag.str().empty());
  }
  {
    // slightly off norm: accepted with a note on the diagnostic stream
    std::istringstream in(R"({"kind":"state","j":0.5,"amps":[[1.0000001,0],[0,0]]})");
    std::ostringstream out, diag;
    CHECK(cmd_stars(in, out, diag, opt) == 0);
    CHECK(diag.str().find("renormalizing") != std::string::npos);
  }
  {
    std::istringstream in(R"({"kind":"state","j":0.5,"amps":[[2,0],[0,0]]})");
    std::ostringstream out, diag;
    CHECK(cmd_stars(in, out, diag, opt) == 2);
  }
  {
    std::istringstream in("not json at all");
    std::ostringstream out, diag;
    CHECK(cmd_stars(in, out, diag, opt) == 2);
  }
}

TEST_CASE("stars command groups coincident stars") {
  std::istringstream in(R"({"kind":"state","j":1.5,"amps":[[1,0],[0,0],[0,0],[0,0]]})");
  std::ostringstream out, diag;
  CHECK(cmd_stars(in, out, diag, {}) == 0);
  CHECK(out.str().find("\"multiplicity\": 3") != std::string::npos);
}

TEST_CASE("berry command verifies, reports and honors exit codes") {
  std::string out;
  CHECK(run_berry(R"({"kind":"corotation","theta1":0.3,"theta2":1.1,"phi1":0,"phi2":0.8,)"
                  R"("samples":2000,"tolerance":1e-4})",
                  out) == 0);
  const BerryReport rep = berry_report_from_json(out);
  CHECK(rep.verified);
  CHECK(phase_residual(rep.gamma_formula, corotation_closed_form(0.3, 1.1, 0.0, 0.8)) < 1e-5);

  // impossible tolerance: exit code 1, verified false
  CmdOptions tight;
  tight.tolerance = 1e-18;
  CHECK(run_berry(R"({"kind":"corotation","theta1":0.3,"theta2":1.1,"phi1":0,"phi2":0.8,)"
                  R"("samples":500})",
                  out, tight) == 1);
  CHECK_FALSE(berry_report_from_json(out).verified);

  // unknown kind: input error
  CHECK(run_berry(R"({"kind":"nonsense"})", out) == 2);

  // non-closing rigid rotation: input error
  CHECK(run_berry(R"({"kind":"rigid_rotation","stars":[[0,0,1],[1,0,0]],"axis":[0,0,1],)"
                  R"("angle":1.0,"samples":200})",
                  out) == 2);
}

TEST_CASE("berry command output is byte-identical across runs") {
  const std::string spec =
      R"({"kind":"fourier_random","j":1.5,"seed":77,"modes":3,"amplitude":0.4,"samples":1500})";
  std::string first, second;
  CHECK(run_berry(spec, first) == 0);
  CHECK(run_berry(spec, second) == 0);
  CHECK(first == second);
  CHECK(!first.empty());
}

TEST_CASE("sampled star input goes through loop validation") {
  std::ostringstream doc;
  doc << R"({"kind":"sampled","j":1,"star_samples":[)";
  const int t_count = 200;
  for (int t = 0; t <= t_count; ++t) {
    const double u = 2.0 * kPi * (t % t_count) / t_count;
    const Star a = Star::polar(0.5, u), b = Star::polar(1.1, u + 0.4);
    doc << (t ? "," : "") << "[[" << a.n().x << "," << a.n().y << "," << a.n().z << "],["
        << b.n().x << "," << b.n().y << "," << b.n().z << "]]";
  }
  doc << "]}";
  std::string out;
  CHECK(run_berry(doc.str(), out) == 0);
  const BerryReport rep = berry_report_from_json(out);
  CHECK(rep.closure == Closure::cyclic);
}

TEST_CASE("sweep tables: header, endpoints, monotone columns") {
  CmdOptions opt;
  std::istringstream in(R"({"kind":"pair_measures","count":33})");
  std::ostringstream out, diag;
  REQUIRE(cmd_sweep(in, out, diag, opt) == 0);
  std::istringstream table(out.str());
  std::string header;
  std::getline(table, header);
  CHECK(header == "theta,concurrence,barycentric,w12");
  std::vector<std::array<double, 4>> rows;
  std::string line;
  while (std::getline(table, line)) {
    std::array<double, 4> row{};
    std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &row[0], &row[1], &row[2], &row[3]);
    rows.push_back(row);
  }
  REQUIRE(rows.size() == 33);
  CHECK(rows.front()[1] == 0.0);
  CHECK(rows.front()[2] == 0.0);
  CHECK(rows.front()[3] == 0.0);
  CHECK(rows.back()[1] == 1.0);
  CHECK(rows.back()[2] == 1.0);
  CHECK(rows.back()[3] == 0.0);
  for (size_t k = 1; k + 1 < rows.size(); ++k) {
    CHECK(rows[k][1] > rows[k - 1][1]);  // concurrence increases
    CHECK(rows[k][2] > rows[k - 1][2]);  // barycentric measure increases
  }
}

TEST_CASE("corotation-term sweep scales with cos(latitude)") {
  CmdOptions opt;
  std::istringstream in(R"({"kind":"corotation_term","half_angle":0.35,"count":6,"samples":1500})");
  std::ostringstream out, diag;
  REQUIRE(cmd_sweep(in, out, diag, opt) == 0);
  std::istringstream table(out.str());
  std::string line;
  std::getline(table, line);  // header
  std::vector<double> ratios;
  while (std::getline(table, line)) {
    double lat, term, ratio;
    std::sscanf(line.c_str(), "%lf,%lf,%lf", &lat, &term, &ratio);
    ratios.push_back(ratio);
  }
  REQUIRE(ratios.size() == 6);
  for (double r : ratios) CHECK(r == doctest::Approx(ratios.front()).epsilon(1e-5));
}

TEST_CASE("bound-margin sweep stays non-negative and is seed-deterministic") {
  CmdOptions opt;
  auto run = [&] {
    std::istringstream in(R"({"kind":"bound_margin","count":200,"seed":5})");
    std::ostringstream out, diag;
    REQUIRE(cmd_sweep(in, out, diag, opt) == 0);
    return out.str();
  };
  const std::string first = run();
  CHECK(first == run());
  std::istringstream table(first);
  std::string line;
  std::getline(table, line);
  while (std::getline(table, line)) {
    double idx, lhs, rhs, margin;
    std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &idx, &lhs, &rhs, &margin);
    CHECK(margin >= -1e-10);
  }
}

TEST_CASE("tolerance injection makes the targeted check fail") {
  SelfcheckOptions opt;
  opt.only = "weight-closed-forms";
  {
    std::ostringstream out, diag;
    CHECK(cmd_verify(out, diag, opt) == 0);
    CHECK(out.str().find("[PASS] 1. weight-closed-forms") != std::string::npos);
  }
  opt.tolerance_scale = 0.0;
  {
    std::ostringstream out, diag;
    CHECK(cmd_verify(out, diag, opt) == 1);
    CHECK(out.str().find("[FAIL] 1. weight-closed-forms") != std::string::npos);
  }
}

TEST_SUITE_END();
