// Command-line front end: Majorana star extraction, Berry-phase
// decomposition reports, parameter sweeps and the built-in verification
// suite. Inputs are single JSON documents (file or stdin); reports go to a
// file or stdout.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "majorana/commands.hpp"

namespace {

struct IoOptions {
  std::string input = "-";
  std::string output = "-";
};

void add_io(CLI::App* cmd, IoOptions& io, majorana::CmdOptions& opt, bool with_samples = true) {
  cmd->add_option("-i,--input", io.input, "Input document path, or - for stdin");
  cmd->add_option("-o,--output", io.output, "Output path, or - for stdout");
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"report", "table"}));
  if (with_samples) cmd->add_option("--samples", opt.samples, "Override the sample count");
  cmd->add_option("--tolerance", opt.tolerance, "Verification tolerance (radians, mod 2pi)");
  cmd->add_option("--seed", opt.seed, "Override the random seed");
}

int with_streams(const IoOptions& io,
                 const std::function<int(std::istream&, std::ostream&)>& body) {
  std::ifstream fin;
  std::ofstream fout;
  std::istream* in = &std::cin;
  std::ostream* out = &std::cout;
  if (io.input != "-") {
    fin.open(io.input);
    if (!fin) {
      std::cerr << "error: cannot open input file: " << io.input << "\n";
      return 2;
    }
    in = &fin;
  }
  if (io.output != "-") {
    fout.open(io.output);
    if (!fout) {
      std::cerr << "error: cannot open output file: " << io.output << "\n";
      return 2;
    }
    out = &fout;
  }
  return body(*in, *out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berry phases of spin-j states from the geometry of their Majorana constellation"};
  app.require_subcommand(1);

  IoOptions stars_io, berry_io, sweep_io;
  majorana::CmdOptions stars_opt, berry_opt, sweep_opt;
  majorana::SelfcheckOptions verify_opt;

  auto* stars = app.add_subcommand("stars", "Extract the Majorana stars of a state");
  add_io(stars, stars_io, stars_opt, false);

  auto* berry = app.add_subcommand("berry", "Decompose the Berry phase of a closed path");
  add_io(berry, berry_io, berry_opt);

  auto* sweep = app.add_subcommand("sweep", "Emit a parameter-sweep table (CSV)");
  add_io(sweep, sweep_io, sweep_opt);

  auto* verify = app.add_subcommand("verify", "Run the built-in verification suite");
  verify->add_option("--tolerance-scale", verify_opt.tolerance_scale,
                     "Scale every check tolerance (test hook)");
  verify->add_option("--only", verify_opt.only, "Run only checks whose name contains this text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (stars->parsed())
    return with_streams(stars_io, [&](std::istream& in, std::ostream& out) {
      return majorana::cmd_stars(in, out, std::cerr, stars_opt);
    });
  if (berry->parsed())
    return with_streams(berry_io, [&](std::istream& in, std::ostream& out) {
      return majorana::cmd_berry(in, out, std::cerr, berry_opt);
    });
  if (sweep->parsed())
    return with_streams(sweep_io, [&](std::istream& in, std::ostream& out) {
      return majorana::cmd_sweep(in, out, std::cerr, sweep_opt);
    });
  return majorana::cmd_verify(std::cout, std::cerr, verify_opt);
}
