#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "majorana/errors.hpp"
#include "majorana/selfcheck.hpp"

namespace majorana {

struct CmdOptions {
  std::string format = "report";  // report | table
  std::optional<int> samples;
  std::optional<double> tolerance;
  std::optional<uint64_t> seed;
};

// Exit codes shared by all subcommands: 0 success/verified, 1 verification
// residual exceeded, 2 input error, 3 numeric failure.
int cmd_stars(std::istream& in, std::ostream& out, std::ostream& diag, const CmdOptions& opt);
int cmd_berry(std::istream& in, std::ostream& out, std::ostream& diag, const CmdOptions& opt);
int cmd_sweep(std::istream& in, std::ostream& out, std::ostream& diag, const CmdOptions& opt);
int cmd_verify(std::ostream& out, std::ostream& diag, const SelfcheckOptions& opt);

int exit_code_for(errc code);

}  // namespace majorana
