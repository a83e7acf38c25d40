#pragma once

#include <string>
#include <vector>

namespace majorana {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelfcheckOptions {
  // Multiplies every numeric tolerance; a tiny scale forces failures, which
  // is how the harness itself is exercised.
  double tolerance_scale = 1.0;
  // When nonempty, run only the checks whose name contains this substring.
  std::string only;
};

// The full verification suite: formula-level checks of the phase
// decomposition, the norm expansions, the stellar roundtrip and the
// entanglement relations, each against its independent reference.
std::vector<CheckResult> run_selfchecks(const SelfcheckOptions& opt = {});

}  // namespace majorana
