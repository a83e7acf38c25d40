// Acceptance suite: runs every verification check once, prints one line per
// check and exits nonzero if any fails. ./acceptance [--tolerance-scale X]
// [--only NAME] shares the flags of `majorana verify`.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "majorana/selfcheck.hpp"

int main(int argc, char** argv) {
  majorana::SelfcheckOptions opt;
  for (int k = 1; k < argc; ++k) {
    if (std::strcmp(argv[k], "--tolerance-scale") == 0 && k + 1 < argc) {
      opt.tolerance_scale = std::atof(argv[++k]);
    } else if (std::strcmp(argv[k], "--only") == 0 && k + 1 < argc) {
      opt.only = argv[++k];
    } else {
      std::fprintf(stderr, "usage: %s [--tolerance-scale X] [--only NAME]\n", argv[0]);
      return 2;
    }
  }

  const auto results = majorana::run_selfchecks(opt);
  bool all_pass = !results.empty();
  for (size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    all_pass = all_pass && r.pass;
    std::printf("[%s] %zu. %-32s (%.2f s)  %s\n", r.pass ? "PASS" : "FAIL", k + 1, r.name.c_str(),
                r.seconds, r.detail.c_str());
  }
  std::printf("%s\n", all_pass ? "all checks passed" : "CHECKS FAILED");
  return all_pass ? 0 : 1;
}
