#pragma once

#include <string>
#include <vector>

namespace dimerlab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::vector<std::string> only;  // empty: all checks
  int n = 0;                      // 0: the builtin sizes
  bool flip_omega_sign = false;   // mutation: reverse the direct-frame convention
  unsigned long long seed = 20240607ULL;
};

// Names, in run order.
const std::vector<std::string>& check_names();

// The identity suite behind `dimerlab verify`.
std::vector<CheckResult> run_checks(const VerifyOptions& opt);

}  // namespace dimerlab
