#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dimerlab/verify.hpp"

namespace dimerlab::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kAliasing = 2,
  kConvergence = 3,
  kSamplingDeviation = 4,
  kUsage = 64,
};

// "i", "2i", "0.5+1.2i", "0.5-1i" or "re,im".  Throws PreconditionError.
std::complex<double> parse_tau(const std::string& text);
// "sx,sy".
std::pair<int, int> parse_shift(const std::string& text);

// Output path resolution: "-" is stdout; relative paths go under out_dir.
std::string resolve_output(const std::string& path, const std::string& out_dir);

struct GraphSpec {
  std::string graph;  // .tg file; overrides the builtin lattice
  int n = 2;
  std::string shift;  // default (0, n)
};

struct LawConfig {
  GraphSpec spec;
  int M = 9;
  double max_aliasing = 1e-6;
  std::string out = "law.json";
  std::string out_dir;
};

struct ConvergeConfig {
  std::vector<int> sizes{8, 16, 32, 64};
  std::string tau = "i";
  int M = 9;
  double slack = 1e-3;
  std::string out = "sweep.csv";
  std::string out_dir;
};

struct SampleConfig {
  GraphSpec spec;
  long samples = 100000;
  unsigned long long seed = 0;
  int M = 11;
  std::string out = "sample.json";
  std::string out_dir;
  int threads = 0;
};

struct GenerateConfig {
  int n = 2;
  std::string shift;
  std::string out = "-";
  std::string out_dir;
};

int cmd_verify(const VerifyOptions& config, std::ostream& out);
int cmd_law(const LawConfig& config, std::ostream& out);
int cmd_converge(const ConvergeConfig& config, std::ostream& out);
int cmd_sample(const SampleConfig& config, std::ostream& out);
int cmd_generate(const GenerateConfig& config, std::ostream& out);

// Full command line: parses argv, dispatches, maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dimerlab::cli
