#include "dimerlab/cli.hpp"

#include <chrono>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "dimerlab/distribution.hpp"
#include "dimerlab/monte_carlo.hpp"
#include "dimerlab/parallel.hpp"
#include "dimerlab/serialization.hpp"

namespace dimerlab::cli {

namespace {

double strict_double(const std::string& s, const std::string& what) {
  double x = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, x);
  if (s.empty() || ec != std::errc() || p != end) throw PreconditionError("cannot parse " + what + " '" + s + "'");
  return x;
}

int strict_int(const std::string& s, const std::string& what) {
  int x = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, x);
  if (s.empty() || ec != std::errc() || p != end) throw PreconditionError("cannot parse " + what + " '" + s + "'");
  return x;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// Writes to stdout for "-", otherwise to the resolved file.
void emit(const std::string& path, const std::string& out_dir, const std::string& text, std::ostream& out) {
  const std::string target = resolve_output(path, out_dir);
  if (target == "-") {
    out << text;
    return;
  }
  const auto parent = std::filesystem::path(target).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(target, std::ios::binary);
  if (!f) throw Error("cannot write " + target);
  f << text;
}

GraphPtr build_graph(const GraphSpec& spec) {
  if (!spec.graph.empty()) return load_graph(spec.graph);
  const auto [sx, sy] = spec.shift.empty() ? std::pair<int, int>{0, spec.n} : parse_shift(spec.shift);
  return build_square_torus(spec.n, sx, sy);
}

}  // namespace

std::complex<double> parse_tau(const std::string& raw) {
  const std::string text = trim(raw);
  double re = 0.0, im = 0.0;
  if (const auto comma = text.find(','); comma != std::string::npos) {
    re = strict_double(trim(text.substr(0, comma)), "tau");
    im = strict_double(trim(text.substr(comma + 1)), "tau");
  } else {
    if (text.empty() || text.back() != 'i') throw PreconditionError("cannot parse tau '" + raw + "'");
    const std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        split = k;
        break;
      }
    std::string imag = body;
    if (split != std::string::npos) {
      re = strict_double(body.substr(0, split), "tau");
      imag = body.substr(split);
    }
    if (imag.empty() || imag == "+") im = 1.0;
    else if (imag == "-") im = -1.0;
    else im = strict_double(imag.front() == '+' ? imag.substr(1) : imag, "tau");
  }
  if (!(im > 0.0)) throw PreconditionError("tau must have a positive imaginary part");
  return {re, im};
}

std::pair<int, int> parse_shift(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw PreconditionError("shift must be 'sx,sy'");
  return {strict_int(trim(text.substr(0, comma)), "shift"), strict_int(trim(text.substr(comma + 1)), "shift")};
}

std::string resolve_output(const std::string& path, const std::string& out_dir) {
  if (path == "-" || out_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(out_dir) / path).string();
}

int cmd_verify(const VerifyOptions& config, std::ostream& out) {
  const auto results = run_checks(config);
  bool ok = true;
  out << std::left << std::setw(13) << "check" << std::setw(6) << "ok" << std::setw(10) << "seconds" << "detail\n";
  for (const auto& r : results) {
    ok &= r.pass;
    out << std::setw(13) << r.name << std::setw(6) << (r.pass ? "pass" : "FAIL") << std::setw(10) << std::fixed
        << std::setprecision(3) << r.seconds << std::defaultfloat << r.detail << '\n';
  }
  for (const auto& r : results)
    if (!r.pass) out << "failed: " << r.name << '\n';
  return ok ? kOk : kVerifyFailed;
}

int cmd_law(const LawConfig& config, std::ostream& out) {
  const GraphPtr g = build_graph(config.spec);
  const auto start = std::chrono::steady_clock::now();
  const HeightLaw law = height_law_exact(g, config.M, config.max_aliasing);
  emit(config.out, config.out_dir, law_to_json(law), out);
  SweepRow row;
  row.n = g->lattice() ? g->lattice()->n : 0;
  row.tau = g->modulus().tau();
  row.M = config.M;
  row.tv = tv_distance(law, from_discrete_gaussian(discrete_gaussian(row.tau)));
  row.aliasing = law.aliasing;
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (config.out != "-") write_sweep_csv(out, {row});
  return kOk;
}

int cmd_converge(const ConvergeConfig& config, std::ostream& out) {
  if (config.sizes.empty()) throw PreconditionError("no sizes given");
  for (std::size_t i = 1; i < config.sizes.size(); ++i)
    if (config.sizes[i] <= config.sizes[i - 1]) throw PreconditionError("sizes must be strictly ascending");
  const auto rows = convergence_sweep(config.sizes, parse_tau(config.tau), config.M);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  emit(config.out, config.out_dir, csv.str(), out);
  if (config.out != "-") out << csv.str();
  if (!tv_nonincreasing(rows, config.slack)) {
    out << "TV distance increased beyond slack " << config.slack << '\n';
    return kConvergence;
  }
  return kOk;
}

int cmd_sample(const SampleConfig& config, std::ostream& out) {
  if (config.samples < 100) throw PreconditionError("at least 100 samples are required");
  const GraphPtr g = build_graph(config.spec);
  const EmpiricalLaw mc = mc_height_law(g, config.samples, config.seed, config.threads);
  emit(config.out, config.out_dir, law_to_json(mc), out);
  const bool feasible = (g->lattice() && g->lattice()->uniform) || g->vertex_count() <= 400;
  if (!feasible) {
    if (config.out != "-") out << "exact law not computed for this graph size\n";
    return kOk;
  }
  const HeightLaw exact = height_law_exact(g, config.M);
  double worst = -1.0;
  HomologyClass worst_class;
  auto check = [&](HomologyClass h) {
    const auto it = mc.std_error.find(h);
    const double sigma = it == mc.std_error.end() ? 0.0 : it->second;
    const double excess = std::abs(mc.law(h) - exact(h)) - (3.0 * sigma + 0.005);
    if (excess > worst) {
      worst = excess;
      worst_class = h;
    }
  };
  for (const auto& [h, p] : exact.p) check(h);
  for (const auto& [h, p] : mc.law.p) check(h);
  const bool ok = worst <= 0.0;
  if (config.out != "-") {
    out << "samples " << mc.samples << ", proposals " << mc.proposals << ", tv to exact "
        << tv_distance(mc.law, exact) << '\n';
  }
  if (!ok) {
    out << "class " << worst_class << " deviates from the exact law beyond 3 sigma + 0.005\n";
    return kSamplingDeviation;
  }
  return kOk;
}

int cmd_generate(const GenerateConfig& config, std::ostream& out) {
  const auto [sx, sy] = config.shift.empty() ? std::pair<int, int>{0, config.n} : parse_shift(config.shift);
  const GraphPtr g = build_square_torus(config.n, sx, sy);
  emit(config.out, config.out_dir, format_graph(*g), out);
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dimer height laws on toroidal Temperleyan graphs"};
  app.set_config("--config", "", "flat key=value file; flags override it");
  app.require_subcommand(1);
  int threads = 0;
  std::string out_dir;
  app.add_option("--threads", threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--out-dir", out_dir, "directory for relative output paths (default: $DIMERLAB_OUT_DIR)");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "run the identity suite");
  v->add_option("--only", verify.only, "run only these checks")->delimiter(',');
  v->add_option("--n", verify.n, "lattice size for the size-dependent checks")->check(CLI::PositiveNumber);
  v->add_option("--seed", verify.seed, "seed for the random characters");
  v->add_flag("--flip-omega-sign", verify.flip_omega_sign)->group("");

  LawConfig law;
  auto* l = app.add_subcommand("law", "exact law of the height-change class");
  l->add_option("--graph", law.spec.graph, "graph file (.tg)");
  l->add_option("--n", law.spec.n, "square torus size")->check(CLI::Range(2, 1 << 20));
  std::vector<int> law_shift, sample_shift, gen_shift;
  l->add_option("--shift", law_shift, "second period sx,sy (default 0,n)")->delimiter(',')->expected(2);
  l->add_option("--M", law.M, "character grid size (odd, >= 5)");
  l->add_option("--max-aliasing", law.max_aliasing, "aliasing tolerance")->check(CLI::PositiveNumber);
  l->add_option("--out", law.out, "law JSON ('-' for stdout)");

  ConvergeConfig conv;
  auto* c = app.add_subcommand("converge", "TV distance to the discrete Gaussian along a size sweep");
  c->add_option("--sizes", conv.sizes, "ascending lattice sizes")->delimiter(',');
  c->add_option("--tau", conv.tau, "target modulus, e.g. i or 0.125+1i");
  c->add_option("--M", conv.M, "character grid size");
  c->add_option("--slack", conv.slack, "monotonicity slack")->check(CLI::PositiveNumber);
  c->add_option("--out", conv.out, "sweep CSV ('-' for stdout)");

  SampleConfig sample;
  auto* s = app.add_subcommand("sample", "Monte Carlo law via Wilson's algorithm and Temperley's bijection");
  s->add_option("--graph", sample.spec.graph, "graph file (.tg)");
  s->add_option("--n", sample.spec.n, "square torus size")->check(CLI::Range(2, 1 << 20));
  s->add_option("--shift", sample_shift, "second period sx,sy (default 0,n)")->delimiter(',')->expected(2);
  s->add_option("--samples", sample.samples, "number of samples (>= 100)");
  s->add_option("--seed", sample.seed, "PRNG seed")->required();
  s->add_option("--M", sample.M, "grid size for the exact comparison");
  s->add_option("--out", sample.out, "empirical law JSON ('-' for stdout)");

  GenerateConfig gen;
  auto* gcmd = app.add_subcommand("generate", "write a square torus in the graph text format");
  gcmd->add_option("--n", gen.n, "size")->check(CLI::Range(2, 1 << 20));
  gcmd->add_option("--shift", gen_shift, "second period sx,sy (default 0,n)")->delimiter(',')->expected(2);
  gcmd->add_option("--out", gen.out, "output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  // Config files hand "1,3" over as a two-element array, so shifts are collected as ints.
  auto joined = [](const std::vector<int>& v) {
    return v.empty() ? std::string() : std::to_string(v[0]) + "," + std::to_string(v[1]);
  };
  law.spec.shift = joined(law_shift);
  sample.spec.shift = joined(sample_shift);
  gen.shift = joined(gen_shift);

  if (out_dir.empty())
    if (const char* env = std::getenv("DIMERLAB_OUT_DIR")) out_dir = env;
  set_default_threads(threads);
  law.out_dir = conv.out_dir = sample.out_dir = gen.out_dir = out_dir;
  sample.threads = threads;

  try {
    if (*v) return cmd_verify(verify, out);
    if (*l) return cmd_law(law, out);
    if (*c) return cmd_converge(conv, out);
    if (*s) return cmd_sample(sample, out);
    if (*gcmd) return cmd_generate(gen, out);
  } catch (const AliasingError& e) {
    err << "error: " << e.what() << '\n';
    return kAliasing;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}

}  // namespace dimerlab::cli
