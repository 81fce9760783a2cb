#include "dimerlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "dimerlab/dimer_height.hpp"
#include "dimerlab/distribution.hpp"
#include "dimerlab/rng.hpp"
#include "dimerlab/special_functions.hpp"
#include "dimerlab/transfer_operator.hpp"

namespace dimerlab {

namespace {

using cd = std::complex<double>;

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

struct Builtin {
  GraphPtr g22 = build_square_torus(2, 0, 2);
  GraphPtr g32 = build_square_torus(3, 0, 2);
};

GraphPtr random_conductance_torus(int n, int sy, SplitMix64& rng) {
  std::vector<double> c(4 * n * sy);
  for (double& x : c) x = 0.1 + rng.uniform();
  return build_square_torus(n, 0, sy, &c);
}

std::vector<int> sizes_or(int n, std::vector<int> fallback) { return n > 0 ? std::vector<int>{n} : fallback; }

CheckResult forman_check(const VerifyOptions& o) {
  SplitMix64 rng(o.seed);
  Builtin b;
  double worst = 0.0;
  for (const GraphPtr& g : {b.g22, b.g32, random_conductance_torus(2, 2, rng)}) {
    for (int k = 0; k < 20; ++k) {
      const Character chi(rng.uniform(), rng.uniform());
      const cd det = determinant(assemble(g, chi)).value();
      worst = std::max(worst, std::abs(forman_sum(g, chi) - det) / std::abs(det));
    }
  }
  return {"forman", worst <= 1e-10, "max rel err " + sci(worst)};
}

CheckResult temperley_check(const VerifyOptions&) {
  Builtin b;
  std::ostringstream detail;
  bool ok = true;
  for (const GraphPtr& g : {b.g22, b.g32}) {
    const TemperleyanGraph G(g);
    const auto ms = enumerate_matchings(G);
    long pairs = 0;
    double pair_weight = 0.0;
    for (const Crsf& f : enumerate_crsfs(g)) {
      pairs += 1L << f.cycle_count();
      pair_weight += f.weight() * double(1L << f.cycle_count());
    }
    double match_weight = 0.0;
    for (const Matching& m : ms) {
      match_weight += m.weight;
      const CrsfPair p = temperley_back(G, m);
      ok &= p.primal.weight() * p.dual.weight() == m.weight;
      ok &= temperley_forward(G, p.primal, p.dual) == m;
    }
    ok &= long(ms.size()) == pairs && match_weight == pair_weight;
    detail << g->vertex_count() << " vertices: " << ms.size() << " matchings, " << pairs << " pairs; ";
  }
  return {"temperley", ok, detail.str()};
}

// Residual of the binomial identity between the matching class histogram and
// the CRSF partition functions refined by cycle orientation.
double binomial_residual(const GraphPtr& g) {
  const TemperleyanGraph G(g);
  std::map<HomologyClass, double> Zm;
  for (const Matching& m : enumerate_matchings(G)) Zm[class_of(G, m)] += m.weight;

  auto canonical = [](HomologyClass h) { return (h.r > 0 || (h.r == 0 && h.s > 0)) ? h : -h; };
  // Z[gamma][(k+, k-)] for canonical primitive gamma.
  std::map<HomologyClass, std::map<std::pair<int, int>, double>> Z;
  for (const Crsf& f : enumerate_crsfs(g)) {
    const HomologyClass c = canonical(f.cycle_classes.front());
    int kp = 0, km = 0;
    for (auto h : f.cycle_classes) (h == c ? kp : km)++;
    Z[c][{kp, km}] += f.weight();
  }
  auto binom = [](int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double x = 1.0;
    for (int i = 1; i <= k; ++i) x = x * (n - k + i) / i;
    return x;
  };
  double worst = 0.0;
  for (const auto& [xi, zm] : Zm) {
    double predicted = 0.0;
    if (xi.is_zero()) {
      for (const auto& [c, table] : Z)
        for (const auto& [k, z] : table) predicted += z * binom(k.first + k.second, k.second);
    } else {
      const int k = std::gcd(std::abs(xi.r), std::abs(xi.s));
      const HomologyClass gamma{xi.r / k, xi.s / k};
      const HomologyClass c = canonical(gamma);
      for (const auto& [kk, z] : Z[c]) {
        const int kp = gamma == c ? kk.first : kk.second;
        const int km = gamma == c ? kk.second : kk.first;
        predicted += z * binom(kp + km, k + km);
      }
    }
    worst = std::max(worst, std::abs(predicted - zm) / zm);
  }
  return worst;
}

CheckResult binom_check(const VerifyOptions&) {
  Builtin b;
  const double r = std::max(binomial_residual(b.g22), binomial_residual(b.g32));
  return {"binom", r <= 1e-12, "max rel err " + sci(r)};
}

CheckResult periods_check(const VerifyOptions& o) {
  Builtin b;
  long bad = 0, total = 0;
  for (const GraphPtr& g : {b.g22, b.g32}) {
    const TemperleyanGraph G(g);
    for (const Matching& m : enumerate_matchings(G)) {
      ++total;
      if (class_of_pair(temperley_back(G, m)) != periods(G, m, o.flip_omega_sign ? -1 : 1)) ++bad;
    }
  }
  return {"periods", bad == 0, std::to_string(bad) + " of " + std::to_string(total) + " matchings disagree"};
}

CheckResult law_check(const VerifyOptions&) {
  Builtin b;
  const HeightLaw exact = height_law_exact(b.g22, 7);
  const HeightLaw enumerated = enumeration_law(b.g22);
  double worst = 0.0;
  for (const auto& [h, p] : enumerated.p) worst = std::max(worst, std::abs(p - exact(h)));
  for (const auto& [h, p] : exact.p) worst = std::max(worst, std::abs(p - enumerated(h)));
  return {"law", worst <= 1e-10, "max class err " + sci(worst)};
}

CheckResult spectral_check(const VerifyOptions& o) {
  SplitMix64 rng(o.seed + 1);
  double worst = 0.0;
  for (int n : sizes_or(o.n, {2, 4, 8})) {
    const GraphPtr g = build_square_torus(n, 0, n);
    for (int k = 0; k < 20; ++k) {
      const Character chi(rng.uniform(), rng.uniform());
      const LogDet dense = determinant(assemble(g, chi));
      const LogDet spec = det_spectral(n, 0, n, chi);
      worst = std::max(worst, std::abs(std::exp(log_ratio(dense, spec)) - 1.0));
    }
  }
  return {"spectral", worst <= 1e-10, "max rel err " + sci(worst)};
}

CheckResult fred_check(const VerifyOptions& o) {
  SplitMix64 rng(o.seed + 2);
  double worst = 0.0;
  for (int n : sizes_or(o.n, {4, 8})) {
    const GraphPtr g = build_square_torus(n, 0, n);
    const CyclePair cp = choose_cycles(*g);
    for (int k = 0; k < 10; ++k) {
      const double v = rng.uniform();
      worst = std::max(worst, verify_fred(g, {rng.uniform(), v}, {rng.uniform(), v}, cp));
    }
  }
  return {"fred", worst <= 1e-8, "max residual " + sci(worst)};
}

CheckResult contraction_check(const VerifyOptions& o) {
  SplitMix64 rng(o.seed + 3);
  double worst = 0.0;
  for (int n : sizes_or(o.n, {4, 8, 16})) {
    const GraphPtr g = build_square_torus(n, 0, n);
    const CyclePair cp = choose_cycles(*g);
    for (int k = 0; k < 10; ++k) {
      const Character chi(0.1 + 0.8 * rng.uniform(), rng.uniform());
      worst = std::max(worst, op_norm_inf(poisson_matrices(*g, chi, cp)));
    }
  }
  return {"contraction", worst <= 1.0 - 1e-3, "max norm " + std::to_string(worst)};
}

CheckResult theta_check(const VerifyOptions& o) {
  SplitMix64 rng(o.seed + 4);
  double worst = 0.0, odd = 0.0;
  for (int k = 0; k < 100; ++k) {
    const cd tau(rng.uniform() - 0.5, 0.5 + 1.5 * rng.uniform());
    const cd w = (rng.uniform() - 0.5) + (rng.uniform() - 0.5) * tau;
    worst = std::max(worst, std::abs(theta_odd(w, tau) - theta_odd_product(w, tau)));
    odd = std::max(odd, std::abs(theta_odd(-w, tau) + theta_odd(w, tau)));
  }
  return {"theta", worst <= 1e-12 && odd <= 1e-12, "sum vs product " + sci(worst) + ", oddness " + sci(odd)};
}

CheckResult eta_check(const VerifyOptions&) {
  const double golden = std::tgamma(0.25) / (2.0 * std::pow(std::numbers::pi, 0.75));
  const double err = std::abs(dedekind_eta(cd(0, 1)) - golden);
  const cd tau(0.3, 0.8);
  const double shift = std::abs(dedekind_eta(tau + 1.0) - std::polar(1.0, std::numbers::pi / 12) * dedekind_eta(tau));
  return {"eta", err <= 1e-14 && shift <= 1e-14, "eta(i) err " + sci(err) + ", T-shift err " + sci(shift)};
}

CheckResult torsion_check(const VerifyOptions& o) {
  SplitMix64 rng(o.seed + 5);
  const cd tau(0, 1);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const Character a(rng.uniform(), rng.uniform()), b(rng.uniform(), rng.uniform());
    const double hk = torsion_heat_kernel_log_ratio(a, b, tau);
    worst = std::max(worst, std::abs(hk - 2.0 * std::log(torsion_T(b, tau) / torsion_T(a, tau))));
  }
  return {"torsion", worst <= 1e-6, "heat kernel vs 2 log T ratio " + sci(worst)};
}

CheckResult poisson_check(const VerifyOptions& o) {
  SplitMix64 rng(o.seed + 6);
  double worst = poisson_identity_residual({0.3, 0.7}, cd(0, 1));
  double swapped = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Character chi(rng.uniform(), rng.uniform());
    const cd tau(rng.uniform() - 0.5, 0.5 + 1.5 * rng.uniform());
    worst = std::max(worst, poisson_identity_residual(chi, tau));
    swapped = std::max(swapped, poisson_identity_residual_swapped(chi, tau));
  }
  return {"poisson", worst <= 1e-10, "residual " + sci(worst) + " (theta(v - u tau) form: " + sci(swapped) + ")"};
}

using CheckFn = std::function<CheckResult(const VerifyOptions&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r = {
      {"forman", forman_check},   {"temperley", temperley_check}, {"binom", binom_check},
      {"periods", periods_check}, {"law", law_check},             {"spectral", spectral_check},
      {"fred", fred_check},       {"contraction", contraction_check}, {"theta", theta_check},
      {"eta", eta_check},         {"torsion", torsion_check},     {"poisson", poisson_check},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<CheckResult> run_checks(const VerifyOptions& opt) {
  for (const auto& name : opt.only)
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
      throw PreconditionError("unknown check '" + name + "'");
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : registry()) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), name) == opt.only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = fn(opt);
    } catch (const std::exception& e) {
      r = {name, false, std::string("error: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(r);
  }
  return out;
}

}  // namespace dimerlab
