#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dimerlab/dimer_height.hpp"
#include "dimerlab/monte_carlo.hpp"
#include "dimerlab/rng.hpp"
#include "dimerlab/serialization.hpp"

using namespace dimerlab;

namespace {

// Lattice step of dart 4v + k on a square torus, in mesh units.
std::pair<int, int> step(int d) {
  static const int dx[] = {1, 0, -1, 0};
  static const int dy[] = {0, 1, 0, -1};
  return {dx[d % 4], dy[d % 4]};
}

// Class of a closed walk from its unwrapped displacement: on the n-torus with
// shift (sx, sy), going up sy rows and sx columns across is one period tau.
HomologyClass displacement_class(const std::vector<int>& walk, int n, int sx, int sy) {
  int X = 0, Y = 0;
  for (int d : walk) {
    X += step(d).first;
    Y += step(d).second;
  }
  const int r = Y / sy;
  return {r, (X - r * sx) / n};
}

// Cycles of v -> head(field[v]) found without the library.
std::vector<std::vector<int>> brute_cycles(const TorusGraph& g, const std::vector<int>& field) {
  std::vector<std::vector<int>> out;
  std::set<int> seen;
  for (int s = 0; s < g.vertex_count(); ++s) {
    int x = s;
    for (int k = 0; k < g.vertex_count(); ++k) x = g.dart(field[x]).head;
    // x is now on a cycle.
    int lo = x;
    for (int y = g.dart(field[x]).head; y != x; y = g.dart(field[y]).head) lo = std::min(lo, y);
    if (!seen.insert(lo).second) continue;
    std::vector<int> cyc;
    int y = lo;
    do {
      cyc.push_back(field[y]);
      y = g.dart(field[y]).head;
    } while (y != lo);
    out.push_back(cyc);
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Enumerate, CountMatchesBruteForceOverAllFields) {
  auto g = build_square_torus(2, 0, 2);
  EXPECT_EQ(vector_field_count(*g), 256.0);
  int count = 0;
  for (int code = 0; code < 256; ++code) {
    std::vector<int> field(4);
    for (int v = 0; v < 4; ++v) field[v] = 4 * v + ((code >> (2 * v)) & 3);
    bool ok = true;
    for (const auto& c : brute_cycles(*g, field)) ok = ok && !displacement_class(c, 2, 0, 2).is_zero();
    count += ok;
  }
  EXPECT_EQ(count, 128);
  EXPECT_EQ(int(enumerate_crsfs(g).size()), count);
}

TEST(Enumerate, ShearedTorusAgreesWithDisplacementClasses) {
  auto g = build_square_torus(3, 1, 2);
  int count = 0;
  for (int code = 0; code < (1 << 12); ++code) {
    std::vector<int> field(6);
    for (int v = 0; v < 6; ++v) field[v] = 4 * v + ((code >> (2 * v)) & 3);
    bool ok = true;
    for (const auto& c : brute_cycles(*g, field)) ok = ok && !displacement_class(c, 3, 1, 2).is_zero();
    count += ok;
  }
  EXPECT_EQ(int(enumerate_crsfs(g).size()), count);
}

TEST(Enumerate, EveryForestIsIncompressibleWithParallelCycles) {
  for (auto g : {build_square_torus(2, 0, 2), build_square_torus(3, 0, 2)}) {
    for (const Crsf& f : enumerate_crsfs(g)) {
      ASSERT_TRUE(is_incompressible(f));
      ASSERT_GT(f.weight(), 0.0);
      for (auto c : f.cycle_classes) {
        const auto c0 = f.cycle_classes[0];
        EXPECT_TRUE(c == c0 || c == -c0);
      }
    }
  }
}

TEST(Enumerate, DeterministicLexicographicOrder) {
  auto g = build_square_torus(2, 0, 2);
  auto a = enumerate_crsfs(g);
  auto b = enumerate_crsfs(g);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].field, b[k].field);
  for (std::size_t k = 1; k < a.size(); ++k) EXPECT_LT(a[k - 1].field, a[k].field);
}

TEST(Enumerate, ReversalNegatesClasses) {
  // On a symmetric graph, reversing every root cycle (keeping the tree darts)
  // is again a CRSF, with negated classes.
  auto g = build_square_torus(2, 0, 2);
  auto all = enumerate_crsfs(g);
  std::map<std::vector<int>, HomologyClass> by_field;
  for (const Crsf& f : all) by_field[f.field] = f.total_class();
  for (const Crsf& f : all) {
    std::vector<int> field = f.field;
    for (const auto& c : f.root_cycles)
      for (int d : c) field[g->dart(g->dart(d).reverse).tail] = g->dart(d).reverse;
    auto it = by_field.find(field);
    ASSERT_NE(it, by_field.end());
    EXPECT_EQ(it->second, -f.total_class());
  }
}

TEST(Enumerate, GuardRejectsLargeGraphs) {
  EXPECT_THROW(enumerate_crsfs(build_square_torus(4, 0, 4)), PreconditionError);
}

TEST(Incompressible, FaceBoundaryCycleIsContractible) {
  auto g = build_square_torus(2, 0, 2);
  std::vector<int> field(4, -1);
  for (int d : g->faces()[0]) field[g->dart(d).tail] = d;
  const Crsf f = make_crsf(g, field);
  EXPECT_EQ(f.cycle_count(), 1);
  EXPECT_FALSE(is_incompressible(f));
}

TEST(Incompressible, HorizontalWrapHasClassA) {
  auto g = build_square_torus(3, 0, 3);
  std::vector<int> field(9);
  for (int v = 0; v < 9; ++v) field[v] = 4 * v;
  const Crsf f = make_crsf(g, field);
  EXPECT_TRUE(is_incompressible(f));
  EXPECT_EQ(f.cycle_count(), 3);
  for (auto c : f.cycle_classes) EXPECT_EQ(c, kClassA);
}

TEST(Incompressible, RandomFieldsAgreeWithDisplacement) {
  SplitMix64 rng(99);
  for (auto [n, sx] : {std::pair{4, 0}, std::pair{5, 2}, std::pair{4, 3}}) {
    auto g = build_square_torus(n, sx, n);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> field(n * n);
      for (int v = 0; v < n * n; ++v) field[v] = 4 * v + int(rng.next() % 4);
      const Crsf f = make_crsf(g, field);
      bool expected = true;
      auto cycles = brute_cycles(*g, field);
      ASSERT_EQ(int(cycles.size()), f.cycle_count());
      for (const auto& c : cycles) expected = expected && !displacement_class(c, n, sx, n).is_zero();
      EXPECT_EQ(is_incompressible(f), expected);
      for (int k = 0; k < f.cycle_count(); ++k)
        EXPECT_EQ(f.cycle_classes[k], displacement_class(f.root_cycles[k], n, sx, n));
    }
  }
}

TEST(Incompressible, FieldMustLeaveItsVertex) {
  auto g = build_square_torus(2, 0, 2);
  EXPECT_THROW(make_crsf(g, {0, 0, 8, 12}), InvariantError);
}

TEST(DualCrsf, OrientationsGiveDistinctDualsWithOneSupport) {
  auto g = build_square_torus(2, 0, 2);
  TemperleyanGraph G(g);
  auto dual = G.dual();
  for (const Crsf& f : enumerate_crsfs(g)) {
    const int k = f.cycle_count();
    std::set<std::vector<int>> fields;
    std::vector<int> support;
    for (int mask = 0; mask < (1 << k); ++mask) {
      std::vector<int> o(k);
      for (int j = 0; j < k; ++j) o[j] = (mask >> j) & 1 ? -1 : 1;
      const Crsf fs = dual_crsf(f, dual, o);
      EXPECT_TRUE(is_incompressible(fs));
      EXPECT_EQ(fs.cycle_count(), k);
      fields.insert(fs.field);
      if (mask == 0) support = fs.support();
      EXPECT_EQ(fs.support(), support);
      // Every primal edge is crossed by exactly one of F, F*.
      std::vector<int> both = f.support();
      both.insert(both.end(), support.begin(), support.end());
      std::sort(both.begin(), both.end());
      EXPECT_EQ(std::adjacent_find(both.begin(), both.end()), both.end());
      EXPECT_EQ(int(both.size()), g->edge_count());
      EXPECT_NO_THROW(temperley_forward(G, f, fs));
    }
    EXPECT_EQ(int(fields.size()), 1 << k);
  }
}

TEST(DualCrsf, DualOfDualRecoversSupport) {
  auto g = build_square_torus(2, 0, 2);
  auto dual = dual_graph(*g);
  auto dd = dual_graph(*dual);
  for (const Crsf& f : enumerate_crsfs(g)) {
    const Crsf fs = dual_crsf(f, dual, std::vector<int>(f.cycle_count(), 1));
    const Crsf back = dual_crsf(fs, dd, std::vector<int>(fs.cycle_count(), 1));
    EXPECT_EQ(back.support(), f.support());
  }
}

TEST(DualCrsf, WrongOrientationCountIsRejected) {
  auto g = build_square_torus(2, 0, 2);
  const Crsf f = enumerate_crsfs(g)[0];
  EXPECT_THROW(dual_crsf(f, dual_graph(*g), {}), PreconditionError);
}

TEST(Serialization, GoldenFirstCrsf) {
  auto g = build_square_torus(2, 0, 2);
  const Crsf f = enumerate_crsfs(g)[0];
  const std::string golden = slurp(std::string(DIMERLAB_TEST_DATA) + "/crsf_2x2_first.json");
  EXPECT_EQ(crsf_from_json(g, golden), f);
  EXPECT_EQ(crsf_from_json(g, crsf_to_json(f)), f);
}

TEST(Wilson, DeterministicGivenSeed) {
  auto g = build_square_torus(4, 1, 4);
  for (std::uint64_t seed : {1ULL, 7ULL, 123456789ULL}) {
    const Crsf a = wilson_sample(g, seed);
    EXPECT_EQ(wilson_sample(g, seed).field, a.field);
    EXPECT_TRUE(is_incompressible(a));
  }
}

// The sampler's law is w(F) / sum w over oriented incompressible CRSFs.
TEST(Wilson, ChiSquareAgainstEnumeration) {
  SplitMix64 rng(5);
  std::vector<double> c(16);
  auto g0 = build_square_torus(2, 0, 2);
  for (int d = 0; d < 16; ++d) {
    const int r = g0->dart(d).reverse;
    if (d < r) c[d] = c[r] = 0.2 + rng.uniform();
  }
  auto g = build_square_torus(2, 0, 2, &c);
  auto all = enumerate_crsfs(g);
  std::map<std::vector<int>, int> index;
  double total = 0.0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    index[all[k].field] = int(k);
    total += all[k].weight();
  }
  const long N = 100000;
  std::vector<long> counts(all.size(), 0);
  for (long i = 0; i < N; ++i) {
    auto it = index.find(wilson_sample(g, 1000 + i).field);
    ASSERT_NE(it, index.end());
    ++counts[it->second];
  }
  double chi2 = 0.0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    const double p = all[k].weight() / total;
    const double e = N * p;
    chi2 += (counts[k] - e) * (counts[k] - e) / e;
    const double sigma = std::sqrt(N * p * (1 - p));
    EXPECT_LE(std::abs(counts[k] - e), 4.5 * sigma) << "forest " << k;
  }
  // Wilson-Hilferty upper 1e-3 point of chi-square with df degrees of freedom.
  const double df = double(all.size() - 1);
  const double z = 3.090232;
  const double crit = df * std::pow(1 - 2 / (9 * df) + z * std::sqrt(2 / (9 * df)), 3);
  EXPECT_LT(chi2, crit);
}

TEST(MonteCarlo, LawAgreesWithExactLaw) {
  auto g = build_square_torus(2, 0, 2);
  const HeightLaw exact = enumeration_law(g);
  const EmpiricalLaw mc = mc_height_law(g, 20000, 31);
  EXPECT_EQ(mc.samples, 20000);
  EXPECT_GE(mc.proposals, mc.samples);
  EXPECT_NEAR(mc.law.total(), 1.0, 1e-12);
  for (const auto& [h, p] : exact.p) EXPECT_LE(std::abs(mc.law(h) - p), 3 * std::sqrt(p * (1 - p) / 20000) + 0.005) << h;
}

TEST(MonteCarlo, ThreadCountDoesNotChangeTheResult) {
  auto g = build_square_torus(3, 1, 3);
  const EmpiricalLaw a = mc_height_law(g, 400, 5, 1);
  const EmpiricalLaw b = mc_height_law(g, 400, 5, 3);
  EXPECT_EQ(a.law.p, b.law.p);
  EXPECT_EQ(a.proposals, b.proposals);
}

TEST(MonteCarlo, StandardErrorScalesLikeOneOverRootN) {
  auto g = build_square_torus(2, 0, 2);
  auto max_se = [](const EmpiricalLaw& l) {
    double m = 0.0;
    for (const auto& [h, s] : l.std_error) m = std::max(m, s);
    return m;
  };
  const double ratio = max_se(mc_height_law(g, 8000, 1)) / max_se(mc_height_law(g, 4000, 2));
  EXPECT_NEAR(ratio, 1.0 / std::sqrt(2.0), 0.03);
}

TEST(MonteCarlo, Preconditions) {
  auto g = build_square_torus(2, 0, 2);
  EXPECT_THROW(mc_height_law(g, 50, 1), PreconditionError);
  std::vector<double> c(16, 0.25);
  c[0] = 0.5;
  EXPECT_THROW(mc_height_law(build_square_torus(2, 0, 2, &c), 1000, 1), PreconditionError);
  EXPECT_EQ(max_root_cycles(*g), 2);
}
