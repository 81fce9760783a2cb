#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "dimerlab/rng.hpp"
#include "dimerlab/transfer_operator.hpp"

using namespace dimerlab;
using cd = std::complex<double>;

namespace {

GraphPtr random_torus(int n, int sx, int sy, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> c(4 * n * sy);
  for (double& x : c) x = 0.1 + rng.uniform();
  return build_square_torus(n, sx, sy, &c);
}

}  // namespace

TEST(Cycles, LatticeRows) {
  auto g = build_square_torus(8, 0, 8);
  const CyclePair cp = choose_cycles(*g);
  const auto v1 = cp.vertices1(*g), v2 = cp.vertices2(*g);
  ASSERT_EQ(v1.size(), 8u);
  ASSERT_EQ(v2.size(), 8u);
  for (int v : v1) EXPECT_EQ(v / 8, 0);
  for (int v : v2) EXPECT_EQ(v / 8, 4);

  auto small = build_square_torus(2, 0, 2);
  const CyclePair c2 = choose_cycles(*small);
  const auto w1 = c2.vertices1(*small);
  std::set<int> all(w1.begin(), w1.end());
  for (int v : c2.vertices2(*small)) EXPECT_TRUE(all.insert(v).second);
}

TEST(Cycles, ShearedRowsStayInClassA) {
  auto g = build_square_torus(8, 1, 8);
  const CyclePair cp = choose_cycles(*g);
  for (const auto* c : {&cp.gamma1, &cp.gamma2}) {
    // Recount crossings by hand: each east dart leaving column n-1 crosses once.
    int wraps = 0;
    for (int d : *c) wraps += (g->dart(d).tail % 8 == 7 && d % 4 == 0);
    EXPECT_EQ(wraps, 1);
    const HomologyClass h = g->walk_class(*c);
    EXPECT_TRUE(h == kClassA || h == -kClassA);
  }
}

TEST(Cycles, LoadedGraphUsesTheStripSearch) {
  auto g = parse_graph(format_graph(*random_torus(6, 2, 6, 1)));
  ASSERT_FALSE(g->lattice());
  const CyclePair cp = choose_cycles(*g);
  std::set<int> all;
  for (int v : cp.vertices1(*g)) all.insert(v);
  for (int v : cp.vertices2(*g)) EXPECT_FALSE(all.count(v));
  EXPECT_TRUE(is_simple_cycle(*g, cp.gamma1));
  EXPECT_TRUE(is_simple_cycle(*g, cp.gamma2));
  EXPECT_LT(verify_fred(g, Character(0.3, 0.7), Character(0.6, 0.7), cp), 1e-8);
}

TEST(Transition, UDependenceOnlyAtBCrossings) {
  auto g = random_torus(4, 1, 4, 2);
  const auto P = transition_matrix(*g, Character(0.2, 0.7));
  const auto P2 = transition_matrix(*g, Character(0.45, 0.7));
  std::set<std::pair<int, int>> b_entries;
  for (const Dart& d : g->darts())
    if (d.crossing.r != 0) b_entries.insert({d.tail, d.head});
  ASSERT_FALSE(b_entries.empty());
  for (int x = 0; x < P.rows(); ++x)
    for (int y = 0; y < P.cols(); ++y) {
      if (b_entries.count({x, y}))
        EXPECT_GT(std::abs(P(x, y) - P2(x, y)), 1e-3);
      else
        EXPECT_EQ(P(x, y), P2(x, y));
      EXPECT_NEAR(std::abs(P(x, y)), std::abs(P2(x, y)), 1e-15);
    }
}

TEST(Poisson, TrivialCharacterIsStochastic) {
  auto g = random_torus(6, 0, 6, 3);
  const auto tm = poisson_matrices(*g, Character(0, 0), choose_cycles(*g));
  for (const auto* m : {&tm.Q, &tm.R, &tm.S})
    for (int i = 0; i < m->rows(); ++i) EXPECT_NEAR(std::abs(m->row(i).sum() - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(op_norm_inf(tm), 1.0, 1e-12);
  const LogDet d = fredholm_det(tm);
  EXPECT_TRUE(d.zero || std::exp(d.log_modulus) < 1e-10);
}

TEST(Poisson, RowSumsOfModuliAtMostOne) {
  SplitMix64 rng(4);
  auto g = random_torus(6, 1, 6, 5);
  const CyclePair cp = choose_cycles(*g);
  for (int t = 0; t < 10; ++t) {
    const auto tm = poisson_matrices(*g, Character(rng.uniform(), rng.uniform()), cp);
    for (const auto* m : {&tm.Q, &tm.R, &tm.S})
      for (int i = 0; i < m->rows(); ++i) EXPECT_LE(m->row(i).cwiseAbs().sum(), 1.0 + 1e-12);
    const LogDet d = fredholm_det(tm);
    EXPECT_LE(d.log_modulus, cp.gamma1.size() * std::log(2.0));
  }
}

TEST(Fred, ResidualOnRandomAdmissiblePairs) {
  SplitMix64 rng(6);
  EXPECT_LT(verify_fred(build_square_torus(8, 0, 8), Character(0.3, 0.7), Character(0.6, 0.7)), 1e-8);
  for (int n : {4, 8}) {
    auto g = build_square_torus(n, 0, n);
    auto h = random_torus(n, 1, n, 7 + n);
    for (int t = 0; t < 10; ++t) {
      const double v = rng.uniform();
      const Character chi(rng.uniform(), v), chi2(rng.uniform(), v);
      EXPECT_LT(verify_fred(g, chi, chi2), 1e-8);
      EXPECT_LT(verify_fred(h, chi, chi2), 1e-8);
    }
  }
}

TEST(Fred, RejectsInadmissiblePairs) {
  auto g = build_square_torus(4, 0, 4);
  EXPECT_THROW(verify_fred(g, Character(0.3, 0.7), Character(0.3, 0.6)), PreconditionError);
  EXPECT_THROW(verify_fred(g, Character(0, 0), Character(0.3, 0)), PreconditionError);
}

TEST(Contraction, NontrivialBPhase) {
  SplitMix64 rng(8);
  for (int n : {4, 8, 16}) {
    auto g = build_square_torus(n, 0, n);
    const CyclePair cp = choose_cycles(*g);
    for (int t = 0; t < 10; ++t) {
      const Character chi(0.1 + 0.8 * rng.uniform(), rng.uniform());
      EXPECT_LE(op_norm_inf(poisson_matrices(*g, chi, cp)), 1.0 - 1e-3) << n;
    }
  }
}

TEST(Expansion, TraceSeriesWithinItsBound) {
  auto g = build_square_torus(8, 0, 8);
  const auto tm = poisson_matrices(*g, Character(0.5, 0.3), choose_cycles(*g));
  for (int K : {5, 10, 20, 40}) {
    const TraceExpansion e = trace_expansion(tm.S, K);
    EXPECT_LE(std::abs(e.minus_log_det - e.series), e.remainder_bound + 1e-12) << K;
  }
  EXPECT_LT(std::abs(trace_expansion(tm.S, 40).minus_log_det - trace_expansion(tm.S, 40).series), 1e-6);
}

// Absorbing-chain simulation: walk from x in gamma1 until gamma2, then on to
// gamma1, multiplying the phases of crossed cuts.
TEST(Poisson, MonteCarloOracleOnFourByFour) {
  auto g = build_square_torus(4, 0, 4);
  const Character chi(0.3, 0.2);
  const CyclePair cp = choose_cycles(*g);
  const auto tm = poisson_matrices(*g, chi, cp);
  const auto v1 = cp.vertices1(*g), v2 = cp.vertices2(*g);
  std::vector<int> slot1(16, -1);
  std::vector<bool> on2(16, false);
  for (std::size_t k = 0; k < v1.size(); ++k) slot1[v1[k]] = int(k);
  for (int v : v2) on2[v] = true;
  SplitMix64 rng(9);
  const int N = 40000;
  for (std::size_t i = 0; i < v1.size(); ++i) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(v1.size());
    for (int t = 0; t < N; ++t) {
      int x = v1[i];
      cd phase = 1.0;
      bool seen2 = false;
      while (true) {
        const int d = g->out_darts(x)[rng.next() % 4];
        phase *= chi(g->dart(d).crossing);
        x = g->dart(d).head;
        if (!seen2 && on2[x]) seen2 = true;
        else if (seen2 && slot1[x] >= 0) break;
      }
      acc(slot1[x]) += phase;
    }
    acc /= double(N);
    for (std::size_t j = 0; j < v1.size(); ++j)
      EXPECT_NEAR(std::abs(acc(j) - tm.S(i, j)), 0.0, 4.0 / std::sqrt(double(N))) << i << ' ' << j;
  }
}

TEST(Csv, Header) {
  std::ostringstream os;
  write_transfer_csv(os, {{Character(0.5, 0.5), 0.3, cd(1.0, 2.0), 1e-14}});
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "u,v,norm_inf,logdet_re,logdet_im,fred_residual");
}
