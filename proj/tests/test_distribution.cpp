#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "dimerlab/dimer_height.hpp"
#include "dimerlab/distribution.hpp"
#include "dimerlab/rng.hpp"
#include "dimerlab/serialization.hpp"

using namespace dimerlab;
using cd = std::complex<double>;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

cd det(GraphPtr g, const Character& chi) { return determinant(assemble(g, chi)).value(); }

GraphPtr random_torus(int n, int sx, int sy, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> c(4 * n * sy);
  auto g0 = build_square_torus(n, sx, sy);
  for (int d = 0; d < g0->dart_count(); ++d) {
    const int r = g0->dart(d).reverse;
    if (d < r) c[d] = c[r] = 0.1 + rng.uniform();
  }
  return build_square_torus(n, sx, sy, &c);
}

}  // namespace

TEST(Zhat, TrivialCharacterIsHalfTheThreeTwistedDeterminants) {
  for (auto g : {build_square_torus(2, 0, 2), build_square_torus(5, 2, 3), build_square_torus(16, 0, 16)}) {
    const cd expected = 0.5 * (laplacian_det(g, {0.0, 0.5}).value() + laplacian_det(g, {0.5, 0.0}).value() +
                               laplacian_det(g, {0.5, 0.5}).value());
    EXPECT_LT(std::abs(zhat(g, Character(0, 0)) - expected) / std::abs(expected), 1e-13);
  }
}

TEST(Zhat, EpsilonOrderDoesNotMatter) {
  auto g = random_torus(3, 1, 2, 1);
  const Character chi(0.5, 0.5);
  const int order[4][2] = {{1, 1}, {0, 1}, {1, 0}, {0, 0}};
  cd sum = 0.0;
  for (const auto& e : order) sum += det(g, chi.shifted_by_sign(e[0], e[1]));
  const cd manual = -det(g, chi) + 0.5 * sum;
  EXPECT_LT(std::abs(zhat(g, chi) - manual), 1e-13 * std::abs(manual));
}

// Per forest F with root cycles gamma_i, the combination
// -prod(1 - chi(gamma_i)) + 1/2 sum_eps prod(1 - eps chi(gamma_i)) equals the
// sum over the 2^k dual orientations of chi([m]).
TEST(Zhat, ForestByForestSignIdentity) {
  for (auto g : {build_square_torus(2, 0, 2), build_square_torus(3, 1, 2)}) {
    TemperleyanGraph G(g);
    SplitMix64 rng(2);
    for (int t = 0; t < 5; ++t) {
      const Character chi(rng.uniform(), rng.uniform());
      for (const Crsf& F : enumerate_crsfs(g)) {
        auto prod = [&](const Character& c) {
          cd p = 1.0;
          for (auto h : F.cycle_classes) p *= 1.0 - c(h);
          return p;
        };
        cd lhs = -prod(chi);
        for (int eb = 0; eb < 2; ++eb)
          for (int ea = 0; ea < 2; ++ea) lhs += 0.5 * prod(chi.shifted_by_sign(eb, ea));
        const int k = F.cycle_count();
        cd rhs = 0.0;
        for (int mask = 0; mask < (1 << k); ++mask) {
          std::vector<int> o(k);
          for (int j = 0; j < k; ++j) o[j] = (mask >> j) & 1 ? -1 : 1;
          rhs += chi(class_of_pair({F, dual_crsf(F, G.dual(), o)}));
        }
        ASSERT_LT(std::abs(lhs - rhs), 1e-12) << k;
      }
    }
  }
}

TEST(CharFun, MatchesEnumeration) {
  for (auto g : {build_square_torus(2, 0, 2), build_square_torus(3, 0, 2), random_torus(3, 1, 2, 3)}) {
    TemperleyanGraph G(g);
    const auto ms = enumerate_matchings(G);
    double Z = 0.0;
    for (const Matching& m : ms) Z += m.weight;
    EXPECT_LT(std::abs(zhat(g, Character(0, 0)) - Z), 1e-12 * Z);
    SplitMix64 rng(4);
    for (int t = 0; t < 10; ++t) {
      const Character chi(rng.uniform(), rng.uniform());
      cd expected = 0.0;
      for (const Matching& m : ms) expected += m.weight * chi(class_of(G, m));
      expected /= Z;
      const cd got = char_fun(g, chi);
      EXPECT_LT(std::abs(got - expected), 1e-10);
      EXPECT_LE(std::abs(got), 1.0 + 1e-12);
    }
    EXPECT_NEAR(std::abs(char_fun(g, Character(0, 0)) - 1.0), 0.0, 1e-14);
  }
}

TEST(Law, ExactMatchesEnumerationOnTwoByTwo) {
  auto g = build_square_torus(2, 0, 2);
  const HeightLaw exact = height_law_exact(g, 7);
  const HeightLaw enumerated = enumeration_law(g);
  EXPECT_NEAR(exact.total(), 1.0, 1e-10);
  EXPECT_LT(exact.aliasing, 1e-6);
  for (const auto& [h, p] : enumerated.p) EXPECT_NEAR(exact(h), p, 1e-10) << h;
  for (const auto& [h, p] : exact.p) EXPECT_NEAR(enumerated(h), p, 1e-10) << h;
  EXPECT_NEAR(enumerated({0, 0}), 132.0 / 272.0, 1e-15);
}

TEST(Law, ExactMatchesEnumerationWithRandomConductances) {
  auto g = random_torus(3, 1, 2, 5);
  const HeightLaw exact = height_law_exact(g, 11);
  const HeightLaw enumerated = enumeration_law(g);
  EXPECT_LT(tv_distance(exact, enumerated), 1e-10);
  for (const auto& [h, p] : exact.p) {
    EXPECT_GE(p, -1e-10);
    EXPECT_NEAR(p, exact(-h), 1e-10);
  }
}

TEST(Law, GoldenEnumerationFile) {
  const HeightLaw golden = law_from_json(slurp(std::string(DIMERLAB_TEST_DATA) + "/law_2x2_enumeration.json"));
  auto g = build_square_torus(2, 0, 2);
  EXPECT_LT(tv_distance(golden, enumeration_law(g)), 1e-15);
  EXPECT_LT(tv_distance(golden, height_law_exact(g, 9)), 1e-10);
  const HeightLaw back = law_from_json(law_to_json(golden));
  EXPECT_EQ(back.p, golden.p);
}

TEST(Law, SmallGridAliasesOnThreeByTwo) {
  auto g = build_square_torus(3, 0, 2);
  try {
    height_law_exact(g, 5);
    FAIL() << "expected aliasing";
  } catch (const AliasingError& e) {
    EXPECT_GT(e.estimate(), 1e-6);
  }
  EXPECT_NO_THROW(height_law_exact(g, 9));
}

TEST(Law, RejectsEvenOrTinyGrids) {
  auto g = build_square_torus(2, 0, 2);
  EXPECT_THROW(height_law_exact(g, 6), PreconditionError);
  EXPECT_THROW(height_law_exact(g, 3), PreconditionError);
}

TEST(Tv, Basics) {
  const HeightLaw a = point_mass({0, 0}), b = point_mass({0, 1});
  EXPECT_EQ(tv_distance(a, a), 0.0);
  EXPECT_EQ(tv_distance(a, b), 1.0);
  const HeightLaw g = from_discrete_gaussian(discrete_gaussian(cd(0.2, 1.1)));
  EXPECT_EQ(tv_distance(a, g), tv_distance(g, a));
  EXPECT_NEAR(tv_distance(a, g), 1.0 - g({0, 0}), 1e-15);
}

TEST(Sweep, SquareModulusDecreases) {
  const auto rows = convergence_sweep({8, 16, 32}, cd(0, 1), 9);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(tv_nonincreasing(rows));
  EXPECT_LT(rows[2].tv, rows[0].tv);
  for (const auto& r : rows) EXPECT_LT(r.aliasing, 1e-6);
}

TEST(Sweep, ShearedModulusDecreases) {
  EXPECT_EQ(shift_for(8, cd(0.125, 1.0)), std::make_pair(1, 8));
  EXPECT_EQ(shift_for(16, cd(0.125, 1.0)), std::make_pair(2, 16));
  const auto rows = convergence_sweep({8, 16, 32}, cd(0.125, 1), 9);
  EXPECT_TRUE(tv_nonincreasing(rows));
  EXPECT_LT(rows[2].tv, rows[0].tv);
}

TEST(Sweep, NonincreasingWithSlack) {
  std::vector<SweepRow> rows(3);
  rows[0].tv = 0.01;
  rows[1].tv = 0.0105;
  rows[2].tv = 0.002;
  EXPECT_TRUE(tv_nonincreasing(rows));
  rows[1].tv = 0.012;
  EXPECT_FALSE(tv_nonincreasing(rows));
}

TEST(Law, EightTorusMassIsConcentrated) {
  const HeightLaw law = height_law_exact(build_square_torus(8, 0, 8), 9);
  double mass = 0.0;
  for (const auto& [h, p] : law.p)
    if (std::abs(h.r) <= 3 && std::abs(h.s) <= 3) mass += p;
  EXPECT_GE(mass, 0.999);
}

// The characteristic function approaches that of the discrete Gaussian.
TEST(CharFun, ApproachesTheDiscreteGaussian) {
  const DiscreteGaussian dg = discrete_gaussian(cd(0, 1));
  auto limit = [&](const Character& chi) {
    cd s = 0.0;
    for (const auto& [h, p] : dg.p) s += p * chi(h);
    return s;
  };
  for (const Character chi : {Character(0.3, 0.7), Character(0.5, 0.1), Character(0.2, 0.2)}) {
    const double e16 = std::abs(char_fun(build_square_torus(16, 0, 16), chi) - limit(chi));
    const double e64 = std::abs(char_fun(build_square_torus(64, 0, 64), chi) - limit(chi));
    EXPECT_LT(e64, 1e-2);
    EXPECT_LT(e64, e16);
  }
}

TEST(Csv, SweepHeader) {
  std::ostringstream os;
  write_sweep_csv(os, convergence_sweep({8}, cd(0, 1), 9));
  std::istringstream in(os.str());
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "n,tau_re,tau_im,M,tv,aliasing,seconds");
  EXPECT_EQ(row.rfind("8,0,1,9,", 0), 0u);
  EXPECT_FALSE(std::getline(in, extra));
}
