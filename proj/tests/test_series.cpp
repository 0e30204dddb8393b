#include <gtest/gtest.h>

#include <algorithm>

#include "k3iso/oracle.hpp"
#include "k3iso/series.hpp"
#include "support.hpp"

namespace k3iso {
namespace {

const PicardParams kWorked{1, 1, 2, 17, 1};

bool contains(const std::vector<PellPoint>& pts, long p, long q) {
  return std::find(pts.begin(), pts.end(), PellPoint{p, q}) != pts.end();
}

TEST(Oracle, ScanMatchesDoubleLoop) {
  for (long d : {1, 2, 4, 7, 9, 17, 24}) {
    for (long rhs : {-12, -8, -1, 0, 1, 3, 8, 16}) {
      EXPECT_EQ(oracle::pell_scan(d, rhs, 120), oracle::pell_double_loop(d, rhs, 120))
          << d << " " << rhs;
    }
  }
  EXPECT_THROW(oracle::pell_scan(2, 1, 20000), PreconditionError);
}

TEST(FundamentalUnit, SmallValues) {
  // Least solutions of x^2 - d y^2 = 1, checked by the double loop oracle.
  for (long d : {2, 3, 5, 6, 7, 13, 17, 29, 61}) {
    const PellUnit u = fundamental_unit(d);
    EXPECT_EQ(u.x * u.x - d * u.y * u.y, 1);
    if (u.x <= 2000) {
      auto pts = oracle::pell_scan(d, 1, u.x.get_si());
      pts.erase(std::remove_if(pts.begin(), pts.end(),
                               [](const PellPoint& pt) { return pt.p <= 1 || pt.q <= 0; }),
                pts.end());
      ASSERT_FALSE(pts.empty());
      EXPECT_EQ(std::min_element(pts.begin(), pts.end(),
                                 [](auto& l, auto& r) { return l.p < r.p; })->p,
                u.x);
    }
  }
  // d = 61: x = 1766319049, y = 226153980.
  const PellUnit u = fundamental_unit(61);
  EXPECT_EQ(u.x, Int("1766319049"));
  EXPECT_EQ(u.y, Int("226153980"));
  EXPECT_THROW(fundamental_unit(16), PreconditionError);
}

TEST(Pell, Examples) {
  const auto pts = pell_solutions(17, 8, 100);
  for (long p : {5, -5}) {
    for (long q : {1, -1}) EXPECT_TRUE(contains(pts, p, q));
  }
  EXPECT_EQ(pell_solutions(17, 0, 100), (std::vector<PellPoint>{{0, 0}}));
  const auto square = pell_solutions(4, 0, 20);
  EXPECT_EQ(square.size(), 41u);  // (0,0) plus (+-2k, +-k) for k = 1..10
  for (const PellPoint& pt : square) EXPECT_EQ(pt.p * pt.p, 4 * pt.q * pt.q);
}

TEST(Pell, AgreesWithDoubleLoopAtBound1e4) {
  EXPECT_EQ(pell_solutions(17, 8, 10000), oracle::pell_double_loop(17, 8, 10000));
}

TEST(Pell, AgreesWithScanOnRandomInputs) {
  testing::Gen gen(31);
  for (int i = 0; i < 300; ++i) {
    const long d = gen.between(1, 400), rhs = gen.between(-500, 500);
    const long bound = gen.between(1, 3000);
    EXPECT_EQ(pell_solutions(d, rhs, bound), oracle::pell_scan(d, rhs, bound))
        << "d=" << d << " rhs=" << rhs << " bound=" << bound;
  }
}

TEST(Pell, LargeBoundReachesBigSolutions) {
  // x^2 - 61 y^2 = 1 has nothing nontrivial below 10^6; the fundamental unit
  // appears once the bound allows it.
  const auto pts = pell_solutions(61, 1, Int("2000000000"));
  EXPECT_TRUE(std::find(pts.begin(), pts.end(), PellPoint{Int("1766319049"), Int("226153980")}) !=
              pts.end());
  EXPECT_EQ(pell_solutions(61, 1, 1000000).size(), 2u);  // (+-1, 0)
}

TEST(Pell, OrderAndDeterminism) {
  const auto a = pell_solutions(17, -8, 5000), b = pell_solutions(17, -8, 5000);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(), solution_order));
  EXPECT_EQ(a.front(), (PellPoint{3, 1}));
}

TEST(Pell, ClassesUnderUnits) {
  // (5, 1) * (33 + 8 sqrt 17) = (301, 73); (5, -1) lies in the conjugate class.
  EXPECT_TRUE(same_pell_class(17, 8, {5, 1}, {301, 73}));
  EXPECT_FALSE(same_pell_class(17, 8, {5, 1}, {5, -1}));
  EXPECT_THROW(same_pell_class(17, 0, {0, 0}, {0, 0}), PreconditionError);
}

TEST(Series, WorkedExample) {
  const auto sols = solve_series(kWorked, Series::kA, Sign::kPlus, 100);
  ASSERT_FALSE(sols.empty());
  EXPECT_EQ(sols.front().p, 5);
  EXPECT_EQ(sols.front().q, 1);
  EXPECT_EQ(sols.front().h1, (NVector{10, 2}));
  EXPECT_EQ(sols.front().d2, 1);
  EXPECT_EQ(canonical_d2(kWorked, Series::kA, 5, 1), 1);
}

TEST(Series, MatchesOracleAtBound1e4) {
  for (Series s : {Series::kA, Series::kB}) {
    for (Sign g : {Sign::kPlus, Sign::kMinus}) {
      const auto sols = solve_series(kWorked, s, g, 10000);
      const auto brute = oracle::series_scan(kWorked, s, g, 10000);
      ASSERT_EQ(sols.size(), brute.size());
      for (std::size_t i = 0; i < sols.size(); ++i) {
        EXPECT_EQ(sols[i].p, brute[i].p);
        EXPECT_EQ(sols[i].q, brute[i].q);
        EXPECT_EQ(sols[i].h1, brute[i].h1);
      }
    }
  }
}

TEST(Series, EmptyWhenNotRepresented) {
  // (1, 2, 2, 25, 5): p^2 - 25 q^2 = +-8 has no solutions at all (square d).
  const PicardParams p{1, 2, 2, 25, 5};
  for (Sign g : {Sign::kPlus, Sign::kMinus}) {
    EXPECT_TRUE(solve_series(p, Series::kA, g, 1000).empty());
    EXPECT_TRUE(oracle::series_scan(p, Series::kA, g, 1000).empty());
  }
}

TEST(Series, SolutionsSatisfyDefinitionOnRandomParams) {
  testing::Gen gen(32);
  for (int i = 0; i < 150; ++i) {
    const PicardParams p = gen.params(3);
    for (Series s : {Series::kA, Series::kB}) {
      for (Sign g : {Sign::kPlus, Sign::kMinus}) {
        const auto sols = solve_series(p, s, g, 300);
        const auto brute = oracle::series_scan(p, s, g, 300);
        ASSERT_EQ(sols.size(), brute.size());
        const Int cofactor = series_cofactor(p, s);
        for (const SeriesSolution& sol : sols) {
          EXPECT_EQ(solution_defect(p, sol), "");
          EXPECT_EQ(norm(p, sol.h1), sign_value(g) * 2 * cofactor);
          EXPECT_TRUE(divides(cofactor, pair(p, polarization(p), sol.h1)));
          EXPECT_EQ(gcd_all({sol.d2, cofactor}), 1);
          EXPECT_TRUE(sol.d2 >= 1 && sol.d2 <= cofactor);
        }
      }
    }
  }
}

TEST(Series, DefectsAreReported) {
  SeriesSolution sol = solve_series(kWorked, Series::kA, Sign::kPlus, 100).front();
  sol.p += 4;
  EXPECT_NE(solution_defect(kWorked, sol), "");
  sol = solve_series(kWorked, Series::kA, Sign::kPlus, 100).front();
  sol.h1.x += 8;
  EXPECT_NE(solution_defect(kWorked, sol), "");
}

TEST(Refined, WorkedExampleVacuous) {
  const SeriesSolution sol = solve_series(kWorked, Series::kA, Sign::kPlus, 100).front();
  for (auto r : {RefinedReading::kDerived, RefinedReading::kPrintedModulus,
                 RefinedReading::kLatticeForm}) {
    EXPECT_TRUE(check_refined(kWorked, sol, r));
  }
}

TEST(Refined, SyntheticViolation) {
  // a = 3: (p, q) = (3, 3) shares the prime 3 with a.
  const PicardParams p{3, 1, 1, 1, 1};
  ASSERT_TRUE(validate(p));
  SeriesSolution sol{Series::kA, Sign::kPlus, 3, 3, NVector{3, 3}, 1};
  EXPECT_FALSE(check_refined(p, sol, RefinedReading::kDerived));

  // b = 2: p = mu q (mod 2ac * 2) violates the modulus condition.
  const PicardParams q{1, 2, 1, 1, 1};
  ASSERT_TRUE(validate(q));
  SeriesSolution bad{Series::kA, Sign::kPlus, 1, 1, NVector{2, 2}, 1};
  EXPECT_FALSE(check_refined(q, bad, RefinedReading::kDerived));
  bad.p = 3;  // 3 - 1 = 2: divisible by 2ac = 2, not by 4
  EXPECT_TRUE(check_refined(q, bad, RefinedReading::kDerived));
}

TEST(Equivalence, DeskSweep) {
  const EquivalenceReport report = equivalence_sweep(SweepRange{}, true, 0);
  EXPECT_TRUE(report.verdict());
  EXPECT_EQ(report.tuples, 253u);      // independent count of valid (a, b, c, d, mu)
  EXPECT_EQ(report.solutions, 2008u);  // independent scan over |q| <= 500
  ASSERT_EQ(report.tallies.size(), 3u);
  for (const ReadingTally& t : report.tallies) EXPECT_EQ(t.passed, t.checked);
  EXPECT_EQ(report.records.size(), report.solutions);
}

TEST(Equivalence, LargerCoefficientsSmallD) {
  SweepRange range;
  range.a_max = range.b_max = range.c_max = 6;
  range.d_max = 6;
  range.bound = 1000;
  const EquivalenceReport report = equivalence_sweep(range, false, 0);
  EXPECT_TRUE(report.verdict());
  EXPECT_GT(report.solutions, 0u);
}

TEST(Equivalence, EmptyAndBOneRanges) {
  SweepRange empty;
  empty.a_min = 2;
  empty.a_max = 1;
  const EquivalenceReport e = equivalence_sweep(empty);
  EXPECT_EQ(e.tuples, 0u);
  EXPECT_TRUE(e.verdict());

  SweepRange b_one;
  b_one.b_max = 1;
  EXPECT_TRUE(equivalence_sweep(b_one).verdict());
}

TEST(Equivalence, EnumerationIsLexicographicAndValid) {
  const auto params = enumerate_params(SweepRange{});
  EXPECT_EQ(params.size(), 253u);
  for (const PicardParams& p : params) EXPECT_TRUE(validate(p));
  auto key = [](const PicardParams& p) { return std::tie(p.a, p.b, p.c, p.d, p.mu); };
  EXPECT_TRUE(std::is_sorted(params.begin(), params.end(),
                             [&](auto& l, auto& r) { return key(l) < key(r); }));
}

}  // namespace
}  // namespace k3iso
