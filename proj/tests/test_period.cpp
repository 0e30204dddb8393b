#include <gtest/gtest.h>

#include "k3iso/period.hpp"

namespace k3iso {
namespace {

const MukaiModel kModel;

PeriodData period(long a, long b, long c, long d1, long d2) {
  return compute_period_data(kModel, embed_vector(a, b, c, d1, d2), a, b, c);
}

TEST(Embed, Examples) {
  EXPECT_EQ(embed_vector(1, 1, 2, 1, 1), (LatVec{2, 2, 4, 1}));
  // d1 = 2, d2 = 3 for (1, 1, 1): (4 * 1, 9 * 1, 6 * 1, 6).
  EXPECT_EQ(embed_vector(1, 1, 1, 2, 3), (LatVec{4, 9, 6, 6}));
  for (long d1 : {1, 2, 3}) {
    for (long d2 : {1, 5}) {
      const LatVec v = embed_vector(2, 1, 1, d1, d2);
      EXPECT_EQ(inner(kModel.lattice, v, v), 0);
    }
  }
  EXPECT_EQ(scale_nu_model(embed_vector(1, 1, 1, 1, 1), 2, 3), embed_vector(1, 1, 1, 2, 3));
}

TEST(Embed, Preconditions) {
  EXPECT_THROW(embed_vector(2, 2, 1, 1, 1), PreconditionError);  // gcd(a, b)
  EXPECT_THROW(embed_vector(1, 2, 1, 2, 1), PreconditionError);  // gcd(d1, bc)
  EXPECT_THROW(embed_vector(2, 1, 1, 1, 2), PreconditionError);  // gcd(d2, ac)
  EXPECT_THROW(embed_vector(1, 1, 1, 2, 2), PreconditionError);  // gcd(d1, d2)
  EXPECT_THROW(embed_vector(1, 1, 0, 1, 1), PreconditionError);
}

TEST(PerpBasis, OrthogonalToV) {
  const ExplicitPerpBasis e = explicit_perp_basis(2, 3, 1, 5, 7);
  const LatVec v = embed_vector(2, 3, 1, 5, 7);
  for (const LatVec& x : {e.alpha, e.beta, e.t}) EXPECT_EQ(inner(kModel.lattice, x, v), 0);
}

TEST(Period, SmallestCase) {
  const PeriodData pd = period(1, 1, 2, 1, 1);
  EXPECT_EQ(pd.h2_model.rank(), 2u);
  EXPECT_EQ(determinant(pd.h2_model.gram()), -1);
  EXPECT_TRUE(pd.h2_model.even());
  EXPECT_EQ(inner(pd.h2_model, pd.picard_gen, pd.picard_gen), 2);
  EXPECT_EQ(inner(pd.h2_model, pd.transc_gen, pd.transc_gen), -2);
  EXPECT_EQ(inner(pd.h2_model, pd.picard_gen, pd.transc_gen), 0);
}

TEST(Period, DivisorChecks) {
  const PeriodData pd = period(2, 3, 5, 7, 11);
  const DivisorChecks& dc = pd.divisor_checks;
  EXPECT_EQ(dc.alpha, 11);
  EXPECT_EQ(dc.beta, 7);
  EXPECT_EQ(dc.t, 5);
  EXPECT_TRUE(dc.relation);
  EXPECT_TRUE(dc.explicit_basis);
  EXPECT_TRUE(dc.coordinate_divisibility);
  EXPECT_EQ(pd.d1, 7);
  EXPECT_EQ(pd.d2, 11);
  EXPECT_EQ(inner(pd.h2_model, pd.picard_gen, pd.picard_gen), 12);  // 2ab
}

TEST(Period, AlphaBetaFormU) {
  // a = b = c = 1, d1 = 2, d2 = 1: alpha~, beta~ span a hyperbolic plane.
  const PeriodData pd = period(1, 1, 1, 2, 1);
  const Int aa = inner(pd.h2_model, pd.alpha_class, pd.alpha_class);
  const Int bb = inner(pd.h2_model, pd.beta_class, pd.beta_class);
  const Int ab = inner(pd.h2_model, pd.alpha_class, pd.beta_class);
  EXPECT_EQ(aa, 0);
  EXPECT_EQ(bb, 0);
  EXPECT_EQ(ab * ab, 1);
}

TEST(Period, IsometryToUnscaled) {
  const PeriodData base = period(1, 1, 1, 1, 1);
  const PeriodData scaled = period(1, 1, 1, 3, 1);
  const auto phi = periods_isomorphic(base, scaled);
  ASSERT_TRUE(phi);
  const auto psi = explicit_identification(base, scaled);
  ASSERT_TRUE(psi);
  EXPECT_TRUE(periods_isomorphic(base, base));
  EXPECT_TRUE(explicit_identification(scaled, scaled));
}

TEST(Period, DifferentPolarizationsDoNotMatch) {
  // h^2 = 2ab differs, so no isometry can match the generators.
  const PeriodData p1 = period(1, 1, 1, 1, 1);
  const PeriodData p2 = period(1, 2, 1, 1, 1);
  EXPECT_FALSE(periods_isomorphic(p1, p2));
  EXPECT_FALSE(explicit_identification(p1, p2));
}

TEST(Period, RejectsNonIsotropicVector) {
  EXPECT_THROW(compute_period_data(kModel, LatVec{1, 1, 0, 0}, 1, 1, 1), Error);
}

TEST(Period, InstanceRecord) {
  const PeriodSweepRecord rec = check_period_instance(2, 1, 3, 5, 7);
  EXPECT_TRUE(rec.ok()) << rec.error;
  EXPECT_EQ(rec.h_square, 4);
  const PeriodSweepRecord bad = check_period_instance(2, 2, 1, 1, 1);
  EXPECT_FALSE(bad.ok());
  EXPECT_FALSE(bad.error.empty());
}

TEST(Period, DefaultSweep) {
  const auto records = period_sweep(PeriodSweepRange{}, 0);
  EXPECT_EQ(records.size(), 172u);  // independent count of admissible (a, b, c, d1, d2)
  for (const PeriodSweepRecord& rec : records) {
    EXPECT_TRUE(rec.ok()) << rec.a << " " << rec.b << " " << rec.c << " " << rec.d1 << " "
                          << rec.d2 << ": " << rec.error;
    EXPECT_EQ(rec.h_square, 2 * rec.a * rec.b);
  }
}

}  // namespace
}  // namespace k3iso
