#include <gtest/gtest.h>

#include "k3iso/picard.hpp"
#include "support.hpp"

namespace k3iso {
namespace {

const PicardParams kWorked{1, 1, 2, 17, 1};

TEST(Validate, WorkedExampleIsValid) {
  EXPECT_TRUE(validate(kWorked));
  EXPECT_EQ(validation_error(kWorked), std::nullopt);
}

TEST(Validate, Rejections) {
  EXPECT_FALSE(validate({1, 1, 2, 17, 2}));  // 2 not a unit mod 8
  EXPECT_FALSE(validate({1, 1, 2, 3, 1}));   // 1 != 3 mod 16
  EXPECT_FALSE(validate({2, 2, 1, 17, 1}));  // gcd(a, b) = 2
  EXPECT_FALSE(validate({1, 1, 2, 0, 0}));
  EXPECT_FALSE(validate({1, 1, 2, -15, 1}));
  EXPECT_FALSE(validate({0, 1, 2, 17, 1}));
  EXPECT_THROW(require_valid({1, 1, 2, 3, 1}), PreconditionError);
}

TEST(Validate, RsVocabulary) {
  EXPECT_EQ(PicardParams::from_rs(2, 2, 17, 1), kWorked);
  const PicardParams p = PicardParams::from_rs(6, 4, 1, 1);
  EXPECT_EQ(p, (PicardParams{3, 2, 2, 1, 1}));
  EXPECT_EQ(p.r(), 6);
  EXPECT_EQ(p.s(), 4);
  EXPECT_THROW(PicardParams::from_rs(0, 2, 17, 1), PreconditionError);
}

TEST(Canonical, ReducesAndNormalizes) {
  EXPECT_EQ(canonical({1, 1, 2, 17, 9}).mu, 1);
  EXPECT_EQ(canonical({1, 1, 2, 17, -1}).mu, 7);
  EXPECT_EQ(normalized({1, 1, 2, 17, 7}).mu, 1);
  EXPECT_EQ(normalized({1, 1, 2, 17, 1}).mu, 1);
}

TEST(Norm, WorkedExampleValues) {
  EXPECT_EQ(norm(kWorked, polarization(kWorked)), 8);
  EXPECT_EQ(norm(kWorked, w_generator(kWorked)), -2);
  EXPECT_EQ(norm(kWorked, NVector{10, 2}), 4);
}

TEST(Pair, WorkedExampleValues) {
  EXPECT_EQ(pair(kWorked, polarization(kWorked), w_generator(kWorked)), 1);
  EXPECT_EQ(pair(kWorked, polarization(kWorked), delta_direction(kWorked)), 0);
  EXPECT_EQ(pair(kWorked, polarization(kWorked), NVector{9, 1}), 9);
}

TEST(Norm, OutsideNThrows) {
  EXPECT_THROW(norm(kWorked, NVector{2, 1}), InvariantError);
  EXPECT_FALSE(in_lattice(kWorked, NVector{2, 1}));
}

TEST(Gram, WorkedExample) {
  const GramLattice g = gram(kWorked);
  EXPECT_EQ(g.gram(), (IntMatrix{{8, 1}, {1, -2}}));
  EXPECT_EQ(determinant(g.gram()), -17);
  EXPECT_TRUE(g.even());
}

TEST(Gram, DeterminantIsMinusDOnRandomParams) {
  testing::Gen gen(101);
  for (int i = 0; i < 100; ++i) {
    const PicardParams p = gen.params();
    ASSERT_TRUE(validate(p));
    const GramLattice g = gram(p);
    EXPECT_EQ(determinant(g.gram()), -p.d);
    EXPECT_TRUE(g.even());
  }
}

TEST(Elements, NormAndPairAgreeWithGram) {
  testing::Gen gen(102);
  for (int i = 0; i < 300; ++i) {
    const PicardParams p = gen.params();
    const GramLattice g = gram(p);
    const NVector u = gen.element(p), v = gen.element(p);
    const auto [ua, ub] = basis_coordinates(p, u);
    const auto [va, vb] = basis_coordinates(p, v);
    EXPECT_EQ(from_basis(p, ua, ub), u);
    EXPECT_EQ(pair(p, u, v), inner(g, {ua, ub}, {va, vb}));
    EXPECT_EQ(pair(p, u, v), pair(p, v, u));
    EXPECT_TRUE(divides(2, norm(p, u)));
    EXPECT_EQ(pair(p, u + v, u), pair(p, u, u) + pair(p, v, u));
    // H.N = Z: H pairs with w to mu, a unit mod H^2.
    EXPECT_EQ(gcd_all({pair(p, polarization(p), polarization(p)),
                       pair(p, polarization(p), w_generator(p))}),
              1);
  }
}

TEST(Elements, CongruenceLatticeHasIndexH2) {
  testing::Gen gen(103);
  for (int i = 0; i < 20; ++i) {
    const PicardParams p = gen.params(3);
    const Int h2 = p.h_square();
    // Count residues (x, y) mod h2 in N: exactly one x per y.
    long count = 0;
    const long n = h2.get_si();
    for (long x = 0; x < n; ++x) {
      for (long y = 0; y < n; ++y) count += in_lattice(p, NVector{x, y}) ? 1 : 0;
    }
    EXPECT_EQ(count, n);
  }
}

TEST(Elements, DivisorInN) {
  EXPECT_EQ(element_divisor(kWorked, polarization(kWorked)), 1);
  EXPECT_EQ(element_divisor(kWorked, 2 * polarization(kWorked)), 2);
  EXPECT_EQ(element_divisor(kWorked, NVector{10, 2}), 1);  // H + 2w
  EXPECT_EQ(element_divisor(kWorked, 6 * w_generator(kWorked)), 6);
}

}  // namespace
}  // namespace k3iso
