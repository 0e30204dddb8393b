#include <gtest/gtest.h>

#include "k3iso/mukai.hpp"
#include "k3iso/oracle.hpp"
#include "support.hpp"

namespace k3iso {
namespace {

const PicardParams kWorked{1, 1, 2, 17, 1};

MukaiVector mv(const PicardParams& p, long r, NVector c1, long s) {
  return MukaiVector::make(p, r, c1, s);
}

TEST(MukaiVector, MakeValidates) {
  EXPECT_THROW(mv(kWorked, -1, {0, 0}, 1), PreconditionError);
  EXPECT_THROW(mv(kWorked, 1, {2, 1}, 1), PreconditionError);
}

TEST(Square, Examples) {
  EXPECT_EQ(mukai_square(initial_vector(kWorked)), 0);
  EXPECT_EQ(mukai_square(mv(kWorked, 0, {0, 0}, 1)), 0);
  EXPECT_EQ(mukai_square(mv(kWorked, 2, {10, 2}, 1)), 0);
  testing::Gen gen(7);
  for (int i = 0; i < 50; ++i) {
    const PicardParams p = gen.params();
    EXPECT_EQ(mukai_square(initial_vector(p)), 0);
    EXPECT_TRUE(is_primitive(initial_vector(p)));
  }
}

TEST(Divisor, Examples) {
  const NVector h = polarization(kWorked);
  EXPECT_EQ(gcd_divisor(initial_vector(kWorked)), 1);
  EXPECT_EQ(gcd_divisor(mv(kWorked, 2, 2 * h, 2)), 2);
  EXPECT_EQ(gcd_divisor(mv(kWorked, 2, {10, 2}, 1)), 1);
  EXPECT_THROW(gcd_divisor(mv(kWorked, 0, {0, 0}, 0)), PreconditionError);
}

TEST(Reflect, Examples) {
  const NVector h = polarization(kWorked);
  EXPECT_EQ(reflect(mv(kWorked, 2, h, 2)), mv(kWorked, 2, h, 2));
  const PicardParams p{1, 3, 2, 1, 1};  // (ac, H, bc) = (2, H, 6)
  EXPECT_EQ(reflect(initial_vector(p)), mv(p, 6, polarization(p), 2));
  EXPECT_THROW(reflect(mv(kWorked, 0, h, 1)), PreconditionError);
  EXPECT_THROW(reflect(mv(kWorked, 1, h, 0)), PreconditionError);
  EXPECT_THROW(reflect(mv(kWorked, 2, 2 * h, 2)), PreconditionError);
}

TEST(Twist, WorkedExample) {
  const MukaiVector v = mv(kWorked, 2, polarization(kWorked), 2);
  EXPECT_EQ(tensor_twist(v, w_generator(kWorked)), mv(kWorked, 2, {10, 2}, 1));
  EXPECT_EQ(tensor_twist(v, {0, 0}), v);
  EXPECT_THROW(tensor_twist(v, {1, 2}), PreconditionError);
}

TEST(Twist, InvariantsOnRandomInputs) {
  testing::Gen gen(17);
  for (int i = 0; i < 1000; ++i) {
    const PicardParams p = gen.params();
    MukaiVector v = gen.vector(p);
    if (i % 3 == 0) v = MukaiVector{p, 3 * v.r, 3 * v.c1, 3 * v.s};  // non-primitive
    const NVector d = gen.element(p), e = gen.element(p);
    const MukaiVector t = tensor_twist(v, d);
    EXPECT_EQ(mukai_square(t), mukai_square(v));
    EXPECT_EQ(gcd_divisor(t), gcd_divisor(v));
    EXPECT_EQ(tensor_twist(tensor_twist(v, e), d), tensor_twist(v, d + e));
    EXPECT_EQ(tensor_twist(t, -d), v);
    const auto [da, db] = basis_coordinates(p, d);
    EXPECT_EQ(oracle::to_basis(t), oracle::twist(p, oracle::to_basis(v), da, db));
  }
}

TEST(Reflect, InvariantsOnRandomInputs) {
  testing::Gen gen(18);
  int checked = 0;
  while (checked < 1000) {
    const PicardParams p = gen.params();
    const MukaiVector v{p, gen.between(1, 12), gen.element(p), gen.between(1, 12)};
    if (!is_primitive(v)) continue;
    ++checked;
    const MukaiVector r = reflect(v);
    EXPECT_EQ(mukai_square(r), mukai_square(v));
    EXPECT_EQ(gcd_divisor(r), gcd_divisor(v));
    EXPECT_EQ(reflect(r), v);
  }
}

TEST(ScaleNu, Examples) {
  const PicardParams p{1, 1, 1, 1, 1};  // H^2 = 2
  const NVector h = polarization(p);
  const MukaiVector v = mv(p, 1, h, 1);
  EXPECT_EQ(scale_nu(v, 1, 1), v);
  const MukaiVector scaled = scale_nu(v, 2, 3);
  EXPECT_EQ(scaled, mv(p, 4, 6 * h, 9));
  EXPECT_EQ(mukai_square(scaled), 0);
  EXPECT_THROW(scale_nu(v, 2, 2), PreconditionError);                  // gcd(d1, d2) = 2
  EXPECT_THROW(scale_nu(mv(p, 2, h, 1), 1, 2), PreconditionError);     // gcd(d2, r) = 2
  EXPECT_THROW(scale_nu(mv(p, 1, h, 3), 3, 1), PreconditionError);     // gcd(d1, s) = 3
  EXPECT_THROW(scale_nu(mv(p, 1, h, 2), 1, 1), PreconditionError);     // not isotropic
  EXPECT_THROW(scale_nu(mv(p, 4, 2 * h, 1), 1, 1), PreconditionError); // c1 not primitive
  EXPECT_THROW(scale_nu(v, 0, 1), PreconditionError);
}

TEST(ScaleNu, SquareScalesByD1D2Squared) {
  testing::Gen gen(19);
  int checked = 0;
  while (checked < 500) {
    const PicardParams p = gen.params();
    const MukaiVector v = gen.vector(p);
    const Int d1 = gen.between(1, 6), d2 = gen.between(1, 6);
    if (gcd_all({d1, v.s}) != 1 || gcd_all({d2, v.r}) != 1 || gcd_all({d1, d2}) != 1) continue;
    ++checked;
    const MukaiVector n = scale_nu(v, d1, d2, NuHypotheses::kCoprimalityOnly);
    EXPECT_EQ(mukai_square(n), d1 * d1 * d2 * d2 * mukai_square(v));
  }
}

TEST(ScaleNu, PrimitiveOutputExhaustive) {
  // r, s <= 6 with c1 = k H primitive and isotropic: k^2 H^2 = 2rs.
  for (long a = 1; a <= 3; ++a) {
    for (long b = 1; b <= 3; ++b) {
      if (std::gcd(a, b) != 1) continue;
      const PicardParams p{a, b, 1, 1, 1};
      if (!validate(p)) continue;
      for (long r = 1; r <= 6; ++r) {
        for (long s = 1; s <= 6; ++s) {
          const MukaiVector v{p, r, polarization(p), s};
          if (mukai_square(v) != 0) continue;
          for (long d1 = 1; d1 <= 5; ++d1) {
            for (long d2 = 1; d2 <= 5; ++d2) {
              if (std::gcd(d1, s) != 1 || std::gcd(d2, r) != 1 || std::gcd(d1, d2) != 1) continue;
              const MukaiVector n = scale_nu(v, d1, d2);
              EXPECT_EQ(mukai_square(n), 0);
              EXPECT_TRUE(is_primitive(n)) << a << b << " " << r << s << " " << d1 << d2;
            }
          }
        }
      }
    }
  }
}

TEST(ScaleNu, CompositionLaw) {
  testing::Gen gen(20);
  int checked = 0;
  while (checked < 300) {
    const PicardParams p = gen.params();
    const MukaiVector v = initial_vector(p);
    const Int d1 = gen.between(1, 7), d2 = gen.between(1, 7);
    if (gcd_all({d1, v.s}) != 1 || gcd_all({d2, v.r}) != 1 || gcd_all({d1, d2}) != 1) continue;
    ++checked;
    const MukaiVector step = scale_nu(v, 1, d2);
    // c1 = d2 H is no longer primitive, so the second scaling only checks coprimality.
    const MukaiVector composed = scale_nu(step, d1, 1, NuHypotheses::kCoprimalityOnly);
    EXPECT_EQ(composed, scale_nu(v, d1, d2));
    EXPECT_EQ(oracle::to_basis(composed), oracle::nu(oracle::to_basis(v), d1, d2));
  }
}

TEST(Tyurin, TargetCheck) {
  const NVector h1{10, 2};
  EXPECT_TRUE(tyurin_target_check(mv(kWorked, 2, h1, 1), h1, Sign::kPlus));
  EXPECT_FALSE(tyurin_target_check(mv(kWorked, 2, h1, -1), h1, Sign::kPlus));
  EXPECT_THROW(tyurin_target_check(mv(kWorked, 2, h1, 1), h1, Sign::kMinus), PreconditionError);

  // h1^2 = -4 in (1, 2, 2, 25, 5): h1 = (-6, 2).
  const PicardParams p{1, 2, 2, 25, 5};
  const NVector g{-6, 2};
  ASSERT_EQ(norm(p, g), -4);
  EXPECT_TRUE(tyurin_target_check(mv(p, 2, g, -1), g, Sign::kMinus));

  // An isotropic h1 has no Tyurin target.
  const PicardParams q{1, 1, 1, 1, 1};
  const NVector iso{1, 1};  // (1 - 1) / 2 = 0
  ASSERT_EQ(norm(q, iso), 0);
  EXPECT_THROW(tyurin_target_check(mv(q, 0, iso, 1), iso, Sign::kPlus), PreconditionError);
}

}  // namespace
}  // namespace k3iso
