#include <gtest/gtest.h>

#include "iqf/affine.hpp"
#include "iqf/stabilizers.hpp"
#include "support/gen.hpp"

using iqf::AffineMap;
using iqf::Mat;
using iqf::Rational;
using iqf::Scalar;
using iqf::Vec;

namespace {

TEST(Affine, ActExamples) {
  EXPECT_EQ(iqf::act(AffineMap::identity(), Vec{5, -1, 2}), (Vec{5, -1, 2}));
  EXPECT_EQ(iqf::act(AffineMap::translation(Vec{1, 2, 3}), Vec(3)), (Vec{1, 2, 3}));
  const AffineMap h = iqf::h_alpha(1, 1);
  EXPECT_EQ(h.linear_part(), (Mat{{1, 1, Rational(1, 2)}, {0, 1, 1}, {0, 0, 1}}));
  EXPECT_EQ(iqf::act(h, Vec(3)), (Vec{Rational(1, 2), 1, 0}));
}

TEST(Affine, ComposeExamples) {
  gen::Rng rng(1);
  const AffineMap m = gen::affine(rng);
  EXPECT_EQ(m * AffineMap::identity(), m);
  EXPECT_EQ(AffineMap::translation(Vec{1, 2, 3}) * AffineMap::translation(Vec{0, -1, 5}),
            AffineMap::translation(Vec{1, 1, 8}));
}

TEST(Affine, ConjugationByShiftedFrame) {
  // (g, −ξ)(h, 0)(g, −ξ)⁻¹ = (ghg⁻¹, ghg⁻¹ξ − ξ)
  gen::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Mat g = gen::invertible(rng, 3);
    const Mat h = gen::invertible(rng, 3);
    const Vec xi = gen::vec(rng, 3);
    const AffineMap frame(g, -xi);
    const Mat ghg = g * h * iqf::inverse(g);
    EXPECT_EQ(frame * AffineMap::linear(h) * iqf::inverse(frame), AffineMap(ghg, ghg * xi - xi));
  }
}

TEST(Affine, InverseExamples) {
  EXPECT_EQ(iqf::inverse(AffineMap::identity()), AffineMap::identity());
  EXPECT_EQ(iqf::inverse(AffineMap::translation(Vec{1, -2, 3})), AffineMap::translation(Vec{-1, 2, -3}));
  EXPECT_EQ(iqf::inverse(iqf::h_alpha(1, 1)), iqf::h_alpha(1, -1));
  EXPECT_EQ(iqf::h_alpha(1, 1) * iqf::h_alpha(1, -1), AffineMap::identity());
}

TEST(Affine, SingularRejected) {
  try {
    AffineMap(Mat(3, 3), Vec(3));
    FAIL();
  } catch (const iqf::DomainError& e) {
    EXPECT_EQ(e.code(), "singular_matrix");
  }
}

TEST(Affine, Integrality) {
  EXPECT_TRUE(iqf::is_integral(AffineMap::identity()));
  EXPECT_FALSE(iqf::is_integral(AffineMap::translation(Vec{Rational(1, 2), 0, 0})));
  const AffineMap d(Mat::diagonal({2, 1, Rational(1, 2)}), Vec(3));
  EXPECT_TRUE(d.is_special());
  EXPECT_FALSE(iqf::is_integral(d));
  EXPECT_FALSE(iqf::is_integral(AffineMap::linear(Mat::diagonal({2, 1, 1}))));
}

TEST(AffineProperty, GroupAxiomsAndAction) {
  gen::Rng rng(500);
  for (int i = 0; i < 500; ++i) {
    const AffineMap a = gen::affine(rng), b = gen::affine(rng), c = gen::affine(rng);
    const Vec x = gen::vec(rng, 3);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * AffineMap::identity(), a);
    ASSERT_EQ(AffineMap::identity() * a, a);
    ASSERT_EQ(a * iqf::inverse(a), AffineMap::identity());
    ASSERT_EQ(iqf::inverse(a) * a, AffineMap::identity());
    ASSERT_EQ(iqf::act(a * b, x), iqf::act(a, iqf::act(b, x)));
    ASSERT_EQ((a * b).det(), a.det() * b.det());
  }
}

TEST(AffineProperty, IntegralClosure) {
  gen::Rng rng(501);
  for (int i = 0; i < 500; ++i) {
    const AffineMap a = gen::integral_affine(rng), b = gen::integral_affine(rng);
    ASSERT_TRUE(iqf::is_integral(a));
    ASSERT_TRUE(iqf::is_integral(a * b));
    ASSERT_TRUE(iqf::is_integral(iqf::inverse(a)));
  }
}

}  // namespace
