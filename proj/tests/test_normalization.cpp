#include <gtest/gtest.h>

#include "iqf/normalization.hpp"
#include "iqf/rationality.hpp"
#include "iqf/reference_systems.hpp"
#include "support/gen.hpp"

using namespace iqf;

namespace {

const Scalar r2 = Scalar::sqrt_of(2);

TEST(Normalization, WorkedPairCertificate) {
  const PairSystem s = worked_pair();
  const NormalizationCertificate c = normalize_pair(s.q, s.xi, s.l);
  EXPECT_TRUE(pair_residual(c, s.form(), s.l).is_zero());
  EXPECT_EQ(c.alpha, c.mu * s.l(s.xi));
  EXPECT_EQ(c.detg, c.map.det());
  EXPECT_FALSE(c.detg.is_zero());
  // pointwise: λQ_ξ(m.x) = (Q₀)_α(x), μL(m.x) = x₃
  gen::Rng rng(40);
  for (int i = 0; i < 20; ++i) {
    const Vec x = gen::vec(rng, 3);
    EXPECT_EQ(c.lambda * eval_inhom(s.form(), act(c.map, x)), eval_inhom(tangent_normal_form(c.alpha), x));
    EXPECT_EQ(c.mu * s.l(act(c.map, x)), x[2]);
  }
}

TEST(Normalization, NormalFormIsAlmostFixed) {
  const Scalar alpha = Scalar(3) * r2;
  const NormalizationCertificate c =
      normalize_pair(QuadraticForm(tangent_normal_gram()), Vec{0, 0, alpha}, tangent_normal_linear());
  EXPECT_TRUE(pair_residual(c, tangent_normal_form(alpha), tangent_normal_linear()).is_zero());
  EXPECT_EQ(c.alpha, c.mu * alpha);
}

TEST(Normalization, UnitDeterminantWhenCubeRootExists) {
  const PairSystem s = worked_pair();
  const NormalizationCertificate c = normalize_pair(s.q, s.xi, s.l);
  const auto u = unit_det_certificate(c, s.form(), s.l);
  if (cbrt_in_field(c.detg)) {
    ASSERT_TRUE(u.has_value());
    EXPECT_EQ(u->detg, Scalar(1));
    EXPECT_TRUE(pair_residual(*u, s.form(), s.l).is_zero());
  } else {
    EXPECT_FALSE(u.has_value());
  }
}

TEST(Normalization, NonTangentRejected) {
  try {
    normalize_pair(QuadraticForm(Mat::diagonal({1, 1, -1})), Vec(3), LinearForm(Vec{0, 0, 1}));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), "not_tangent");
  }
  EXPECT_THROW(normalize_pair(QuadraticForm(Mat::identity(3)), Vec(3), LinearForm(Vec{0, 0, 1})), DomainError);
}

// Equivalent copies of the normal form (integral maps, Q(√2) scales) normalize back.
TEST(NormalizationProperty, RoundTripFiftyPairs) {
  gen::Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    const Scalar alpha = gen::nonzero(rng);
    const Mat g = gen::unimodular(rng);
    // translations inside ker L₀ keep the linear form homogeneous
    const Vec v = Vec{Scalar(gen::integer(rng, -5, 5)), Scalar(gen::integer(rng, -5, 5)), Scalar(0)};
    const auto [f, l] = transform_pair(tangent_normal_form(alpha), tangent_normal_linear(), gen::nonzero(rng),
                                       gen::nonzero(rng), AffineMap(g, v));
    ASSERT_TRUE(l.is_homogeneous());
    const NormalizationCertificate c = normalize_pair(f.homogeneous_part(), f.shift(), l);
    ASSERT_TRUE(pair_residual(c, f, l).is_zero());
    ASSERT_EQ(c.alpha, c.mu * l(f.shift()));
    const auto u = unit_det_certificate(c, f, l);
    if (u) {
      ASSERT_EQ(u->detg, Scalar(1));
      ASSERT_TRUE(pair_residual(*u, f, l).is_zero());
    }
  }
}

TEST(NormalizationProperty, RandomTangentPairs) {
  gen::Rng rng(42);
  for (int i = 0; i < 50; ++i) {
    const Mat u = gen::unimodular(rng);
    const Mat a = gen::nonzero(rng) * (u.transpose() * lorentz_gram() * u);
    const Vec c = inverse(u) * Vec{3, 4, 5};
    const LinearForm l(gen::nonzero(rng) * (a * c));
    const Vec xi = gen::vec(rng, 3);
    const NormalizationCertificate cert = normalize_pair(QuadraticForm(a), xi, l);
    ASSERT_TRUE(pair_residual(cert, InhomogeneousForm(a, xi), l).is_zero());
  }
}

TEST(NormalizationSingle, Examples) {
  const SingleCertificate c = normalize_single(QuadraticForm(lorentz_gram()), Vec{0, 0, r2});
  for (const auto& x : single_residual(c, InhomogeneousForm(lorentz_gram(), Vec{0, 0, r2}))) EXPECT_TRUE(x.is_zero());
  EXPECT_EQ(c.map.translation_part(), (Vec{0, 0, -r2}));

  const SingleCertificate q0 = normalize_single(QuadraticForm(tangent_normal_gram()), Vec(3));
  for (const auto& x : single_residual(q0, InhomogeneousForm(tangent_normal_gram(), Vec(3)))) EXPECT_TRUE(x.is_zero());

  // x² + y² − 3z² is anisotropic over Q, the Lorentz form is not
  try {
    normalize_single(QuadraticForm(Mat::diagonal({1, 1, -3})), Vec(3));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), "not_representable");
  }
  EXPECT_THROW(normalize_single(QuadraticForm(Mat::identity(3)), Vec(3)), DomainError);
  EXPECT_THROW(normalize_single(QuadraticForm(Mat::diagonal({1, -1, 0})), Vec(3)), DomainError);
}

TEST(NormalizationSingleProperty, CongruentCopiesOfLorentz) {
  gen::Rng rng(43);
  for (int i = 0; i < 50; ++i) {
    const Mat u = gen::unimodular(rng);
    const Scalar s(gen::integer(rng, 1, 5) * (i % 2 == 0 ? 1 : -1));
    const Mat a = s * (u.transpose() * lorentz_gram() * u);
    const Vec xi = gen::vec(rng, 3);
    const SingleCertificate c = normalize_single(QuadraticForm(a), xi);
    for (const auto& x : single_residual(c, InhomogeneousForm(a, xi))) ASSERT_TRUE(x.is_zero());
  }
}

}  // namespace
