#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "iqf/forms.hpp"
#include "iqf/hyperplane.hpp"
#include "iqf/normalization.hpp"
#include "support/gen.hpp"

using namespace iqf;

namespace {

const Scalar r2 = Scalar::sqrt_of(2);

TEST(Forms, EvalExamples) {
  const InhomogeneousForm f = tangent_normal_form(1);
  EXPECT_EQ(eval_inhom(f, Vec{0, 0, 0}), Scalar(0));
  EXPECT_EQ(eval_inhom(f, Vec{1, 0, 0}), Scalar(2));
  EXPECT_EQ(eval_inhom(tangent_normal_form(0), Vec{1, 1, 1}), Scalar(1));
}

TEST(Forms, SignatureExamples) {
  EXPECT_EQ(signature(QuadraticForm(Mat::diagonal({1, 1, -1}))), (Signature{2, 1, 0}));
  const QuadraticForm q0(tangent_normal_gram());
  EXPECT_EQ(signature(q0), (Signature{1, 2, 0}));
  EXPECT_GT(q0(Vec{1, 0, 1}).sign(), 0);
  EXPECT_LT(q0(Vec{1, 0, -1}).sign(), 0);
  EXPECT_LT(q0(Vec{0, 1, 0}).sign(), 0);
  EXPECT_EQ(signature(QuadraticForm(Mat(3, 3))), (Signature{0, 0, 3}));
}

TEST(Forms, DiagonalizationIsCongruence) {
  gen::Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    Mat a = gen::mat(rng, 3, 3);
    a = a + a.transpose();
    if (i % 4 == 0) a(0, 0) = a(1, 1) = a(2, 2) = Scalar(0);  // forces the off-diagonal pivot path
    const auto cd = diagonalize(a);
    std::vector<Scalar> d = cd.diagonal;
    EXPECT_EQ(cd.transform.transpose() * a * cd.transform, Mat::diagonal(d));
    EXPECT_FALSE(det(cd.transform).is_zero());
  }
}

// Independent floating oracle: eigenvalue signs of well-conditioned samples.
TEST(FormsProperty, SignatureMatchesEigenOracle) {
  gen::Rng rng(9);
  int checked = 0;
  while (checked < 200) {
    Mat a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) a(i, j) = a(j, i) = Scalar(gen::integer(rng, -6, 6));
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = a(i, j).to_double();
    const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m).eigenvalues();
    Signature expect;
    bool clean = true;
    for (int i = 0; i < 3; ++i) {
      if (std::abs(ev[i]) < 1e-9) {
        clean = det(a).is_zero() && clean;
        ++expect.zero;
      } else if (ev[i] > 0) {
        ++expect.positive;
      } else {
        ++expect.negative;
      }
    }
    if (!clean) continue;
    ++checked;
    EXPECT_EQ(signature(QuadraticForm(a)), expect);
  }
}

TEST(FormsProperty, SignatureInvariantUnderUnimodularCongruence) {
  gen::Rng rng(10);
  for (int i = 0; i < 200; ++i) {
    Mat a = gen::mat(rng, 3, 3);
    a = a + a.transpose();
    const Mat u = gen::unimodular(rng);
    EXPECT_EQ(signature(QuadraticForm(a)), signature(QuadraticForm(u.transpose() * a * u)));
  }
}

TEST(Forms, TangencyExamples) {
  EXPECT_TRUE(is_tangent(QuadraticForm(tangent_normal_gram()), tangent_normal_linear()));
  const QuadraticForm q(Mat::diagonal({1, 1, -1}));
  EXPECT_TRUE(is_tangent(q, LinearForm(Vec{1, 1, r2})));
  EXPECT_FALSE(is_tangent(q, LinearForm(Vec{0, 0, 1})));
  EXPECT_THROW(is_tangent(QuadraticForm(Mat::diagonal({1, 1, 0})), LinearForm(Vec{0, 0, 1})), DomainError);
  EXPECT_THROW(is_tangent(q, LinearForm(Vec(3))), DomainError);
  EXPECT_THROW(is_tangent(QuadraticForm(Mat::identity(3)), LinearForm(Vec{0, 0, 1})), DomainError);
}

// Oracle: the restriction of Q to ker L (2×2 Gram in a kernel basis) is degenerate.
TEST(FormsProperty, TangencyMatchesRestrictionOracle) {
  gen::Rng rng(12);
  int tangent_cases = 0;
  for (int i = 0; i < 150; ++i) {
    const Mat u = gen::unimodular(rng);
    const Scalar scale = gen::nonzero(rng);
    const Mat a = scale * (u.transpose() * Mat::diagonal({1, 1, -1}) * u);
    Vec ell = gen::vec(rng, 3);
    if (i % 2 == 0) {
      // ℓ = A c for a point c on the cone gives a tangent plane
      const Vec c = inverse(u) * Vec{3, 4, 5};
      ell = a * c;
    }
    if (ell.is_zero()) continue;
    Mat row(1, 3);
    for (std::size_t k = 0; k < 3; ++k) row(0, k) = ell[k];
    const Mat kb = Mat::from_columns(nullspace(row));
    const bool oracle = det(kb.transpose() * a * kb).is_zero();
    const bool tangent = is_tangent(QuadraticForm(a), LinearForm(ell));
    EXPECT_EQ(tangent, oracle);
    tangent_cases += tangent ? 1 : 0;
  }
  EXPECT_GE(tangent_cases, 75);
}

TEST(Forms, TransformPairExamples) {
  const InhomogeneousForm f(Mat::diagonal({1, 1, -1}), Vec{0, 0, r2});
  const LinearForm l(Vec{1, 1, r2});
  auto [f1, l1] = transform_pair(f, l, 1, 1, AffineMap::identity());
  EXPECT_EQ(f1, f);
  EXPECT_EQ(l1, l);
  const Vec w{1, -2, Rational(1, 3)};
  auto [f2, l2] = transform_pair(f, l, 1, 1, AffineMap::translation(w));
  EXPECT_EQ(f2.gram(), f.gram());
  EXPECT_EQ(f2.shift(), f.shift() + w);
}

TEST(FormsProperty, TransformPairFunctorialAndPointwise) {
  gen::Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    Mat a = gen::mat(rng, 3, 3);
    a = a + a.transpose();
    const InhomogeneousForm f(a, gen::vec(rng, 3));
    const LinearForm l(gen::vec(rng, 3));
    const AffineMap m1 = gen::affine(rng), m2 = gen::affine(rng);
    const Scalar l1 = gen::nonzero(rng), u1 = gen::nonzero(rng), l2 = gen::nonzero(rng), u2 = gen::nonzero(rng);
    const auto [fa, la] = transform_pair(f, l, l1, u1, m1);
    const auto [fb, lb] = transform_pair(fa, la, l2, u2, m2);
    const auto [fc, lc] = transform_pair(f, l, l1 * l2, u1 * u2, m1 * m2);
    ASSERT_EQ(fb, fc);
    ASSERT_EQ(lb, lc);
    const Vec x = gen::vec(rng, 3);
    ASSERT_EQ(eval_inhom(fa, x), l1 * eval_inhom(f, act(m1, x)));
    ASSERT_EQ(la(x), u1 * l(act(m1, x)));
  }
}

TEST(Forms, RestrictionExamples) {
  const InhomogeneousForm f(Mat::diagonal({1, 1, -1}), Vec(3));
  const Mat e12 = Mat::from_columns({Vec{1, 0, 0}, Vec{0, 1, 0}});
  const Mat e13 = Mat::from_columns({Vec{1, 0, 0}, Vec{0, 0, 1}});
  EXPECT_EQ(restrict_to_hyperplane(f, e12).gram, Mat::diagonal({1, 1}));
  const auto p = restrict_to_hyperplane(f, e13);
  EXPECT_EQ(p.gram, Mat::diagonal({1, -1}));
  EXPECT_TRUE(is_nondegenerate(QuadraticForm(p.gram)) && is_indefinite(QuadraticForm(p.gram)));

  const InhomogeneousForm g(Mat::diagonal({1, 1, -1}), Vec{0, 0, r2});
  const auto pg = restrict_to_hyperplane(g, e12);
  EXPECT_TRUE(pg.linear.is_zero());
  EXPECT_EQ(pg.constant, Scalar(-2));
  EXPECT_THROW(restrict_to_hyperplane(f, Mat::from_columns({Vec{1, 0, 0}, Vec{2, 0, 0}})), DomainError);
}

TEST(FormsProperty, RestrictionAgreesWithEvaluation) {
  gen::Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    Mat a = gen::mat(rng, 3, 3);
    a = a + a.transpose();
    const InhomogeneousForm f(a, gen::vec(rng, 3));
    const Mat b = Mat::from_columns({gen::int_vec(rng, 3, 3), gen::int_vec(rng, 3, 3)});
    if (rank(b) != 2) continue;
    const auto p = restrict_to_hyperplane(f, b);
    const Vec x = gen::vec(rng, 2);
    ASSERT_EQ(bilinear(x, p.gram, x) + dot(p.linear, x) + p.constant, eval_inhom(f, b * x));
  }
}

TEST(Hyperplane, ComplementBasisIsIntegralAndExtends) {
  for (const auto& c : std::vector<std::vector<long>>{{0, 1, 0}, {2, 3, 0}, {6, 10, 15}, {1, -1, 1, 2}}) {
    const Mat b = integral_complement_basis(c);
    Vec cv(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) cv[i] = Scalar(c[i]);
    EXPECT_TRUE((b.transpose() * cv).is_zero());
    for (const auto& e : b.entries()) EXPECT_TRUE(e.is_integer());
    // extend by an integral w with c·w = 1: [B | w] must be unimodular
    std::optional<Vec> w;
    std::vector<long> t(c.size(), -3);
    while (!w) {
      Vec tv(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) tv[i] = Scalar(t[i]);
      if (dot(cv, tv) == Scalar(1)) w = tv;
      std::size_t k = 0;
      while (k < t.size() && t[k] == 3) t[k++] = -3;
      ASSERT_LT(k, t.size());
      ++t[k];
    }
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < b.cols(); ++j) cols.push_back(b.column(j));
    cols.push_back(*w);
    EXPECT_EQ(abs(det(Mat::from_columns(cols))), Scalar(1));
  }
}

TEST(Hyperplane, SearchExamples) {
  const InhomogeneousForm f(Mat::diagonal({1, 1, -1}), Vec{0, 0, r2});
  const auto choice = find_good_hyperplane(f, 1);
  ASSERT_TRUE(choice);
  EXPECT_EQ(choice->normal, (std::vector<long>{0, 1, 0}));
  const auto p = restrict_to_hyperplane(f, choice->basis);
  EXPECT_TRUE(is_good_restriction(p));
  EXPECT_EQ(QuadraticPolynomial::from(choice->restricted).pullback(Mat::identity(2), Vec(2)).gram, p.gram);
  const Vec x{3, -4};
  EXPECT_EQ(eval_inhom(choice->restricted, x) + choice->offset, eval_inhom(f, choice->basis * x));

  EXPECT_FALSE(find_good_hyperplane(f, 0).has_value());
  EXPECT_THROW(find_good_hyperplane(InhomogeneousForm(Mat::identity(3), Vec{0, 0, r2}), 1), DomainError);
  EXPECT_THROW(find_good_hyperplane(InhomogeneousForm(Mat::diagonal({1, 1, -1}), Vec(3)), 1), DomainError);
}

}  // namespace
