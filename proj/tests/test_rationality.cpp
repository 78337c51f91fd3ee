#include <gtest/gtest.h>

#include "iqf/rationality.hpp"
#include "iqf/reference_systems.hpp"
#include "support/gen.hpp"

using namespace iqf;

namespace {

const Scalar r2 = Scalar::sqrt_of(2);

TEST(Rationality, RayExamples) {
  EXPECT_TRUE(is_rational_ray(std::vector<Scalar>{r2, Scalar(2) * r2, Scalar(0)}));
  EXPECT_TRUE(is_rational_ray(std::vector<Scalar>{Scalar(0), Scalar(0)}));
  EXPECT_TRUE(is_rational_ray(std::vector<Scalar>{Scalar(1) + r2, Scalar(3) + Scalar(3) * r2}));
  EXPECT_FALSE(is_rational_ray(std::vector<Scalar>{Scalar(1), r2}));
  EXPECT_FALSE(is_rational_ray(std::vector<Scalar>{Scalar(1) + r2, Scalar(1) - r2}));
}

TEST(Rationality, IrrationalShiftCountsEvenWithRationalGram) {
  EXPECT_TRUE(is_irrational_inhom(worked_pair().form()));
  EXPECT_FALSE(is_irrational_inhom(rational_control().form()));
  // a scalar multiple of a rational form stays rational
  EXPECT_FALSE(is_irrational_inhom(InhomogeneousForm(r2 * Mat::diagonal({1, 1, -1}), Vec{1, 2, 3})));
  EXPECT_TRUE(is_irrational_inhom(InhomogeneousForm(Mat::diagonal({1, r2, -1}), Vec(3))));
}

TEST(Rationality, WorkedPairPassesEverything) {
  const PairSystem s = worked_pair();
  const HypothesisReport r = check_hypotheses(s.q, s.xi, s.l);
  EXPECT_TRUE(r.nondegenerate);
  EXPECT_TRUE(r.indefinite);
  EXPECT_TRUE(r.tangent);
  EXPECT_FALSE(r.q_irrational);
  EXPECT_TRUE(r.xi_irrational);
  EXPECT_TRUE(r.form_irrational);
  EXPECT_TRUE(r.combo_condition);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_TRUE(r.all_pass());
}

TEST(Rationality, SquareControlFailsWithWitness) {
  const PairSystem s = square_control();
  const HypothesisReport r = check_hypotheses(s.q, s.xi, s.l);
  EXPECT_TRUE(r.tangent);
  EXPECT_FALSE(r.combo_condition);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->a, Scalar(0));
  EXPECT_EQ(r.witness->b, Scalar(1));
  EXPECT_FALSE(r.all_pass());
}

TEST(Rationality, RationalControlFailsWithWitness) {
  const PairSystem s = rational_control();
  const HypothesisReport r = check_hypotheses(s.q, s.xi, s.l);
  EXPECT_TRUE(r.tangent);
  EXPECT_FALSE(r.form_irrational);
  EXPECT_FALSE(r.combo_condition);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->a, Scalar(1));
  EXPECT_EQ(r.witness->b, Scalar(0));
}

TEST(Rationality, NonTangentAndInputErrors) {
  const HypothesisReport r = check_hypotheses(QuadraticForm(Mat::diagonal({1, 1, -1})), Vec{0, 0, r2},
                                              LinearForm(Vec{0, 0, 1}));
  EXPECT_FALSE(r.tangent);
  EXPECT_FALSE(r.all_pass());
  const HypothesisReport d = check_hypotheses(QuadraticForm(Mat::identity(3)), Vec(3), LinearForm(Vec{1, 0, 0}));
  EXPECT_FALSE(d.indefinite);
  EXPECT_FALSE(d.tangent);
  EXPECT_THROW(check_hypotheses(QuadraticForm(Mat::identity(3)), Vec(3), LinearForm(Vec{1, 0, 0}, 1)), DomainError);
}

// A hidden rational combination must always be found, and its witness must be valid.
TEST(RationalityProperty, PlantedCombinationIsDetected) {
  gen::Rng rng(31);
  int tested = 0;
  for (int i = 0; i < 300 && tested < 100; ++i) {
    Mat g(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = r; c < 3; ++c) g(r, c) = g(c, r) = Scalar(gen::rational(rng));
    Vec h(3);
    for (std::size_t k = 0; k < 3; ++k) h[k] = Scalar(gen::rational(rng));
    const QuadraticPolynomial rational_part{g, h, Scalar()};
    const LinearForm l(gen::vec(rng, 3));
    const Scalar b = gen::nonzero(rng);
    const Scalar scale = gen::nonzero(rng);
    const QuadraticPolynomial p = scale * (rational_part - b * QuadraticPolynomial::square_of(l));
    const auto f = p.to_inhomogeneous();
    if (!f) continue;
    ++tested;
    const ComboVerdict v = check_combo_condition(*f, l);
    ASSERT_FALSE(v.holds);
    ASSERT_TRUE(v.witness.has_value());
    ASSERT_FALSE(v.witness->a.is_zero() && v.witness->b.is_zero());
    ASSERT_FALSE(is_irrational_polynomial(combination(*f, l, v.witness->a, v.witness->b)));
  }
  EXPECT_EQ(tested, 100);
}

// Hypotheses are invariant under linear changes of frame and nonzero rescaling.
TEST(RationalityProperty, HypothesesInvariantUnderEquivalence) {
  gen::Rng rng(32);
  for (const PairSystem& s : {worked_pair(), square_control(), rational_control()}) {
    const HypothesisReport base = check_hypotheses(s.q, s.xi, s.l);
    for (int i = 0; i < 30; ++i) {
      const AffineMap m = AffineMap::linear(gen::unimodular(rng));
      const auto [f, l] = transform_pair(s.form(), s.l, gen::nonzero(rng), gen::nonzero(rng), m);
      const HypothesisReport r = check_hypotheses(f.homogeneous_part(), f.shift(), l);
      ASSERT_EQ(r.tangent, base.tangent);
      ASSERT_EQ(r.combo_condition, base.combo_condition);
      ASSERT_EQ(r.form_irrational, base.form_irrational);
    }
  }
}

}  // namespace
