#include <gtest/gtest.h>

#include "iqf/lie.hpp"
#include "iqf/normalization.hpp"
#include "iqf/reference_systems.hpp"
#include "support/gen.hpp"

using namespace iqf;

namespace {

const Scalar r2 = Scalar::sqrt_of(2);

std::vector<Scalar> params(std::initializer_list<Scalar> p) { return p; }

TEST(Lie, BracketExamples) {
  const LieElement e12(lie::unit(0, 1)), e23(lie::unit(1, 2)), e13(lie::unit(0, 2));
  EXPECT_EQ(bracket(e12, e23), e13);
  EXPECT_EQ(bracket(e23, e12), Scalar(-1) * e13);
  const LieElement t1 = LieElement::translation(Vec{1, 0, 0}), t2 = LieElement::translation(Vec{0, 1, 0});
  EXPECT_TRUE(bracket(t1, t2).is_zero());
  EXPECT_EQ(bracket(e12, t2), t1);  // Xw
  EXPECT_EQ(bracket(t2, e12), Scalar(-1) * t1);
  EXPECT_THROW(LieElement(Mat::identity(3)), DomainError);
}

TEST(Lie, Sl2TripleRelations) {
  const auto tri = lie::sl2_triple();
  const LieElement a(tri.a), u(tri.u), v(tri.v);
  EXPECT_EQ(bracket(u, a), Scalar(2) * u);
  EXPECT_EQ(bracket(v, a), Scalar(-2) * v);
  EXPECT_EQ(bracket(v, u), a);
  EXPECT_TRUE(is_nilpotent(tri.u));
  EXPECT_TRUE(is_nilpotent(tri.v));
  EXPECT_FALSE(is_nilpotent(tri.a));
  for (const Mat& x : {tri.a, tri.u, tri.v}) EXPECT_TRUE(lie::preserves_gram(x, lorentz_gram()));
}

TEST(LieProperty, JacobiAntisymmetryAndAdjoint) {
  gen::Rng rng(60);
  for (int i = 0; i < 200; ++i) {
    const LieElement x = gen::lie_element(rng), y = gen::lie_element(rng), z = gen::lie_element(rng);
    const LieElement jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    ASSERT_TRUE(jac.is_zero());
    ASSERT_EQ(bracket(x, y), Scalar(-1) * bracket(y, x));
    const Scalar c = gen::scalar(rng);
    ASSERT_EQ(bracket(x + c * y, z), bracket(x, z) + c * bracket(y, z));
    if (i % 4 == 0) {
      const AffineMap m = gen::affine(rng), n = gen::affine(rng);
      ASSERT_EQ(adjoint(m, bracket(x, y)), bracket(adjoint(m, x), adjoint(m, y)));
      ASSERT_EQ(adjoint(m * n, x), adjoint(m, adjoint(n, x)));
    }
  }
}

TEST(Lie, SpanCoordinates) {
  const Span s(lie::so21_basis());
  EXPECT_EQ(s.dim(), 3u);
  const LieElement e = lie::h(2, -1, Rational(1, 3));
  const auto c = s.coordinates(e);
  ASSERT_TRUE(c.has_value());
  LieElement back;
  const auto basis = s.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) back = back + (*c)[i] * basis[i];
  EXPECT_EQ(back, e);
  EXPECT_FALSE(s.coordinates(LieElement(lie::unit(0, 1))).has_value());
  EXPECT_TRUE(same_span(Span({lie::h(1, 0, 0), lie::h(1, 1, 0)}), Span({lie::h(0, 1, 0), lie::h(2, 0, 0)})));
}

TEST(Lie, ClosureAndRejection) {
  try {
    Subalgebra({LieElement(lie::unit(0, 1)), LieElement(lie::unit(1, 0))});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), "not_closed");
  }
  EXPECT_EQ(bracket_closure({LieElement(lie::unit(0, 1)), LieElement(lie::unit(1, 0))}).dim(), 3u);
  EXPECT_EQ(bracket_closure({LieElement(lie::unit(0, 1)), LieElement(lie::unit(1, 2))}).dim(), 3u);
  EXPECT_EQ(bracket_closure(lie::sl3_basis()).dim(), 8u);
  auto gens = lie::so21_basis();
  gens.emplace_back(Mat::diagonal({1, 1, -2}));
  EXPECT_EQ(bracket_closure(gens).dim(), 8u);
}

TEST(Lie, AdKernel) {
  const auto tri = lie::sl2_triple();
  const Subalgebra sl3 = catalog("sl3");
  EXPECT_EQ(ad_kernel(LieElement(tri.u), sl3).size(), 2u);
  EXPECT_EQ(ad_kernel(LieElement(Mat::diagonal({1, 2, -3})), sl3).size(), 2u);  // regular diagonal
  EXPECT_THROW(ad_kernel(LieElement::translation(Vec{1, 0, 0}), sl3), DomainError);
}

TEST(Lie, Unimodularity) {
  EXPECT_TRUE(is_unimodular(catalog("sl3")));
  EXPECT_TRUE(is_unimodular(catalog("so21")));
  EXPECT_TRUE(is_unimodular(catalog("W", {}, Translation::full)));
  EXPECT_TRUE(is_unimodular(catalog("N")));
  // diag(1,−1,0) expands e₁₂: tr ad = 2
  EXPECT_FALSE(is_unimodular(Subalgebra({LieElement(Mat::diagonal({1, -1, 0})), LieElement(lie::unit(0, 1))})));
  EXPECT_FALSE(is_unimodular(catalog("N1")));
}

TEST(Lie, CatalogShapes) {
  EXPECT_EQ(catalog("V1").dim(), 1u);
  EXPECT_EQ(catalog("V").dim(), 2u);
  EXPECT_EQ(catalog("W").dim(), 3u);
  EXPECT_EQ(catalog("N").dim(), 4u);
  EXPECT_EQ(catalog("Q1").dim(), 5u);
  EXPECT_EQ(catalog("Q2").dim(), 5u);
  EXPECT_EQ(catalog("sl3", {}, Translation::full).dim(), 11u);
  EXPECT_EQ(catalog("P_beta", params({2})).dim(), 4u);
  EXPECT_EQ(catalog("H_alpha", params({r2})).dim(), 1u);
  EXPECT_EQ(catalog("B_alpha", params({1})).dim(), 4u);
  EXPECT_EQ(catalog("W", {}, Translation::plane).name(), "W x R^2");
  EXPECT_EQ(catalog("K_t", params({1}), Translation::full).name(), "K_t(1) x R^3");
  EXPECT_THROW(catalog("nope"), DomainError);
  EXPECT_THROW(catalog("R_t"), DomainError);
  EXPECT_THROW(catalog("H_alpha", params({1}), Translation::line), DomainError);
}

TEST(Lie, ConjugatedSoQ0) {
  EXPECT_TRUE(same_span(catalog("R_t", params({0})).span(), catalog("soQ0").span()));
  EXPECT_TRUE(same_span(catalog("K_t", params({0})).span(), catalog("soQ0").span()));
  for (const Scalar& t : {Scalar(1), Scalar(-2), r2}) {
    const Subalgebra k = catalog("K_t", params({t}));
    EXPECT_EQ(k.dim(), 3u);
    // the conjugate preserves the conjugated Gram matrix
    const Mat vi = inverse(lie::v_shear(t));
    const Mat sigma = vi.transpose() * tangent_normal_gram() * vi;
    for (const auto& e : k.basis()) EXPECT_TRUE(lie::preserves_gram(e.matrix(), sigma));
  }
  // the three-term display is closed only at t = 0
  EXPECT_FALSE(is_bracket_closed(Span(catalog_display("R_t", params({1})))));
}

TEST(Lie, ContainmentExamples) {
  const Subalgebra h = catalog("H_alpha", params({1}));
  EXPECT_FALSE(contains(catalog("V1", {}, Translation::line), h));
  EXPECT_TRUE(contains(catalog("V1", {}, Translation::plane), h));
  EXPECT_TRUE(contains(catalog("A_alpha", params({1})), h));
  EXPECT_FALSE(contains(catalog("A_alpha", params({2})), h));
  EXPECT_TRUE(contains(catalog("W", {}, Translation::full), catalog("V", {}, Translation::plane)));
}

TEST(Lie, StabilizerAlgebras) {
  const QuadraticForm q(lorentz_gram());
  EXPECT_TRUE(same_span(stabilizer_algebra(InhomogeneousForm(q, Vec(3))).span(), Span(lie::so21_basis())));

  const Vec xi{1, Rational(-1, 2), r2};
  std::vector<LieElement> shifted;
  for (const auto& e : lie::so21_basis()) shifted.push_back(adjoint(AffineMap::translation(-xi), e));
  EXPECT_TRUE(same_span(stabilizer_algebra(InhomogeneousForm(q, xi)).span(), Span(shifted)));

  const Scalar alpha = Scalar(3) - r2;
  EXPECT_TRUE(same_span(stabilizer_algebra(tangent_normal_form(alpha), tangent_normal_linear()).span(),
                        catalog("H_alpha", params({alpha})).span()));

  const PairSystem wp = worked_pair();
  const NormalizationCertificate cert = normalize_pair(wp.q, wp.xi, wp.l);
  const Subalgebra stab = stabilizer_algebra(wp.form(), wp.l);
  ASSERT_EQ(stab.dim(), 1u);
  EXPECT_TRUE(stab.contains(adjoint(cert.map, catalog("H_alpha", params({cert.alpha})).basis().front())));
}

}  // namespace
