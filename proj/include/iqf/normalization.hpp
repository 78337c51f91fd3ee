#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "iqf/affine.hpp"
#include "iqf/forms.hpp"

namespace iqf {

/// Q₀(x) = 2x₁x₃ − x₂², the tangent normal form.
inline Mat tangent_normal_gram() {
  return Mat{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}};
}

/// L₀(x) = x₃.
inline LinearForm tangent_normal_linear() { return LinearForm(Vec{0, 0, 1}); }

/// (Q₀)_{(0,0,α)}
inline InhomogeneousForm tangent_normal_form(const Scalar& alpha) {
  return InhomogeneousForm(tangent_normal_gram(), Vec{0, 0, alpha});
}

/// x₁² + x₂² − x₃², the single-form normal form.
inline Mat lorentz_gram() { return Mat::diagonal({1, 1, -1}); }

/// Witness that λQ_ξ((g,v).x) = (Q₀)_{(0,0,α)}(x) and μL((g,v).x) = x₃.
struct NormalizationCertificate {
  Scalar lambda;
  Scalar mu;
  AffineMap map;
  Scalar alpha;
  Scalar detg;
};

struct PairResidual {
  std::array<Scalar, 10> form{};    // x₁², x₁x₂, x₁x₃, x₂², x₂x₃, x₃², x₁, x₂, x₃, 1
  std::array<Scalar, 4> linear{};   // x₁, x₂, x₃, 1

  bool is_zero() const {
    for (const auto& c : form)
      if (!c.is_zero()) return false;
    for (const auto& c : linear)
      if (!c.is_zero()) return false;
    return true;
  }
};

inline PairResidual pair_residual(const NormalizationCertificate& cert, const InhomogeneousForm& f,
                                  const LinearForm& l) {
  const QuadraticPolynomial lhs = cert.lambda * QuadraticPolynomial::from(f).pullback(cert.map);
  const QuadraticPolynomial rhs = QuadraticPolynomial::from(tangent_normal_form(cert.alpha));
  const auto diff = (lhs - rhs).coefficients();
  PairResidual r;
  std::copy(diff.begin(), diff.end(), r.form.begin());
  const Mat& g = cert.map.linear_part();
  const Vec lin = cert.mu * (g.transpose() * l.coeffs()) - tangent_normal_linear().coeffs();
  for (std::size_t i = 0; i < 3; ++i) r.linear[i] = lin[i];
  r.linear[3] = cert.mu * l(cert.map.translation_part());
  return r;
}

namespace detail {

inline bool independent(const Vec& a, const Vec& b) { return rank(Mat::from_columns({a, b})) == 2; }

}  // namespace detail

/*
 * Reduction of a tangent pair to ((Q₀)_{(0,0,α)}, L₀):
 *   c₁ spans the radical of Q restricted to ker L (the tangency line),
 *   c₂ is the first e_i projected into ker L (along the pivot coordinate of
 *      ℓ) that is independent of c₁; λ = −1/Q(c₂),
 *   c₃ solves B(c₁,c₃) = 1/λ, B(c₂,c₃) = 0, then is sheared along c₁ until
 *      Q(c₃) = 0; μ = 1/L(c₃),
 *   g = [c₁ c₂ c₃], α = μL(ξ), v = g(0,0,α)ᵀ − ξ.
 * The certificate is checked exactly before it is returned.
 */
inline NormalizationCertificate normalize_pair(const QuadraticForm& q, const Vec& xi, const LinearForm& l) {
  if (xi.size() != 3) throw DomainError("dimension_mismatch", "shift must be a 3-vector");
  if (!l.is_homogeneous()) throw DomainError("precondition", "linear form must be homogeneous");
  if (!is_tangent(q, l)) throw DomainError("not_tangent", "plane {L=0} is not tangent to the cone {Q=0}");
  const Mat& a = q.gram();
  const Vec& ell = l.coeffs();

  Mat row(1, 3);
  for (std::size_t i = 0; i < 3; ++i) row(0, i) = ell[i];
  const auto kernel = nullspace(row);
  const Mat k = Mat::from_columns(kernel);
  const auto radical = nullspace(k.transpose() * a * k);
  if (radical.size() != 1) throw DomainError("not_tangent", "restriction to ker L is not of rank one");
  const Vec c1 = k * radical.front();

  std::size_t pivot = 0;
  while (ell[pivot].is_zero()) ++pivot;
  std::optional<Vec> c2;
  for (std::size_t i = 0; i < 3 && !c2; ++i) {
    Vec cand = Vec::unit(3, i) - (ell[i] / ell[pivot]) * Vec::unit(3, pivot);
    if (!cand.is_zero() && detail::independent(c1, cand)) c2 = cand;
  }
  const Scalar q2 = q(*c2);
  const Scalar lambda = Scalar(-1) / q2;

  Mat conditions(2, 3);
  const Vec ac1 = a * c1;
  const Vec ac2 = a * *c2;
  for (std::size_t i = 0; i < 3; ++i) {
    conditions(0, i) = ac1[i];
    conditions(1, i) = ac2[i];
  }
  const auto sol = solve_linear(conditions, Vec{Scalar(1) / lambda, Scalar(0)});
  if (!sol) throw DomainError("not_tangent", "no vector completes the tangent frame");
  Vec c3 = sol->particular;
  c3 = c3 + (-(lambda * q(c3)) / Scalar(2)) * c1;
  const Scalar mu = Scalar(1) / l(c3);

  Mat g = Mat::from_columns({c1, *c2, c3});
  const Scalar alpha = mu * l(xi);
  Vec v = g * Vec{0, 0, alpha} - xi;
  NormalizationCertificate cert{lambda, mu, AffineMap(g, v), alpha, Scalar()};
  cert.detg = cert.map.det();
  if (!pair_residual(cert, InhomogeneousForm(q, xi), l).is_zero()) {
    throw DomainError("internal", "normalization certificate failed its residual check");
  }
  return cert;
}

/// Rescales g by c = detg^(-1/3) when that cube root lies in the field;
/// the scales become λ/c², μ/c and α/c, v is unchanged. Revalidated exactly.
inline std::optional<NormalizationCertificate> unit_det_certificate(const NormalizationCertificate& cert,
                                                                    const InhomogeneousForm& f,
                                                                    const LinearForm& l) {
  const auto root = cbrt_in_field(cert.detg);
  if (!root) return std::nullopt;
  const Scalar c = Scalar(1) / *root;
  NormalizationCertificate out{cert.lambda / (c * c), cert.mu / c,
                               AffineMap(c * cert.map.linear_part(), cert.map.translation_part()), cert.alpha / c,
                               Scalar()};
  out.detg = out.map.det();
  if (out.detg != Scalar(1) || !pair_residual(out, f, l).is_zero()) return std::nullopt;
  return out;
}

struct SingleCertificate {
  Scalar lambda;
  AffineMap map;
};

/// λQ_ξ((g,v).x) − (x₁² + x₂² − x₃²), all ten coefficients.
inline std::vector<Scalar> single_residual(const SingleCertificate& cert, const InhomogeneousForm& f) {
  const QuadraticPolynomial lhs = cert.lambda * QuadraticPolynomial::from(f).pullback(cert.map);
  const QuadraticPolynomial rhs{lorentz_gram(), Vec(3), Scalar()};
  return (lhs - rhs).coefficients();
}

namespace detail {

inline long field_of(const Mat& m) {
  for (const auto& e : m.entries())
    if (!e.is_rational()) return e.field();
  return 1;
}

// Candidate frame M (columns in diagonal coordinates) with Mᵀ(λ₀ diag(e))M = diag(1,1,−1).
inline std::optional<std::pair<Scalar, Mat>> lorentz_frame(const std::vector<Scalar>& e, long d) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < 3; ++i) (e[i].sign() > 0 ? pos : neg).push_back(i);
  if (pos.size() != 2 || neg.size() != 1) return std::nullopt;
  const std::size_t n0 = neg.front();

  // every axis rescaled on its own
  std::vector<Scalar> scales{Scalar(1), Scalar(1) / e[pos[0]], Scalar(1) / e[pos[1]], Scalar(-1) / e[n0]};
  for (const Scalar& l0 : scales) {
    Mat m(3, 3);
    bool ok = true;
    const std::array<std::size_t, 3> order{pos[0], pos[1], n0};
    for (std::size_t col = 0; col < 3 && ok; ++col) {
      const std::size_t axis = order[col];
      const auto root = sqrt_in_field(abs(l0 * e[axis]), d);
      if (!root) ok = false;
      else m(axis, col) = Scalar(1) / *root;
    }
    if (ok) return std::pair{l0, m};
  }

  // one positive axis kept, the other paired with the negative axis as a
  // hyperbolic plane A′y² + B′z² = (p − q)(p + q)
  for (std::size_t keep = 0; keep < 2; ++keep) {
    const std::size_t c = pos[keep];
    const std::size_t pa = pos[1 - keep];
    const Scalar l0 = Scalar(1) / e[c];
    const Scalar ap = l0 * e[pa];
    const auto sigma = sqrt_in_field(-(e[n0] / e[pa]), d);
    if (!sigma) continue;
    const Scalar inv = Scalar(1) / ap;
    const Scalar half(Rational(1, 2));
    Mat m(3, 3);
    m(c, 0) = Scalar(1);
    m(pa, 1) = half * (Scalar(1) + inv);
    m(pa, 2) = half * (inv - Scalar(1));
    m(n0, 1) = half * (inv - Scalar(1)) / *sigma;
    m(n0, 2) = half * (inv + Scalar(1)) / *sigma;
    return std::pair{l0, m};
  }
  return std::nullopt;
}

// Isotropic vector with two integral coordinates in [−h, h]; the third
// solves a quadratic inside the field.
inline std::optional<Vec> find_isotropic(const Mat& a, long d, long h = 60) {
  for (std::size_t k = 0; k < 3; ++k)
    if (a(k, k).is_zero()) return Vec::unit(3, k);
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t i = (k + 1) % 3, j = (k + 2) % 3;
    for (long s = 0; s <= h; ++s)
      for (long t = (s == 0 ? 1 : -h); t <= h; ++t) {
        Vec x(3);
        x[i] = Scalar(s);
        x[j] = Scalar(t);
        const Scalar b = a(k, i) * x[i] + a(k, j) * x[j];
        const Scalar c = bilinear(x, a, x);
        const auto r = sqrt_in_field(b * b - a(k, k) * c, d);
        if (!r) continue;
        x[k] = (*r - b) / a(k, k);
        return x;
      }
  }
  return std::nullopt;
}

// From an isotropic c: hyperbolic partner w (Q(w) = 0, B(c,w) = 1) and the
// orthogonal line z. Then λQ(x₁z + (x₂+x₃)c + t(x₂−x₃)w) = x₁² + x₂² − x₃²
// for λ = 1/Q(z), t = Q(z)/2.
inline std::pair<Scalar, Mat> hyperbolic_frame(const Mat& a, const Vec& c) {
  const Vec ac = a * c;
  std::size_t i = 0;
  while (ac[i].is_zero()) ++i;
  const Vec e = Vec::unit(3, i);
  const Scalar beta = ac[i];
  Vec w = e - (bilinear(e, a, e) / (Scalar(2) * beta)) * c;
  w = (Scalar(1) / beta) * w;
  Mat cond(2, 3);
  const Vec aw = a * w;
  for (std::size_t k = 0; k < 3; ++k) {
    cond(0, k) = ac[k];
    cond(1, k) = aw[k];
  }
  const Vec z = nullspace(cond).front();
  const Scalar qz = bilinear(z, a, z);
  const Scalar t = qz / Scalar(2);
  return {Scalar(1) / qz, Mat::from_columns({z, c + t * w, c - t * w})};
}

}  // namespace detail

/// λQ(gx) = x₁² + x₂² − x₃² with v = −ξ, so λQ_ξ((g,v).x) = λQ(gx).
/// Diagonal rescalings are tried first, then a bounded isotropic-vector search.
/// Throws "not_representable" when neither finds a frame inside Q(√d).
inline SingleCertificate normalize_single(const QuadraticForm& q, const Vec& xi) {
  if (q.dim() != 3 || xi.size() != 3) throw DomainError("dimension_mismatch", "single normalization is ternary");
  if (!is_nondegenerate(q)) throw DomainError("degenerate_form", "form is degenerate");
  if (!is_indefinite(q)) throw DomainError("definite_form", "form is definite");
  const auto diag = diagonalize(q.gram());
  const Signature s = signature(q);
  const Scalar flip = s.positive == 2 ? Scalar(1) : Scalar(-1);
  std::vector<Scalar> e;
  for (const auto& x : diag.diagonal) e.push_back(flip * x);
  const long d = detail::field_of(q.gram());
  SingleCertificate cert{Scalar(), AffineMap::identity()};
  if (const auto frame = detail::lorentz_frame(e, d)) {
    cert = {flip * frame->first, AffineMap(diag.transform * frame->second, -xi)};
  } else if (const auto y = detail::find_isotropic(q.gram(), d)) {
    const auto [lambda, g] = detail::hyperbolic_frame(q.gram(), *y);
    cert = {lambda, AffineMap(g, -xi)};
  } else {
    throw DomainError("not_representable", "no Lorentz frame for this form inside its quadratic field");
  }
  for (const auto& c : single_residual(cert, InhomogeneousForm(q, xi))) {
    if (!c.is_zero()) throw DomainError("internal", "single normalization failed its residual check");
  }
  return cert;
}

}  // namespace iqf
