#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "iqf/affine.hpp"
#include "iqf/error.hpp"
#include "iqf/matrix.hpp"

namespace iqf {

/// Q(x) = xᵀAx with A symmetric.
class QuadraticForm {
 public:
  explicit QuadraticForm(Mat gram) : gram_(std::move(gram)) {
    if (!gram_.is_symmetric()) throw DomainError("not_symmetric", "Gram matrix must be square and symmetric");
  }
  const Mat& gram() const { return gram_; }
  std::size_t dim() const { return gram_.rows(); }
  Scalar operator()(const Vec& x) const { return bilinear(x, gram_, x); }

 private:
  Mat gram_;
};

/// L(x) = ℓ·x + c. Homogeneous forms have c = 0; the constant only appears
/// after pulling back through a translation.
class LinearForm {
 public:
  explicit LinearForm(Vec coeffs, Scalar constant = Scalar()) : coeffs_(std::move(coeffs)), constant_(std::move(constant)) {}
  const Vec& coeffs() const { return coeffs_; }
  const Scalar& constant() const { return constant_; }
  std::size_t dim() const { return coeffs_.size(); }
  bool is_homogeneous() const { return constant_.is_zero(); }
  Scalar operator()(const Vec& x) const { return dot(coeffs_, x) + constant_; }
  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    return a.coeffs_ == b.coeffs_ && a.constant_ == b.constant_;
  }

 private:
  Vec coeffs_;
  Scalar constant_;
};

/// Q_ξ(x) = (x+ξ)ᵀA(x+ξ).
class InhomogeneousForm {
 public:
  InhomogeneousForm(Mat gram, Vec shift) : gram_(std::move(gram)), shift_(std::move(shift)) {
    if (!gram_.is_symmetric()) throw DomainError("not_symmetric", "Gram matrix must be square and symmetric");
    if (shift_.size() != gram_.rows()) throw DomainError("dimension_mismatch", "shift length differs from form dimension");
  }
  InhomogeneousForm(const QuadraticForm& q, Vec shift) : InhomogeneousForm(q.gram(), std::move(shift)) {}

  const Mat& gram() const { return gram_; }
  const Vec& shift() const { return shift_; }
  std::size_t dim() const { return gram_.rows(); }
  QuadraticForm homogeneous_part() const { return QuadraticForm(gram_); }

  friend bool operator==(const InhomogeneousForm& a, const InhomogeneousForm& b) {
    return a.gram_ == b.gram_ && a.shift_ == b.shift_;
  }

 private:
  Mat gram_;
  Vec shift_;
};

inline Scalar eval_inhom(const InhomogeneousForm& f, const Vec& x) {
  const Vec y = x + f.shift();
  return bilinear(y, f.gram(), y);
}

/// Expanded degree-two polynomial xᵀGx + h·x + c. The linear vector h holds
/// the full coefficients, so Q_ξ expands to (A, 2Aξ, ξᵀAξ).
struct QuadraticPolynomial {
  Mat gram;
  Vec linear;
  Scalar constant;

  static QuadraticPolynomial from(const InhomogeneousForm& f) {
    const Vec a_xi = f.gram() * f.shift();
    return {f.gram(), Scalar(2) * a_xi, dot(f.shift(), a_xi)};
  }
  static QuadraticPolynomial square_of(const LinearForm& l) {
    const std::size_t n = l.dim();
    Mat g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = l.coeffs()[i] * l.coeffs()[j];
    return {g, Scalar(2) * l.constant() * l.coeffs(), l.constant() * l.constant()};
  }

  std::size_t dim() const { return gram.rows(); }
  Scalar operator()(const Vec& x) const { return bilinear(x, gram, x) + dot(linear, x) + constant; }

  /// x ↦ P(Bx + w) for an n×m matrix B.
  QuadraticPolynomial pullback(const Mat& b, const Vec& w) const {
    const Mat bt = b.transpose();
    return {bt * gram * b, bt * (Scalar(2) * (gram * w) + linear), (*this)(w)};
  }
  QuadraticPolynomial pullback(const AffineMap& m) const { return pullback(m.linear_part(), m.translation_part()); }

  friend QuadraticPolynomial operator*(const Scalar& c, const QuadraticPolynomial& p) {
    return {c * p.gram, c * p.linear, c * p.constant};
  }
  friend QuadraticPolynomial operator+(const QuadraticPolynomial& a, const QuadraticPolynomial& b) {
    return {a.gram + b.gram, a.linear + b.linear, a.constant + b.constant};
  }
  friend QuadraticPolynomial operator-(const QuadraticPolynomial& a, const QuadraticPolynomial& b) {
    return {a.gram - b.gram, a.linear - b.linear, a.constant - b.constant};
  }
  friend bool operator==(const QuadraticPolynomial& a, const QuadraticPolynomial& b) {
    return a.gram == b.gram && a.linear == b.linear && a.constant == b.constant;
  }

  /// Monomial coefficients: x_i x_j (i ≤ j), then x_i, then 1.
  std::vector<Scalar> coefficients(bool with_constant = true) const {
    std::vector<Scalar> out;
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) out.push_back(i == j ? gram(i, i) : Scalar(2) * gram(i, j));
    for (std::size_t i = 0; i < n; ++i) out.push_back(linear[i]);
    if (with_constant) out.push_back(constant);
    return out;
  }

  /// (A, ξ) shape when A is invertible: ξ = A⁻¹h/2. The constant is dropped.
  std::optional<InhomogeneousForm> to_inhomogeneous() const {
    if (det(gram).is_zero()) return std::nullopt;
    return InhomogeneousForm(gram, inverse(gram) * (Scalar(Rational(1, 2)) * linear));
  }
};

struct CongruenceDiagonalization {
  Mat transform;                // P with PᵀAP = diag(diagonal)
  std::vector<Scalar> diagonal;
};

/// Lagrange diagonalization by symmetric row/column operations.
inline CongruenceDiagonalization diagonalize(const Mat& gram) {
  if (!gram.is_symmetric()) throw DomainError("not_symmetric", "diagonalize expects a symmetric matrix");
  const std::size_t n = gram.rows();
  Mat a = gram;
  Mat p = Mat::identity(n);
  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < n; ++k) std::swap(p(k, i), p(k, j));
  };
  // x_target ← x_target + c·x_source on both sides
  auto add_index = [&](std::size_t target, std::size_t source, const Scalar& c) {
    for (std::size_t k = 0; k < n; ++k) a(target, k) += c * a(source, k);
    for (std::size_t k = 0; k < n; ++k) a(k, target) += c * a(k, source);
    for (std::size_t k = 0; k < n; ++k) p(k, target) += c * p(k, source);
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, piv).is_zero()) ++piv;
    if (piv == n) {
      bool found = false;
      for (std::size_t i = k; i < n && !found; ++i)
        for (std::size_t j = i + 1; j < n && !found; ++j)
          if (!a(i, j).is_zero()) {
            add_index(i, j, Scalar(1));  // a_ii becomes 2a_ij ≠ 0
            piv = i;
            found = true;
          }
      if (!found) break;
    }
    swap_index(k, piv);
    const Scalar inv = Scalar(1) / a(k, k);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j).is_zero()) continue;
      add_index(j, k, -(a(k, j) * inv));
    }
  }
  std::vector<Scalar> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  return {std::move(p), std::move(diag)};
}

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

inline Signature signature(const QuadraticForm& q) {
  Signature s;
  for (const auto& d : diagonalize(q.gram()).diagonal) {
    switch (d.sign()) {
      case 1: ++s.positive; break;
      case -1: ++s.negative; break;
      default: ++s.zero; break;
    }
  }
  return s;
}

inline bool is_nondegenerate(const QuadraticForm& q) { return !det(q.gram()).is_zero(); }

inline bool is_indefinite(const QuadraticForm& q) {
  const Signature s = signature(q);
  return s.positive > 0 && s.negative > 0;
}

/// The plane {L = 0} touches the cone {Q = 0} iff ℓ·adj(A)·ℓᵀ = 0.
inline bool is_tangent(const QuadraticForm& q, const LinearForm& l) {
  if (q.dim() != 3 || l.dim() != 3) throw DomainError("dimension_mismatch", "tangency is defined for ternary forms");
  if (!is_nondegenerate(q)) throw DomainError("degenerate_form", "tangency test needs a nondegenerate form");
  if (l.coeffs().is_zero()) throw DomainError("zero_linear_form", "tangency test needs a nonzero linear form");
  if (!is_indefinite(q)) throw DomainError("definite_form", "tangency test needs an indefinite form");
  return bilinear(l.coeffs(), adjugate(q.gram()), l.coeffs()).is_zero();
}

/// F′(x) = λF(m.x), L′(x) = μL(m.x).
inline std::pair<InhomogeneousForm, LinearForm> transform_pair(const InhomogeneousForm& f, const LinearForm& l,
                                                               const Scalar& lambda, const Scalar& mu,
                                                               const AffineMap& m) {
  if (lambda.is_zero() || mu.is_zero()) throw DomainError("zero_scale", "equivalence scales must be nonzero");
  if (f.dim() != 3 || l.dim() != 3) throw DomainError("dimension_mismatch", "pair transforms act on R^3");
  const Mat& g = m.linear_part();
  Mat gram = lambda * (g.transpose() * f.gram() * g);
  Vec shift = inverse(g) * (f.shift() + m.translation_part());
  Vec coeffs = mu * (g.transpose() * l.coeffs());
  Scalar constant = mu * (dot(l.coeffs(), m.translation_part()) + l.constant());
  return {InhomogeneousForm(std::move(gram), std::move(shift)), LinearForm(std::move(coeffs), std::move(constant))};
}

/// x ↦ F(Bx) for an n×(n−1) basis B of a hyperplane. The shift is not
/// re-expressed in hyperplane coordinates: the result keeps the expanded
/// (BᵀAB, 2BᵀAξ, ξᵀAξ) triple; `to_inhomogeneous()` recovers an (A′, ξ′)
/// shape when A′ is nondegenerate.
inline QuadraticPolynomial restrict_to_hyperplane(const InhomogeneousForm& f, const Mat& basis) {
  const std::size_t n = f.dim();
  if (basis.rows() != n || basis.cols() + 1 != n) {
    throw DomainError("dimension_mismatch", "hyperplane basis must be n x (n-1)");
  }
  if (rank(basis) != n - 1) throw DomainError("rank_deficient", "hyperplane basis is rank deficient");
  return QuadraticPolynomial::from(f).pullback(basis, Vec(n));
}

}  // namespace iqf
