#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iqf/affine.hpp"
#include "iqf/error.hpp"
#include "iqf/forms.hpp"
#include "iqf/matrix.hpp"

namespace iqf {

/// Element (X, u) of sl(3) ⋉ R³.
class LieElement {
 public:
  LieElement() : x_(3, 3), u_(3) {}
  LieElement(Mat x, Vec u) : x_(std::move(x)), u_(std::move(u)) {
    if (x_.rows() != 3 || x_.cols() != 3 || u_.size() != 3) {
      throw DomainError("dimension_mismatch", "Lie elements are (3x3, 3) pairs");
    }
    if (!x_.trace().is_zero()) throw DomainError("not_traceless", "matrix part must be traceless");
  }
  explicit LieElement(Mat x) : LieElement(std::move(x), Vec(3)) {}

  static LieElement translation(Vec u) { return LieElement(Mat(3, 3), std::move(u)); }

  const Mat& matrix() const { return x_; }
  const Vec& vector() const { return u_; }

  /// 12 coordinates: X row-major, then u.
  Vec coords() const {
    Vec out(12);
    for (std::size_t i = 0; i < 9; ++i) out[i] = x_.entries()[i];
    for (std::size_t i = 0; i < 3; ++i) out[9 + i] = u_[i];
    return out;
  }
  static LieElement from_coords(const Vec& c) {
    Mat x(3, 3);
    for (std::size_t i = 0; i < 9; ++i) x(i / 3, i % 3) = c[i];
    return LieElement(std::move(x), Vec{c[9], c[10], c[11]});
  }

  bool is_zero() const { return x_.is_zero() && u_.is_zero(); }

  friend LieElement operator+(const LieElement& a, const LieElement& b) { return {a.x_ + b.x_, a.u_ + b.u_}; }
  friend LieElement operator-(const LieElement& a, const LieElement& b) { return {a.x_ - b.x_, a.u_ - b.u_}; }
  friend LieElement operator*(const Scalar& c, const LieElement& a) { return {c * a.x_, c * a.u_}; }
  friend bool operator==(const LieElement& a, const LieElement& b) { return a.x_ == b.x_ && a.u_ == b.u_; }

 private:
  Mat x_;
  Vec u_;
};

/// [(X,u),(Y,w)] = ([X,Y], Xw − Yu)
inline LieElement bracket(const LieElement& a, const LieElement& b) {
  return {a.matrix() * b.matrix() - b.matrix() * a.matrix(),
          a.matrix() * b.vector() - b.matrix() * a.vector()};
}

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

/// X³ = 0, the nilpotency test for 3×3 matrices.
inline bool is_nilpotent(const Mat& x) { return (x * x * x).is_zero(); }

/// Ad_{(g,v)}(X, u) = (gXg⁻¹, gu − gXg⁻¹v)
inline LieElement adjoint(const AffineMap& m, const LieElement& e) {
  const Mat& g = m.linear_part();
  const Mat gi = inverse(g);
  const Mat x = g * e.matrix() * gi;
  return {x, g * e.vector() - x * m.translation_part()};
}

/// Exact linear span of Lie elements kept in reduced row echelon form, so
/// coordinates of a member are its entries at the pivot positions.
class Span {
 public:
  Span() = default;
  explicit Span(const std::vector<LieElement>& spanning) {
    for (const auto& e : spanning) insert(e);
  }

  std::size_t dim() const { return rows_.size(); }
  std::vector<LieElement> basis() const {
    std::vector<LieElement> out;
    for (const auto& r : rows_) out.push_back(LieElement::from_coords(r));
    return out;
  }

  /// Residual after eliminating against the current rows.
  Vec reduce(Vec v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar c = v[pivots_[k]];
      if (c.is_zero()) continue;
      v = v - c * rows_[k];
    }
    return v;
  }

  bool contains(const LieElement& e) const { return reduce(e.coords()).is_zero(); }

  /// Coordinates with respect to `basis()`, or nullopt when outside the span.
  std::optional<std::vector<Scalar>> coordinates(const LieElement& e) const {
    const Vec c = e.coords();
    if (!reduce(c).is_zero()) return std::nullopt;
    std::vector<Scalar> out;
    for (auto p : pivots_) out.push_back(c[p]);
    return out;
  }

  /// Adds e if independent; returns whether the span grew.
  bool insert(const LieElement& e) {
    Vec r = reduce(e.coords());
    std::size_t p = 0;
    while (p < r.size() && r[p].is_zero()) ++p;
    if (p == r.size()) return false;
    r = (Scalar(1) / r[p]) * r;
    for (auto& row : rows_) {
      if (!row[p].is_zero()) row = row - row[p] * r;
    }
    // keep rows ordered by pivot
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    rows_.insert(rows_.begin() + static_cast<long>(at), r);
    pivots_.insert(pivots_.begin() + static_cast<long>(at), p);
    return true;
  }

  friend bool operator==(const Span& a, const Span& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

inline bool is_bracket_closed(const Span& s) {
  const auto b = s.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!s.contains(bracket(b[i], b[j]))) return false;
  return true;
}

/// A bracket-closed span with a descriptive name.
class Subalgebra {
 public:
  Subalgebra(const std::vector<LieElement>& spanning, std::string name = {})
      : span_(spanning), name_(std::move(name)) {
    if (!is_bracket_closed(span_)) {
      throw DomainError("not_closed", "span of " + (name_.empty() ? std::string("given elements") : name_) +
                                          " is not closed under the bracket");
    }
  }

  std::size_t dim() const { return span_.dim(); }
  std::vector<LieElement> basis() const { return span_.basis(); }
  const Span& span() const { return span_; }
  const std::string& name() const { return name_; }
  bool contains(const LieElement& e) const { return span_.contains(e); }

 private:
  Span span_;
  std::string name_;
};

/// Smallest bracket-closed subspace containing S: bracket new basis vectors
/// against the current basis until the span stops growing.
inline Subalgebra bracket_closure(const std::vector<LieElement>& generators, std::string name = {}) {
  if (generators.empty()) throw DomainError("precondition", "bracket closure of an empty set");
  Span span;
  std::vector<LieElement> found;
  for (const auto& g : generators)
    if (span.insert(g)) found.push_back(g);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      LieElement br = bracket(found[j], found[i]);
      if (span.insert(br)) found.push_back(std::move(br));
    }
  }
  return Subalgebra(span.basis(), std::move(name));
}

/// Basis of {y ∈ ambient : [x, y] = 0}.
inline std::vector<LieElement> ad_kernel(const LieElement& x, const Subalgebra& ambient) {
  if (!ambient.contains(x)) throw DomainError("precondition", "element is not in the ambient algebra");
  const auto basis = ambient.basis();
  if (basis.empty()) return {};
  std::vector<Vec> images;
  for (const auto& b : basis) images.push_back(bracket(x, b).coords());
  const auto kernel = nullspace(Mat::from_columns(images));
  std::vector<LieElement> out;
  for (const auto& k : kernel) {
    LieElement e;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!k[i].is_zero()) e = e + k[i] * basis[i];
    out.push_back(std::move(e));
  }
  return out;
}

/// tr(ad_S x) = 0 for every basis element x.
inline bool is_unimodular(const Subalgebra& s) {
  const auto basis = s.basis();
  for (const auto& x : basis) {
    Scalar trace;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto c = s.span().coordinates(bracket(x, basis[j]));
      trace += (*c)[j];
    }
    if (!trace.is_zero()) return false;
  }
  return true;
}

inline bool contains(const Subalgebra& s, const Subalgebra& t) {
  for (const auto& e : t.basis())
    if (!s.contains(e)) return false;
  return true;
}

inline bool same_span(const Span& a, const Span& b) { return a == b; }

// ---------------------------------------------------------------------------
// Named elements and the algebra catalog

namespace lie {

inline Mat unit(std::size_t i, std::size_t j) {
  Mat m(3, 3);
  m(i, j) = Scalar(1);
  return m;
}

/// h_(a,b,c) = (0, a, b; −a, 0, c; b, c, 0), spanning so(2,1) for x₁²+x₂²−x₃².
inline LieElement h(const Scalar& a, const Scalar& b, const Scalar& c) {
  return LieElement(Mat{{0, a, b}, {-a, 0, c}, {b, c, 0}});
}

/// v(t) = (1, 0, t; 0, 1, 0; 0, 0, 1)
inline Mat v_shear(const Scalar& t) { return Mat{{1, 0, t}, {0, 1, 0}, {0, 0, 1}}; }

/// The explicit sl₂-triple a, u, v of so(2,1) (entries in Q(√2)).
struct Sl2Triple {
  Mat a, u, v;
};

inline Sl2Triple sl2_triple() {
  const Scalar r2 = Scalar::sqrt_of(2);
  return {Mat{{0, 2, 2}, {-2, 0, 2}, {2, 2, 0}},
          Mat{{0, r2, r2}, {-r2, 0, 0}, {r2, 0, 0}},
          Mat{{0, -r2, 0}, {r2, 0, -r2}, {0, -r2, 0}}};
}

/// Xᵀσ + σX = 0
inline bool preserves_gram(const Mat& x, const Mat& sigma) {
  return (x.transpose() * sigma + sigma * x).is_zero();
}

inline std::vector<LieElement> sl3_basis() {
  std::vector<LieElement> out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) out.emplace_back(unit(i, j));
  out.emplace_back(Mat::diagonal({1, -1, 0}));
  out.emplace_back(Mat::diagonal({0, 1, -1}));
  return out;
}

inline std::vector<LieElement> so21_basis() { return {h(1, 0, 0), h(0, 1, 0), h(0, 0, 1)}; }

/// so(Q₀) for Q₀ = 2x₁x₃ − x₂²: (a, b, 0; c, 0, b; 0, c, −a).
inline std::vector<LieElement> so_q0_basis() {
  return {LieElement(Mat::diagonal({1, 0, -1})), LieElement(unit(0, 1) + unit(1, 2)),
          LieElement(unit(1, 0) + unit(2, 1))};
}

}  // namespace lie

/// Translation part of C ⋉ {0}, C ⋉ R (e₁), C ⋉ R² (e₁, e₂), C ⋉ R³.
enum class Translation { none, line, plane, full };

inline std::string translation_suffix(Translation t) {
  switch (t) {
    case Translation::none: return " x {0}";
    case Translation::line: return " x R";
    case Translation::plane: return " x R^2";
    case Translation::full: return " x R^3";
  }
  return {};
}

/*
 * Spanning set read off the displayed family, before any closure check.
 * Families with a built-in translation part (P_beta, H_alpha, A_alpha,
 * B_alpha) carry it here; the plain ones are pure matrix algebras.
 * K_t is computed as the conjugate v(t) so(Q₀) v(t)⁻¹ rather than read off
 * a display.
 */
inline std::vector<LieElement> catalog_display(std::string_view id, std::span<const Scalar> params = {}) {
  using lie::unit;
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw DomainError("bad_arity", std::string(id) + " expects " + std::to_string(n) + " parameter(s)");
    }
  };
  const LieElement e12(unit(0, 1)), e13(unit(0, 2)), e23(unit(1, 2));
  const LieElement n12(unit(0, 1) + unit(1, 2));
  if (id == "V1") return need(0), std::vector{n12};
  if (id == "V") return need(0), std::vector{n12, e13};
  if (id == "W") return need(0), std::vector{e12, e13, e23};
  if (id == "N") return need(0), std::vector{LieElement(Mat::diagonal({1, -2, 1})), e12, e13, e23};
  if (id == "N1") return need(0), std::vector{LieElement(Mat::diagonal({2, -5, 3})), e12, e13, e23};
  if (id == "N2") return need(0), std::vector{LieElement(Mat::diagonal({3, -5, 2})), e12, e13, e23};
  if (id == "Q1") {
    need(0);
    return {LieElement(Mat::diagonal({0, 1, -1})), e12, e13, e23, LieElement(unit(2, 1))};
  }
  if (id == "Q2") {
    need(0);
    return {LieElement(Mat::diagonal({1, -1, 0})), e12, e13, e23, LieElement(unit(1, 0))};
  }
  if (id == "R_t") {
    need(1);
    const Scalar& t = params[0];
    return {LieElement(Mat::diagonal({1, 0, -1})), n12,
            LieElement(unit(1, 0) + unit(2, 1) + Scalar(-2) * t * unit(1, 2))};
  }
  if (id == "K_t") {
    need(1);
    const AffineMap conj = AffineMap::linear(lie::v_shear(params[0]));
    std::vector<LieElement> out;
    for (const auto& x : lie::so_q0_basis()) out.push_back(adjoint(conj, x));
    return out;
  }
  if (id == "so21") return need(0), lie::so21_basis();
  if (id == "soQ0") return need(0), lie::so_q0_basis();
  if (id == "sl3") return need(0), lie::sl3_basis();
  if (id == "P_beta") {
    need(1);
    const Scalar& beta = params[0];
    return {LieElement(n12.matrix()), LieElement(unit(0, 2), Vec{0, 0, beta}), LieElement::translation(Vec{1, 0, 0}),
            LieElement::translation(Vec{0, 1, 0})};
  }
  if (id == "H_alpha") {
    need(1);
    return {LieElement(n12.matrix(), Vec{0, params[0], 0})};
  }
  if (id == "A_alpha" || id == "B_alpha") {
    need(1);
    std::vector<LieElement> out{LieElement(unit(0, 1), Vec{0, params[0], 0}), e13, e23};
    if (id == "B_alpha") out.push_back(LieElement::translation(Vec{1, 0, 0}));
    return out;
  }
  throw DomainError("unknown_algebra", "no catalog entry named '" + std::string(id) + "'");
}

inline bool has_native_translation(std::string_view id) {
  return id == "P_beta" || id == "H_alpha" || id == "A_alpha" || id == "B_alpha";
}

inline std::string catalog_name(std::string_view id, std::span<const Scalar> params, Translation t) {
  std::string name(id);
  if (!params.empty()) {
    name += "(";
    for (std::size_t i = 0; i < params.size(); ++i) name += (i ? "," : "") + params[i].str();
    name += ")";
  }
  if (!has_native_translation(id)) name += translation_suffix(t);
  return name;
}

/// Catalog algebra with the requested translation part; throws
/// "not_closed" if the displayed family is not a subalgebra.
inline Subalgebra catalog(std::string_view id, std::span<const Scalar> params = {},
                          Translation t = Translation::none) {
  auto elems = catalog_display(id, params);
  if (has_native_translation(id) && t != Translation::none) {
    throw DomainError("bad_arity", std::string(id) + " carries its own translation part");
  }
  const int extra = t == Translation::none ? 0 : t == Translation::line ? 1 : t == Translation::plane ? 2 : 3;
  for (int i = 0; i < extra; ++i) elems.push_back(LieElement::translation(Vec::unit(3, static_cast<std::size_t>(i))));
  return Subalgebra(elems, catalog_name(id, params, t));
}

/*
 * Infinitesimal stabilizer of Q_ξ (and L when given) inside sl(3) ⋉ R³:
 * all (X, u) with d/dε F(x + ε(Xx + u)) ≡ 0, i.e.
 *   AX + XᵀA = 0,  Au + XᵀAξ = 0,  ξᵀAu = 0,
 * and ℓX = 0, ℓ·u = 0 for the linear form.
 */
inline Subalgebra stabilizer_algebra(const InhomogeneousForm& f, const LinearForm* l = nullptr) {
  if (f.dim() != 3) throw DomainError("dimension_mismatch", "stabilizer algebra is ternary");
  const Mat& a = f.gram();
  const Vec& xi = f.shift();
  // unknowns: 9 matrix entries + 3 translation entries; traceless enforced by a row
  std::vector<std::vector<Scalar>> rows;
  auto image = [&](const Vec& coords) {
    Mat x(3, 3);
    for (std::size_t i = 0; i < 9; ++i) x(i / 3, i % 3) = coords[i];
    const Vec u{coords[9], coords[10], coords[11]};
    std::vector<Scalar> out;
    const Mat quad = a * x + x.transpose() * a;
    for (const auto& e : quad.entries()) out.push_back(e);
    const Vec lin = a * u + x.transpose() * (a * xi);
    for (const auto& e : lin) out.push_back(e);
    out.push_back(dot(xi, a * u));
    if (l != nullptr) {
      const Vec lx = x.transpose() * l->coeffs();
      for (const auto& e : lx) out.push_back(e);
      out.push_back(dot(l->coeffs(), u));
    }
    out.push_back(x.trace());
    return out;
  };
  std::vector<Vec> columns;
  for (std::size_t k = 0; k < 12; ++k) columns.emplace_back(image(Vec::unit(12, k)));
  std::vector<LieElement> basis;
  for (const auto& k : nullspace(Mat::from_columns(columns))) basis.push_back(LieElement::from_coords(k));
  if (basis.empty()) basis.push_back(LieElement());
  return Subalgebra(basis, "stab");
}

inline Subalgebra stabilizer_algebra(const InhomogeneousForm& f, const LinearForm& l) {
  return stabilizer_algebra(f, &l);
}

}  // namespace iqf
