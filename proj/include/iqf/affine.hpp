#pragma once

#include "iqf/error.hpp"
#include "iqf/matrix.hpp"

namespace iqf {

/// Element (g, v) of GL(3) ⋉ R³ acting by x ↦ gx + v. Elements with
/// det g = 1 are the SL(3) ⋉ R³ ones; `is_special()` reports membership.
class AffineMap {
 public:
  AffineMap() : AffineMap(Mat::identity(3), Vec(3)) {}
  AffineMap(Mat g, Vec v) : g_(std::move(g)), v_(std::move(v)) {
    if (g_.rows() != 3 || g_.cols() != 3 || v_.size() != 3) {
      throw DomainError("dimension_mismatch", "affine maps act on R^3");
    }
    det_ = iqf::det(g_);
    if (det_.is_zero()) throw DomainError("singular_matrix", "linear part of an affine map is singular");
  }

  static AffineMap identity() { return AffineMap(); }
  static AffineMap translation(Vec v) { return AffineMap(Mat::identity(3), std::move(v)); }
  static AffineMap linear(Mat g) { return AffineMap(std::move(g), Vec(3)); }

  const Mat& linear_part() const { return g_; }
  const Vec& translation_part() const { return v_; }
  const Scalar& det() const { return det_; }
  bool is_special() const { return det_ == Scalar(1); }

  friend bool operator==(const AffineMap& a, const AffineMap& b) { return a.g_ == b.g_ && a.v_ == b.v_; }
  friend bool operator!=(const AffineMap& a, const AffineMap& b) { return !(a == b); }

 private:
  Mat g_;
  Vec v_;
  Scalar det_;
};

inline Vec act(const AffineMap& m, const Vec& x) { return m.linear_part() * x + m.translation_part(); }

/// (g₁, v₁)(g₂, v₂) = (g₁g₂, g₁v₂ + v₁), i.e. apply m2 first.
inline AffineMap compose(const AffineMap& m1, const AffineMap& m2) {
  return AffineMap(m1.linear_part() * m2.linear_part(), m1.linear_part() * m2.translation_part() + m1.translation_part());
}

inline AffineMap operator*(const AffineMap& m1, const AffineMap& m2) { return compose(m1, m2); }

inline AffineMap inverse(const AffineMap& m) {
  Mat gi = inverse(m.linear_part());
  Vec vi = -(gi * m.translation_part());
  return AffineMap(std::move(gi), std::move(vi));
}

/// Membership in Γ = SL(3, Z) ⋉ Z³.
inline bool is_integral(const AffineMap& m) {
  for (const auto& e : m.linear_part().entries())
    if (!e.is_integer()) return false;
  for (const auto& e : m.translation_part())
    if (!e.is_integer()) return false;
  return m.is_special();
}

}  // namespace iqf
