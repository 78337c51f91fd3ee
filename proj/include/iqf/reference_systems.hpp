#pragma once

#include "iqf/forms.hpp"

namespace iqf {

/// A ternary form, shift and linear form bundled together.
struct PairSystem {
  QuadraticForm q;
  Vec xi;
  LinearForm l;

  InhomogeneousForm form() const { return InhomogeneousForm(q, xi); }
};

/// x₁² + x₂² − x₃², ξ = (0, 0, √2), L = x₁ + x₂ + √2·x₃. Satisfies every
/// hypothesis of the pair density theorem.
inline PairSystem worked_pair() {
  const Scalar r2 = Scalar::sqrt_of(2);
  return {QuadraticForm(Mat::diagonal({1, 1, -1})), Vec{0, 0, r2}, LinearForm(Vec{1, 1, r2})};
}

/// Same Q and ξ with L = x₁ + x₃: tangent, but L² alone is rational.
inline PairSystem square_control() {
  return {QuadraticForm(Mat::diagonal({1, 1, -1})), Vec{0, 0, Scalar::sqrt_of(2)}, LinearForm(Vec{1, 0, 1})};
}

/// Everything rational and integral: Q = x₁² + x₂² − x₃², ξ = 0, L = x₁ + x₃.
inline PairSystem rational_control() {
  return {QuadraticForm(Mat::diagonal({1, 1, -1})), Vec(3), LinearForm(Vec{1, 0, 1})};
}

}  // namespace iqf
