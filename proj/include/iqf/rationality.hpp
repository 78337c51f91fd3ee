#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "iqf/forms.hpp"
#include "iqf/matrix.hpp"

namespace iqf {

/// True iff some real t ≠ 0 makes every t·cᵢ rational, i.e. every ratio
/// between nonzero entries lies in Q. The all-zero tuple counts as rational.
inline bool is_rational_ray(std::span<const Scalar> c) {
  const Scalar* first = nullptr;
  for (const auto& x : c) {
    if (x.is_zero()) continue;
    if (first == nullptr) {
      first = &x;
      continue;
    }
    if (!(x / *first).is_rational()) return false;
  }
  return true;
}

inline bool is_rational_ray(const std::vector<Scalar>& c) { return is_rational_ray(std::span<const Scalar>(c)); }

/// A degree-two polynomial is irrational when its non-constant coefficients
/// are not proportional to rational ones. The constant term never matters.
inline bool is_irrational_polynomial(const QuadraticPolynomial& p) { return !is_rational_ray(p.coefficients(false)); }

/// Q_ξ is irrational iff the expanded coefficients (A, 2Aξ) are not jointly
/// proportional to rationals. For nondegenerate A this is "A is not a real
/// multiple of a rational matrix, or ξ ∉ Qⁿ": the shift is unaffected by
/// rescaling the form, so (0, 0, √2) counts as an irrational shift.
inline bool is_irrational_inhom(const InhomogeneousForm& f) {
  return is_irrational_polynomial(QuadraticPolynomial::from(f));
}

inline bool is_rational_vector(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_rational()) return false;
  return true;
}

struct ComboWitness {
  Scalar a;
  Scalar b;
};

struct ComboVerdict {
  bool holds = false;                  // every (a,b) ≠ 0 gives an irrational aQ_ξ + bL²
  std::optional<ComboWitness> witness;  // present iff !holds
};

/// aQ_ξ + bL² as an expanded polynomial.
inline QuadraticPolynomial combination(const InhomogeneousForm& f, const LinearForm& l, const Scalar& a,
                                       const Scalar& b) {
  return a * QuadraticPolynomial::from(f) + b * QuadraticPolynomial::square_of(l);
}

/*
 * Decides whether some (a, b) ≠ (0, 0) makes aQ_ξ + bL² rational.
 *
 * Candidates are tried in a fixed order: (1, 0), (0, 1), then the general
 * a = 1 branch. For the latter, rationality of t(P + bM) for some t is
 * linear in (p, q) = (t, tb): writing p = p₀ + p₁√d, q = q₀ + q₁√d, every
 * coefficient's √d-part must vanish, a homogeneous rational system in
 * (p₀, p₁, q₀, q₁). Any kernel vector with p ≠ 0 yields b = q/p.
 * Combinations are restricted to Q(√d)², which loses nothing because the
 * conditions are linear with coefficients in Q(√d).
 */
inline ComboVerdict check_combo_condition(const InhomogeneousForm& f, const LinearForm& l) {
  if (f.dim() != l.dim()) throw DomainError("dimension_mismatch", "form and linear form dimensions differ");
  auto rational_combo = [&](const Scalar& a, const Scalar& b) {
    return !is_irrational_polynomial(combination(f, l, a, b));
  };
  for (const auto& [a, b] : {std::pair{Scalar(1), Scalar(0)}, std::pair{Scalar(0), Scalar(1)}}) {
    if (rational_combo(a, b)) return {false, ComboWitness{a, b}};
  }

  const auto pf = QuadraticPolynomial::from(f).coefficients(false);
  const auto pm = QuadraticPolynomial::square_of(l).coefficients(false);
  long d = 1;
  for (const auto* list : {&pf, &pm})
    for (const auto& x : *list)
      if (!x.is_rational()) d = x.field();
  if (d == 1) return {true, std::nullopt};  // unreachable: (1,0) is already rational

  Mat system(pf.size(), 4);
  for (std::size_t k = 0; k < pf.size(); ++k) {
    system(k, 0) = Scalar(pf[k].radical_part());
    system(k, 1) = Scalar(pf[k].rational_part());
    system(k, 2) = Scalar(pm[k].radical_part());
    system(k, 3) = Scalar(pm[k].rational_part());
  }
  const Scalar root = Scalar::sqrt_of(d);
  for (const auto& k : nullspace(system)) {
    const Scalar p = k[0] + k[1] * root;
    if (p.is_zero()) continue;
    const Scalar b = (k[2] + k[3] * root) / p;
    if (rational_combo(Scalar(1), b)) return {false, ComboWitness{Scalar(1), b}};
  }
  return {true, std::nullopt};
}

struct HypothesisReport {
  bool nondegenerate = false;
  bool indefinite = false;
  bool tangent = false;
  bool q_irrational = false;      // Gram matrix not a real multiple of a rational one
  bool xi_irrational = false;     // shift has an irrational coordinate
  bool form_irrational = false;   // Q_ξ irrational as a polynomial
  bool combo_condition = false;
  std::optional<ComboWitness> witness;

  bool all_pass() const { return nondegenerate && indefinite && tangent && combo_condition; }
};

inline HypothesisReport check_hypotheses(const QuadraticForm& q, const Vec& xi, const LinearForm& l) {
  if (q.dim() != 3) throw DomainError("dimension_mismatch", "hypotheses concern ternary forms");
  if (!l.is_homogeneous()) throw DomainError("precondition", "linear form must be homogeneous");
  HypothesisReport r;
  const InhomogeneousForm f(q, xi);
  r.nondegenerate = is_nondegenerate(q);
  r.indefinite = is_indefinite(q);
  r.tangent = r.nondegenerate && r.indefinite && !l.coeffs().is_zero() && is_tangent(q, l);
  std::vector<Scalar> gram_coeffs;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) gram_coeffs.push_back(q.gram()(i, j));
  r.q_irrational = !is_rational_ray(gram_coeffs);
  r.xi_irrational = !is_rational_vector(xi);
  r.form_irrational = is_irrational_inhom(f);
  const ComboVerdict combo = check_combo_condition(f, l);
  r.combo_condition = combo.holds;
  r.witness = combo.witness;
  return r;
}

}  // namespace iqf
