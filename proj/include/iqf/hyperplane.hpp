#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

#include "iqf/forms.hpp"
#include "iqf/rationality.hpp"

namespace iqf {

/// Integral basis (as columns) of the lattice {x ∈ Zⁿ : c·x = 0} for a
/// primitive integer vector c. Column operations reduce c to a single
/// entry ±1; the accumulated unimodular matrix then carries the kernel
/// lattice on its remaining columns, so the basis extends to one of Zⁿ.
inline Mat integral_complement_basis(const std::vector<long>& normal) {
  const std::size_t n = normal.size();
  std::vector<long> r = normal;
  std::vector<std::vector<long>> u(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  auto nonzero_count = [&] {
    return std::count_if(r.begin(), r.end(), [](long x) { return x != 0; });
  };
  if (nonzero_count() == 0) throw DomainError("rank_deficient", "zero normal vector");
  while (nonzero_count() > 1) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (r[i] != 0 && (piv == n || std::labs(r[i]) < std::labs(r[piv]))) piv = i;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == piv || r[j] == 0) continue;
      const long q = r[j] / r[piv];
      r[j] -= q * r[piv];
      for (std::size_t k = 0; k < n; ++k) u[k][j] -= q * u[k][piv];
    }
  }
  std::size_t last = 0;
  while (r[last] == 0) ++last;
  if (std::labs(r[last]) != 1) throw DomainError("precondition", "hyperplane normal must be primitive");
  Mat basis(n, n - 1);
  for (std::size_t j = 0, col = 0; j < n; ++j) {
    if (j == last) continue;
    for (std::size_t k = 0; k < n; ++k) basis(k, col) = Scalar(u[k][j]);
    ++col;
  }
  return basis;
}

struct HyperplaneChoice {
  std::vector<long> normal;
  Mat basis;                      // n×(n−1), integral, extendable to a basis of Zⁿ
  InhomogeneousForm restricted;   // (A′, ξ′) with F(Bx) = F′(x) + offset
  Scalar offset;
};

inline bool is_good_restriction(const QuadraticPolynomial& p) {
  const QuadraticForm q(p.gram);
  return is_nondegenerate(q) && is_indefinite(q) && is_irrational_polynomial(p);
}

/*
 * Scans primitive integral normals c with entries in [-h, h] in
 * lexicographic order (first nonzero entry positive) and returns the first
 * hyperplane c⊥ whose restriction is indefinite, nondegenerate and
 * irrational. The height bound applies to the normal vector; the basis is
 * derived from it.
 */
inline std::optional<HyperplaneChoice> find_good_hyperplane(const InhomogeneousForm& f, long height_bound) {
  const QuadraticForm q = f.homogeneous_part();
  if (f.dim() < 3) throw DomainError("precondition", "hyperplane search needs n >= 3");
  if (!is_nondegenerate(q)) throw DomainError("precondition", "form must be nondegenerate");
  if (!is_indefinite(q)) throw DomainError("precondition", "form must be indefinite");
  if (!is_irrational_inhom(f)) throw DomainError("precondition", "form must be irrational");
  if (height_bound <= 0) return std::nullopt;

  const std::size_t n = f.dim();
  std::vector<long> c(n, -height_bound);
  while (true) {
    long g = 0;
    for (long x : c) g = std::gcd(g, std::labs(x));
    const auto lead = std::find_if(c.begin(), c.end(), [](long x) { return x != 0; });
    if (g == 1 && lead != c.end() && *lead > 0) {
      Mat basis = integral_complement_basis(c);
      const QuadraticPolynomial p = restrict_to_hyperplane(f, basis);
      if (is_good_restriction(p)) {
        const InhomogeneousForm r = *p.to_inhomogeneous();
        const Scalar offset = p.constant - eval_inhom(r, Vec(r.dim()));
        return HyperplaneChoice{c, basis, r, offset};
      }
    }
    std::size_t k = n;
    while (k > 0 && c[k - 1] == height_bound) c[--k] = -height_bound;
    if (k == 0) break;  // odometer wrapped around
    ++c[k - 1];
  }
  return std::nullopt;
}

}  // namespace iqf
