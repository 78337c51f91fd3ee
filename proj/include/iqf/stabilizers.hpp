#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "iqf/affine.hpp"
#include "iqf/forms.hpp"
#include "iqf/normalization.hpp"

namespace iqf {

/// Element of the unipotent flow H_α:
/// ((1, t, t²/2; 0, 1, t; 0, 0, 1), (αt²/2, αt, 0)).
inline AffineMap h_alpha(const Scalar& alpha, const Scalar& t) {
  const Scalar half_t2 = t * t / Scalar(2);
  Mat g{{1, t, half_t2}, {0, 1, t}, {0, 0, 1}};
  return AffineMap(std::move(g), Vec{alpha * half_t2, alpha * t, 0});
}

/// Exact comparison of F∘m with F (and L∘m with L when given), coefficient
/// by coefficient.
inline bool preserves_pair(const AffineMap& m, const InhomogeneousForm& f, const LinearForm* l = nullptr) {
  const QuadraticPolynomial p = QuadraticPolynomial::from(f);
  if (!(p.pullback(m) == p)) return false;
  if (l == nullptr) return true;
  const LinearForm moved(m.linear_part().transpose() * l->coeffs(), (*l)(m.translation_part()));
  return moved == *l;
}

inline bool preserves_pair(const AffineMap& m, const InhomogeneousForm& f, const LinearForm& l) {
  return preserves_pair(m, f, &l);
}

/// Cayley transform (I − X)⁻¹(I + X); it preserves σ whenever
/// Xᵀσ + σX = 0 and stays exact. Throws "singular_matrix" when 1 is an
/// eigenvalue of X.
inline Mat cayley(const Mat& x) {
  const Mat id = Mat::identity(x.rows());
  return inverse(id - x) * (id + x);
}

/// (g, gξ − ξ) for g ∈ SO(Q, L); without `l` the lift is from SO(Q).
inline AffineMap lift_joint(const Mat& g, const QuadraticForm& q, const Vec& xi,
                            const std::optional<LinearForm>& l = std::nullopt) {
  if (g.rows() != 3 || g.cols() != 3) throw DomainError("dimension_mismatch", "generator must be 3x3");
  if (g.transpose() * q.gram() * g != q.gram()) {
    throw DomainError("invalid_generator", "generator does not preserve the quadratic form");
  }
  if (l && g.transpose() * l->coeffs() != l->coeffs()) {
    throw DomainError("invalid_generator", "generator does not preserve the linear form");
  }
  return AffineMap(g, g * xi - xi);
}

/// (g,v) h_α(t) (g,v)⁻¹: the stabilizer flow of the original pair.
inline AffineMap conjugated_flow(const NormalizationCertificate& cert, const Scalar& t) {
  return cert.map * h_alpha(cert.alpha, t) * inverse(cert.map);
}

/// Pair (A, w) in GL(3) ⋉ R³ without the invertibility requirement; the
/// centralizer solve ranges over all of M₃ × R³ and checks det afterwards.
struct AffinePair {
  Mat linear;
  Vec translation;
};

struct CentralizerSpace {
  AffinePair particular;
  std::vector<AffinePair> basis;
};

/*
 * All (A, w) commuting with every generator (h, u):
 *   (A, w)(h, u) = (h, u)(A, w)  ⇔  Ah − hA = 0  and  Au + (I − h)w = u.
 * Unknowns are the 12 entries of (A, w), row-major A first. The system is
 * affine because of the u on the right; (I, 0) always solves it.
 */
inline CentralizerSpace centralizer_solve(const std::vector<AffineMap>& generators) {
  const std::size_t rows = 12 * std::max<std::size_t>(generators.size(), 1);
  Mat system(rows, 12);
  Vec rhs(rows);
  std::size_t r = 0;
  for (const auto& gen : generators) {
    const Mat& h = gen.linear_part();
    const Vec& u = gen.translation_part();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j, ++r) {
        // (Ah)_ij − (hA)_ij
        for (std::size_t k = 0; k < 3; ++k) {
          system(r, 3 * i + k) += h(k, j);
          system(r, 3 * k + j) -= h(i, k);
        }
      }
    for (std::size_t i = 0; i < 3; ++i, ++r) {
      for (std::size_t k = 0; k < 3; ++k) {
        system(r, 3 * i + k) += u[k];
        system(r, 9 + k) -= h(i, k);
      }
      system(r, 9 + i) += Scalar(1);
      rhs[r] = u[i];
    }
  }
  const auto sol = solve_linear(system, rhs);
  auto unpack = [](const Vec& x) {
    AffinePair p{Mat(3, 3), Vec(3)};
    for (std::size_t i = 0; i < 9; ++i) p.linear(i / 3, i % 3) = x[i];
    for (std::size_t i = 0; i < 3; ++i) p.translation[i] = x[9 + i];
    return p;
  };
  CentralizerSpace out{unpack(sol->particular), {}};
  for (const auto& k : sol->kernel) out.basis.push_back(unpack(k));
  return out;
}

}  // namespace iqf
