#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "iqf/forms.hpp"
#include "iqf/hyperplane.hpp"
#include "iqf/normalization.hpp"
#include "iqf/rationality.hpp"
#include "iqf/stabilizers.hpp"

namespace iqf {

enum class SearchMode { slab_scan, orbit_round };

inline const char* mode_name(SearchMode m) { return m == SearchMode::slab_scan ? "slab_scan" : "orbit_round"; }

using Point3 = std::array<long, 3>;

struct SearchTask {
  InhomogeneousForm form;
  std::optional<LinearForm> linear;
  double target_a = 0;
  std::optional<double> target_b;
  double epsilon = 0.5;
  long radius = 1;
  SearchMode mode = SearchMode::slab_scan;
  unsigned threads = 1;
};

struct SearchResult {
  Point3 best_x{0, 0, 0};
  double err_q = std::numeric_limits<double>::infinity();
  double err_l = 0;
  double score = std::numeric_limits<double>::infinity();  // double-precision ranking value
  std::uint64_t visited = 0;
  SearchMode mode_used = SearchMode::slab_scan;
  std::optional<Scalar> value_q;  // exact Q_ξ(best_x)
  std::optional<Scalar> value_l;  // exact L(best_x)

  bool found() const { return visited > 0; }
  double joint_error() const { return std::max(err_q, err_l); }
};

namespace detail {

inline void validate(const SearchTask& t) {
  if (t.form.dim() != 3) throw DomainError("dimension_mismatch", "search runs on ternary forms");
  if (!(t.epsilon > 0)) throw DomainError("precondition", "epsilon must be positive");
  if (t.radius < 1) throw DomainError("precondition", "radius must be at least 1");
  if (t.linear.has_value() != t.target_b.has_value()) {
    throw DomainError("precondition", "a linear form needs a second target and vice versa");
  }
  if (t.linear && t.linear->dim() != 3) throw DomainError("dimension_mismatch", "linear form must be ternary");
  if (t.linear && t.linear->coeffs().is_zero()) throw DomainError("zero_linear_form", "linear form vanishes");
}

// Double-precision copy of the task's coefficients for the hot loop.
struct FastEval {
  double a[3][3];
  double xi[3];
  double l[3]{0, 0, 0};
  double lc = 0;
  bool has_l = false;

  explicit FastEval(const SearchTask& t) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) a[i][j] = t.form.gram()(i, j).to_double();
      xi[i] = t.form.shift()[i].to_double();
    }
    if (t.linear) {
      has_l = true;
      for (std::size_t i = 0; i < 3; ++i) l[i] = t.linear->coeffs()[i].to_double();
      lc = t.linear->constant().to_double();
    }
  }
  double q(const Point3& x) const {
    const double y[3] = {static_cast<double>(x[0]) + xi[0], static_cast<double>(x[1]) + xi[1],
                         static_cast<double>(x[2]) + xi[2]};
    double s = 0;
    for (int i = 0; i < 3; ++i) {
      s += a[i][i] * y[i] * y[i];
      for (int j = i + 1; j < 3; ++j) s += 2 * a[i][j] * y[i] * y[j];
    }
    return s;
  }
  double lin(const Point3& x) const {
    return l[0] * static_cast<double>(x[0]) + l[1] * static_cast<double>(x[1]) + l[2] * static_cast<double>(x[2]) +
           lc;
  }
};

struct Best {
  double score = std::numeric_limits<double>::infinity();
  Point3 x{0, 0, 0};
  std::uint64_t visited = 0;

  void offer(double s, const Point3& p) {
    ++visited;
    if (s < score || (s == score && p < x)) {
      score = s;
      x = p;
    }
  }
  void merge(const Best& o) {
    visited += o.visited;
    if (o.visited == 0) return;
    if (o.score < score || (o.score == score && o.x < x)) {
      score = o.score;
      x = o.x;
    }
  }
};

inline Vec to_vec(const Point3& x) { return Vec{Scalar(x[0]), Scalar(x[1]), Scalar(x[2])}; }

// Exact values and errors for the winning point.
inline void finalize(SearchResult& r, const SearchTask& t) {
  if (r.visited == 0) return;
  const Vec x = to_vec(r.best_x);
  const Scalar vq = eval_inhom(t.form, x);
  r.value_q = vq;
  r.err_q = abs(vq - Scalar(Rational(t.target_a))).to_double();
  if (t.linear) {
    const Scalar vl = (*t.linear)(x);
    r.value_l = vl;
    r.err_l = abs(vl - Scalar(Rational(*t.target_b))).to_double();
  }
}

template <class Body>
void parallel_for(long lo, long hi, unsigned threads, std::vector<Best>& partial, Body body) {
  const long count = hi - lo + 1;
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max(1L, count))));
  partial.assign(n, Best{});
  if (n == 1) {
    for (long v = lo; v <= hi; ++v) body(v, partial[0]);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n; ++w) {
    pool.emplace_back([&, w] {
      for (long v = lo + static_cast<long>(w); v <= hi; v += static_cast<long>(n)) body(v, partial[w]);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

/*
 * Enumerates integer x with |x|∞ ≤ R. With a linear form the box is cut to
 * the slab |L(x) − b| ≤ ε: two coordinates run freely and the third (the
 * one with the largest |ℓ_k|) is solved within the slab. Ranking uses
 * max(|Q_ξ − a|, |L − b|) in double precision; ties go to the
 * lexicographically smallest x. The winner's errors are recomputed exactly.
 */
inline SearchResult slab_scan(const SearchTask& task) {
  detail::validate(task);
  const detail::FastEval fe(task);
  const long r = task.radius;
  const double a = task.target_a;
  std::vector<detail::Best> partial;

  if (!fe.has_l) {
    detail::parallel_for(-r, r, task.threads, partial, [&](long x0, detail::Best& best) {
      for (long x1 = -r; x1 <= r; ++x1)
        for (long x2 = -r; x2 <= r; ++x2) {
          const Point3 p{x0, x1, x2};
          best.offer(std::fabs(fe.q(p) - a), p);
        }
    });
  } else {
    const double b = *task.target_b;
    const double eps = task.epsilon;
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (std::fabs(fe.l[i]) > std::fabs(fe.l[k])) k = i;
    const std::size_t i0 = k == 0 ? 1 : 0;
    const std::size_t i1 = k == 2 ? 1 : 2;
    detail::parallel_for(-r, r, task.threads, partial, [&](long u, detail::Best& best) {
      for (long w = -r; w <= r; ++w) {
        const double rest = fe.l[i0] * static_cast<double>(u) + fe.l[i1] * static_cast<double>(w) + fe.lc;
        double lo = (b - eps - rest) / fe.l[k];
        double hi = (b + eps - rest) / fe.l[k];
        if (lo > hi) std::swap(lo, hi);
        const long from = std::max(-r, static_cast<long>(std::ceil(lo)));
        const long to = std::min(r, static_cast<long>(std::floor(hi)));
        for (long z = from; z <= to; ++z) {
          Point3 p{};
          p[i0] = u;
          p[i1] = w;
          p[k] = z;
          const double dl = std::fabs(fe.lin(p) - b);
          if (dl > eps) continue;
          best.offer(std::max(std::fabs(fe.q(p) - a), dl), p);
        }
      }
    });
  }
  detail::Best total;
  for (const auto& p : partial) total.merge(p);
  SearchResult out;
  out.mode_used = SearchMode::slab_scan;
  out.visited = total.visited;
  if (total.visited > 0) {
    out.best_x = total.x;
    out.score = total.score;
    detail::finalize(out, task);
  }
  return out;
}

/// Default flow parameters: k/4 for |k| ≤ 40.
inline std::vector<Scalar> default_t_grid() {
  std::vector<Scalar> out;
  for (long k = -40; k <= 40; ++k) out.emplace_back(Rational(k, 4));
  return out;
}

/*
 * Pushes an integral seed along the stabilizer flow of the pair (exactly, so
 * Q_ξ and L keep their values), rounds each flowed point to the nearest
 * lattice point and keeps the best one. The seed itself is always a
 * candidate.
 */
inline SearchResult orbit_round(const SearchTask& task, const Point3& seed, const NormalizationCertificate& cert,
                                const std::vector<Scalar>& t_grid) {
  detail::validate(task);
  const detail::FastEval fe(task);
  const Vec s = detail::to_vec(seed);
  const Scalar q_seed = eval_inhom(task.form, s);
  const std::optional<Scalar> l_seed = task.linear ? std::optional<Scalar>((*task.linear)(s)) : std::nullopt;
  const AffineMap minv = inverse(cert.map);
  auto score = [&](const Point3& p) {
    double e = std::fabs(fe.q(p) - task.target_a);
    if (fe.has_l) e = std::max(e, std::fabs(fe.lin(p) - *task.target_b));
    return e;
  };
  detail::Best best;
  best.offer(score(seed), seed);
  const Scalar half(Rational(1, 2));
  for (const Scalar& t : t_grid) {
    const Vec y = act(cert.map, act(h_alpha(cert.alpha, t), act(minv, s)));
    if (eval_inhom(task.form, y) != q_seed || (l_seed && (*task.linear)(y) != *l_seed)) {
      throw DomainError("internal", "flowed point changed its values at t=" + t.str());
    }
    Point3 z{};
    for (std::size_t i = 0; i < 3; ++i) z[i] = (y[i] + half).floor().get_si();  // nearest, halves up
    best.offer(score(z), z);
  }
  SearchResult out;
  out.mode_used = SearchMode::orbit_round;
  out.visited = best.visited;
  out.best_x = best.x;
  out.score = best.score;
  detail::finalize(out, task);
  return out;
}

/// "min:max:step" style range with inclusive end, built without drift.
inline std::vector<double> grid_values(double lo, double hi, double step) {
  if (!(step > 0) || hi < lo) throw DomainError("bad_grid", "grid needs step > 0 and max >= min");
  std::vector<double> out;
  const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

struct DensityRow {
  double target_a;
  std::optional<double> target_b;
  long radius;
  SearchResult result;
};

struct DensityTable {
  std::vector<DensityRow> rows;  // target-major, radii in the given order
  std::vector<std::string> warnings;
};

/*
 * One slab scan per (target, radius). For pairs the hypotheses are checked
 * first; failures become warnings and the scan still runs. Cells are
 * distributed over `threads` workers; each cell itself is single-threaded.
 */
inline DensityTable density_table(const InhomogeneousForm& f, const std::optional<LinearForm>& l,
                                  const std::vector<std::pair<double, std::optional<double>>>& targets,
                                  double epsilon, const std::vector<long>& radii, unsigned threads = 1) {
  DensityTable table;
  if (l) {
    if (!l->is_homogeneous()) {
      table.warnings.push_back("linear form has a constant term; hypotheses not checked");
    } else {
      const HypothesisReport rep = check_hypotheses(f.homogeneous_part(), f.shift(), *l);
      if (!rep.nondegenerate) table.warnings.push_back("form is degenerate");
      if (!rep.indefinite) table.warnings.push_back("form is definite");
      if (!rep.tangent) table.warnings.push_back("plane L=0 is not tangent to the cone");
      if (!rep.combo_condition) table.warnings.push_back("some combination aQ_xi + bL^2 is rational");
    }
  } else {
    const QuadraticForm q = f.homogeneous_part();
    if (!is_nondegenerate(q)) table.warnings.push_back("form is degenerate");
    if (!is_indefinite(q)) table.warnings.push_back("form is definite");
    if (!is_irrational_inhom(f)) table.warnings.push_back("form is rational");
  }
  for (const auto& [a, b] : targets)
    for (long r : radii) table.rows.push_back({a, b, r, {}});

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < table.rows.size(); i = next++) {
      DensityRow& row = table.rows[i];
      SearchTask task{f, l, row.target_a, row.target_b, epsilon, row.radius, SearchMode::slab_scan, 1};
      row.result = slab_scan(task);
    }
  };
  const unsigned n = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return table;
}

/// Every target's ranking score is nonincreasing along increasing radii.
inline bool scores_monotone_in_radius(const DensityTable& table) {
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    for (std::size_t j = 0; j < table.rows.size(); ++j) {
      const auto& x = table.rows[i];
      const auto& y = table.rows[j];
      if (x.target_a != y.target_a || x.target_b != y.target_b || x.radius >= y.radius) continue;
      if (y.result.score > x.result.score) return false;
    }
  return true;
}

struct ReductionStep {
  std::size_t from_dim;
  std::vector<long> normal;
  Mat basis;
  InhomogeneousForm restricted;
  Scalar offset;
};

struct Reduction {
  InhomogeneousForm form;  // ternary result
  Mat embedding;           // n×3 integral, x ↦ embedding·x maps Z³ into Zⁿ
  Scalar offset;           // F(embedding·x) = form(x) + offset
  std::vector<ReductionStep> steps;
};

/// Restricts to good integral hyperplanes until three variables remain,
/// rechecking indefiniteness, nondegeneracy and irrationality each time.
inline Reduction reduce_dimension(const InhomogeneousForm& f, long height_bound) {
  if (f.dim() < 3) throw DomainError("precondition", "reduction needs n >= 3");
  Reduction out{f, Mat::identity(f.dim()), Scalar(), {}};
  if (f.dim() == 3) {
    const QuadraticForm q = f.homogeneous_part();
    if (!is_nondegenerate(q) || !is_indefinite(q) || !is_irrational_inhom(f)) {
      throw DomainError("precondition", "form must be nondegenerate, indefinite and irrational");
    }
  }
  while (out.form.dim() > 3) {
    const std::size_t n = out.form.dim();
    const auto choice = find_good_hyperplane(out.form, height_bound);
    if (!choice) {
      throw DomainError("hyperplane_not_found", "no good hyperplane within height " + std::to_string(height_bound) +
                                                    " in dimension " + std::to_string(n));
    }
    if (!is_good_restriction(QuadraticPolynomial::from(choice->restricted))) {
      throw DomainError("internal", "restriction lost a hypothesis in dimension " + std::to_string(n));
    }
    out.steps.push_back({n, choice->normal, choice->basis, choice->restricted, choice->offset});
    out.embedding = out.embedding * choice->basis;
    out.offset += choice->offset;
    out.form = choice->restricted;
  }
  return out;
}

}  // namespace iqf
