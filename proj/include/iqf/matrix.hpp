#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iqf/error.hpp"
#include "iqf/scalar.hpp"

namespace iqf {

class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n) : e_(n) {}
  Vec(std::initializer_list<Scalar> values) : e_(values) {}
  explicit Vec(std::vector<Scalar> values) : e_(std::move(values)) {}

  static Vec unit(std::size_t n, std::size_t i) {
    Vec out(n);
    out[i] = Scalar(1);
    return out;
  }

  std::size_t size() const { return e_.size(); }
  Scalar& operator[](std::size_t i) { return e_[i]; }
  const Scalar& operator[](std::size_t i) const { return e_[i]; }
  const std::vector<Scalar>& entries() const { return e_; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  friend Vec operator+(const Vec& a, const Vec& b) {
    check_same(a, b);
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
  }
  friend Vec operator-(const Vec& a, const Vec& b) {
    check_same(a, b);
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
  }
  friend Vec operator*(const Scalar& c, const Vec& a) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
  }
  Vec operator-() const { return Scalar(-1) * *this; }
  friend bool operator==(const Vec& a, const Vec& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }

 private:
  static void check_same(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) {
      throw DomainError("dimension_mismatch", "vector sizes " + std::to_string(a.size()) + " and " +
                                                  std::to_string(b.size()));
    }
  }

  std::vector<Scalar> e_;
};

inline Scalar dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DomainError("dimension_mismatch", "dot product of unequal sizes");
  Scalar acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  Mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    e_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DomainError("dimension_mismatch", "ragged matrix literal");
      e_.insert(e_.end(), row.begin(), row.end());
    }
  }

  static Mat identity(std::size_t n) {
    Mat out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = Scalar(1);
    return out;
  }
  static Mat diagonal(const std::vector<Scalar>& diag) {
    Mat out(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
    return out;
  }
  static Mat from_columns(const std::vector<Vec>& cols) {
    if (cols.empty()) return Mat();
    Mat out(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != out.rows_) throw DomainError("dimension_mismatch", "ragged columns");
      for (std::size_t i = 0; i < out.rows_; ++i) out(i, j) = cols[j][i];
    }
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Vec row(std::size_t i) const {
    Vec out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
  }
  Vec column(std::size_t j) const {
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Mat transpose() const {
    Mat out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Scalar trace() const {
    Scalar acc;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
    return acc;
  }

  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_zero(); });
  }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
  const std::vector<Scalar>& entries() const { return e_; }

  friend Mat operator+(const Mat& a, const Mat& b) {
    check_same(a, b);
    Mat out(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = a.e_[k] + b.e_[k];
    return out;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    check_same(a, b);
    Mat out(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = a.e_[k] - b.e_[k];
    return out;
  }
  friend Mat operator*(const Scalar& c, const Mat& a) {
    Mat out(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = c * a.e_[k];
    return out;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw DomainError("dimension_mismatch", "matrix product shape mismatch");
    Mat out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend Vec operator*(const Mat& a, const Vec& x) {
    if (a.cols_ != x.size()) throw DomainError("dimension_mismatch", "matrix-vector shape mismatch");
    Vec out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Scalar acc;
      for (std::size_t j = 0; j < a.cols_; ++j) acc += a(i, j) * x[j];
      out[i] = acc;
    }
    return out;
  }
  Mat operator-() const { return Scalar(-1) * *this; }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

 private:
  static void check_same(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw DomainError("dimension_mismatch", "matrix shapes differ");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> e_;
};

/// xᵀ M y
inline Scalar bilinear(const Vec& x, const Mat& m, const Vec& y) { return dot(x, m * y); }

namespace detail {

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const Scalar inv = Scalar(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Scalar f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(Mat m) { return detail::rref(m).size(); }

/// Kernel basis read off the RREF: one vector per free column, with a 1 in
/// that column.
inline std::vector<Vec> nullspace(Mat m) {
  const auto pivots = detail::rref(m);
  std::vector<Vec> basis;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec k(m.cols());
    k[free] = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = -m(r, free);
    basis.push_back(std::move(k));
  }
  return basis;
}

struct LinearSolution {
  Vec particular;
  std::vector<Vec> kernel;
};

/// Exact solution set of M x = b by Gauss-Jordan elimination over Q(sqrt d).
/// std::nullopt means the system is inconsistent.
inline std::optional<LinearSolution> solve_linear(const Mat& m, const Vec& b) {
  if (m.rows() != b.size()) throw DomainError("dimension_mismatch", "rhs length differs from row count");
  Mat aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto pivots = detail::rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  LinearSolution out{Vec(m.cols()), {}};
  for (std::size_t r = 0; r < pivots.size(); ++r) out.particular[pivots[r]] = aug(r, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec k(m.cols());
    k[free] = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = -aug(r, free);
    out.kernel.push_back(std::move(k));
  }
  return out;
}

inline Scalar det(Mat m) {
  if (!m.is_square()) throw DomainError("dimension_mismatch", "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Scalar result(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col).is_zero()) ++piv;
    if (piv == n) return Scalar();
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      result = -result;
    }
    result *= m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      const Scalar f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return result;
}

inline Mat minor_matrix(const Mat& m, std::size_t skip_row, std::size_t skip_col) {
  Mat out(m.rows() - 1, m.cols() - 1);
  for (std::size_t i = 0, oi = 0; i < m.rows(); ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0, oj = 0; j < m.cols(); ++j) {
      if (j == skip_col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

/// Classical adjugate (transposed cofactor matrix); division free.
inline Mat adjugate(const Mat& m) {
  if (!m.is_square()) throw DomainError("dimension_mismatch", "adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 1) return Mat::identity(1);
  Mat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar c = det(minor_matrix(m, i, j));
      out(j, i) = (i + j) % 2 == 0 ? c : -c;
    }
  return out;
}

inline Mat inverse(const Mat& m) {
  if (!m.is_square()) throw DomainError("dimension_mismatch", "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar(1);
  }
  const auto pivots = detail::rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw DomainError("singular_matrix", "matrix is singular");
  Mat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

}  // namespace iqf
