#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "iqf/error.hpp"

namespace iqf {

using Rational = mpq_class;

inline bool is_squarefree(long d) {
  if (d < 1) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

/*
 * Exact element r + s*sqrt(d) of the real quadratic field Q(sqrt d).
 *
 * Canonical form: r and s in lowest terms; s == 0 forces d == 1, so a
 * plain rational is field-agnostic and combines with any field. Two
 * irrational operands must share d, otherwise the operation throws
 * DomainError("field_mismatch").
 */
class Scalar {
 public:
  Scalar() : r_(0), s_(0), d_(1) {}
  Scalar(int v) : r_(v), s_(0), d_(1) {}   // NOLINT(google-explicit-constructor)
  Scalar(long v) : r_(v), s_(0), d_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational r) : r_(std::move(r)), s_(0), d_(1) {  // NOLINT
    r_.canonicalize();
  }
  Scalar(Rational r, Rational s, long d) : r_(std::move(r)), s_(std::move(s)), d_(d) {
    if (!is_squarefree(d_)) {
      throw DomainError("bad_field", "field discriminant must be squarefree and >= 1, got " +
                                         std::to_string(d_));
    }
    r_.canonicalize();
    s_.canonicalize();
    normalize();
  }

  /// sqrt(n) for any n >= 0; square factors are pulled out (sqrt(8) = 2*sqrt(2)).
  static Scalar sqrt_of(long n) {
    if (n < 0) throw DomainError("bad_field", "sqrt of a negative integer is not real");
    long outside = 1;
    long inside = n;
    for (long p = 2; p * p <= inside; ++p) {
      while (inside % (p * p) == 0) {
        inside /= p * p;
        outside *= p;
      }
    }
    if (inside == 0) return Scalar();
    return Scalar(Rational(0), Rational(outside), inside);
  }

  const Rational& rational_part() const { return r_; }
  const Rational& radical_part() const { return s_; }
  long field() const { return d_; }

  bool is_zero() const { return sgn(r_) == 0 && sgn(s_) == 0; }
  bool is_rational() const { return sgn(s_) == 0; }
  bool is_integer() const { return is_rational() && r_.get_den() == 1; }

  int sign() const {
    const int sr = sgn(r_);
    const int ss = sgn(s_);
    if (ss == 0) return sr;
    if (sr == 0 || sr == ss) return ss;
    // opposite signs: compare r^2 with s^2 d (never equal, d is not a square)
    const Rational lhs = r_ * r_;
    const Rational rhs = s_ * s_ * d_;
    return lhs > rhs ? sr : ss;
  }

  Scalar conjugate() const { return Scalar(r_, -s_, d_); }
  Rational norm() const { return Rational(r_ * r_ - s_ * s_ * d_); }

  double to_double() const {
    if (is_rational()) return r_.get_d();
    mpf_class root(static_cast<double>(d_), 256);
    mpf_class r(r_, 256);
    mpf_class s(s_, 256);
    root = sqrt(root);
    mpf_class value(r + s * root, 256);
    return value.get_d();
  }

  /// Largest integer not exceeding the value, decided exactly.
  mpz_class floor() const {
    if (is_rational()) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), r_.get_num_mpz_t(), r_.get_den_mpz_t());
      return q;
    }
    mpf_class root(static_cast<double>(d_), 256);
    root = sqrt(root);
    mpf_class approx(mpf_class(r_, 256) + mpf_class(s_, 256) * root, 256);
    mpf_class fl(0, 256);
    mpf_floor(fl.get_mpf_t(), approx.get_mpf_t());
    mpz_class f(fl);
    while ((*this - Scalar(Rational(f))).sign() < 0) f -= 1;
    while ((*this - Scalar(Rational(f + 1))).sign() >= 0) f += 1;
    return f;
  }

  /// Nearest integer, halves rounded up.
  mpz_class round() const { return (*this + Scalar(Rational(1, 2))).floor(); }

  std::string str() const {
    std::string out = r_.get_str();
    if (is_rational()) return out;
    Rational mag = abs(s_);
    out += sgn(s_) < 0 ? "-" : "+";
    out += mag.get_str();
    out += "*sqrt(" + std::to_string(d_) + ")";
    return out;
  }

  static Scalar parse(std::string_view text);

  Scalar operator-() const { return Scalar(-r_, -s_, d_); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    const long d = common_field(a, b);
    return Scalar(a.r_ + b.r_, a.s_ + b.s_, d);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    const long d = common_field(a, b);
    return Scalar(a.r_ - b.r_, a.s_ - b.s_, d);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    const long d = common_field(a, b);
    Rational r = a.r_ * b.r_ + a.s_ * b.s_ * d;
    Rational s = a.r_ * b.s_ + a.s_ * b.r_;
    return Scalar(std::move(r), std::move(s), d);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw DomainError("division_by_zero", "division by zero in Q(sqrt d)");
    const long d = common_field(a, b);
    // a / b = a * conj(b) / N(b)
    const Rational n = b.norm();
    Scalar num = a * b.conjugate();
    return Scalar(num.r_ / n, num.s_ / n, d);
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.r_ == b.r_ && a.s_ == b.s_ && (a.d_ == b.d_ || a.is_rational());
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }

 private:
  static long common_field(const Scalar& a, const Scalar& b) {
    if (a.d_ == 1) return b.d_;
    if (b.d_ == 1 || a.d_ == b.d_) return a.d_;
    throw DomainError("field_mismatch", "operands live in Q(sqrt " + std::to_string(a.d_) +
                                            ") and Q(sqrt " + std::to_string(b.d_) + ")");
  }

  void normalize() {
    if (d_ == 1) {
      r_ += s_;
      s_ = 0;
    }
    if (sgn(s_) == 0) d_ = 1;
  }

  Rational r_;
  Rational s_;
  long d_;
};

inline Scalar abs(const Scalar& a) { return a.sign() < 0 ? -a : a; }

namespace detail {

inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class n, m;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(m.get_mpz_t(), q.get_den_mpz_t());
  return Rational(n, m);
}

// Best rational approximation with bounded denominator (continued fractions).
inline Rational rationalize(double x, long max_den) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(frac);
    if (std::fabs(a) > 1e15) break;
    const long ai = static_cast<long>(a);
    const long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    const long p2 = ai * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double rest = frac - a;
    if (rest < 1e-15) break;
    frac = 1.0 / rest;
  }
  if (q1 == 0) return Rational(static_cast<long>(std::llround(x)));
  Rational out(p1, q1);
  out.canonicalize();
  return out;
}

inline Scalar parse_radical(std::string_view body) {
  long n = 0;
  for (char c : body) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw DomainError("parse_error", "bad sqrt argument '" + std::string(body) + "'");
    }
    n = n * 10 + (c - '0');
  }
  if (body.empty()) throw DomainError("parse_error", "empty sqrt argument");
  return Scalar::sqrt_of(n);
}

inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw DomainError("parse_error", "missing number");
  const auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    // exact decimal
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    Rational value;
    try {
      mpz_class whole(digits.empty() ? std::string("0") : digits);
      mpz_class f(frac.empty() ? std::string("0") : frac);
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      value = Rational(whole) + Rational(f, scale);
    } catch (const std::invalid_argument&) {
      throw DomainError("parse_error", "bad decimal '" + std::string(text) + "'");
    }
    value.canonicalize();
    return value;
  }
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/') {
      throw DomainError("parse_error", "bad rational '" + std::string(text) + "'");
    }
  }
  Rational value;
  try {
    value = Rational(std::string(text));
  } catch (const std::invalid_argument&) {
    throw DomainError("parse_error", "bad rational '" + std::string(text) + "'");
  }
  if (value.get_den() == 0) throw DomainError("parse_error", "zero denominator");
  value.canonicalize();
  return value;
}

// term := number | number '*' 'sqrt(' n ')' | 'sqrt(' n ')'
inline Scalar parse_term(std::string_view term) {
  const auto sq = term.find("sqrt(");
  if (sq == std::string_view::npos) return Scalar(parse_rational(term));
  if (term.back() != ')') throw DomainError("parse_error", "unterminated sqrt in '" + std::string(term) + "'");
  Scalar radical = parse_radical(term.substr(sq + 5, term.size() - sq - 6));
  if (sq == 0) return radical;
  if (term[sq - 1] != '*') throw DomainError("parse_error", "expected '*' before sqrt");
  return Scalar(parse_rational(term.substr(0, sq - 1))) * radical;
}

}  // namespace detail

/// Accepts the canonical "p/q" and "p/q+r/t*sqrt(d)" forms plus looser
/// input such as "sqrt(2)", "-3*sqrt(8)", "1/2-sqrt(2)" and exact decimals.
inline Scalar Scalar::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.empty()) throw DomainError("parse_error", "empty scalar");
  Scalar total;
  std::size_t pos = 0;
  while (pos < compact.size()) {
    int sign = 1;
    while (pos < compact.size() && (compact[pos] == '+' || compact[pos] == '-')) {
      if (compact[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = pos;
    int depth = 0;
    while (end < compact.size()) {
      const char c = compact[end];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == '+' || c == '-') && end > pos) break;
      ++end;
    }
    if (end == pos) throw DomainError("parse_error", "dangling sign in '" + compact + "'");
    Scalar term = detail::parse_term(std::string_view(compact).substr(pos, end - pos));
    total += sign < 0 ? -term : term;
    pos = end;
  }
  return total;
}

inline std::optional<Scalar> sqrt_in_field(const Scalar& a, long d) {
  if (a.sign() < 0) return std::nullopt;
  if (a.is_zero()) return Scalar();
  if (a.is_rational()) {
    if (auto q = detail::rational_sqrt(a.rational_part())) return Scalar(*q);
    if (d > 1) {
      if (auto q = detail::rational_sqrt(Rational(a.rational_part() / d))) {
        return Scalar(Rational(0), *q, d);
      }
    }
    return std::nullopt;
  }
  // (x + y sqrt d)^2 = x^2 + d y^2 + 2xy sqrt d
  const Rational& r = a.rational_part();
  const Rational& s = a.radical_part();
  const long fd = a.field();
  auto disc = detail::rational_sqrt(Rational(r * r - s * s * fd));
  if (!disc) return std::nullopt;
  for (const Rational& x2 : {Rational((r + *disc) / 2), Rational((r - *disc) / 2)}) {
    if (sgn(x2) <= 0) continue;
    auto x = detail::rational_sqrt(x2);
    if (!x) continue;
    Scalar cand(*x, Rational(s / (2 * *x)), fd);
    if (cand * cand == a) return cand.sign() < 0 ? -cand : cand;
  }
  return std::nullopt;
}

/// Real cube root if it lies in the field; candidates are recovered from a
/// high-precision approximation and then confirmed exactly.
inline std::optional<Scalar> cbrt_in_field(const Scalar& a, long max_den = 1000000) {
  if (a.is_zero()) return Scalar();
  const double real = a.to_double();
  const double conj = a.conjugate().to_double();
  const long d = a.field();
  const double cr = std::cbrt(real);
  const double cc = std::cbrt(conj);
  Scalar cand;
  if (a.is_rational()) {
    cand = Scalar(detail::rationalize(cr, max_den));
  } else {
    Rational x = detail::rationalize((cr + cc) / 2.0, max_den);
    Rational y = detail::rationalize((cr - cc) / (2.0 * std::sqrt(static_cast<double>(d))), max_den);
    cand = Scalar(x, y, d);
  }
  if (cand * cand * cand == a) return cand;
  return std::nullopt;
}

}  // namespace iqf
