#pragma once

// Exact rational arithmetic, residues modulo the integers, and the small set of
// integer/rational matrix algorithms the rest of the library is built on.
// Integers are GMP-backed; nothing in here touches floating point.

#include <cstddef>
#include <cstdint>
#include <compare>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "lenstor/errors.hpp"

namespace lenstor {

using BigInt = mpz_class;

/// A fraction in lowest terms with positive denominator; zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& numerator, const BigInt& denominator);

  /// Accepts "a/b", "-a/b" or a bare integer "a". Throws ParseError.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  /// Largest integer not exceeding the value.
  BigInt floor() const;

  double to_double() const { return value_.get_d(); }

  /// "a/b" in lowest terms, integers without a denominator ("0", "-2").
  std::string to_string() const { return value_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-value_), Raw{}); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  struct Raw {};
  Rational(mpq_class value, Raw) : value_(std::move(value)) { value_.canonicalize(); }

  mpq_class value_;
};

/// An element of Q/Z, stored by its representative in [0, 1).
class QZ {
 public:
  QZ() = default;

  /// Reduces any rational into [0, 1).
  static QZ from(const Rational& x);
  static QZ parse(std::string_view text) { return from(Rational::parse(text)); }

  const Rational& representative() const { return rep_; }

  /// Representative in (-1/2, 1/2]; used for display only.
  Rational signed_representative() const;

  bool is_zero() const { return rep_.is_zero(); }

  /// Display form: the signed representative as "a/b".
  std::string to_string() const { return signed_representative().to_string(); }

  QZ operator-() const { return from(-rep_); }
  QZ& operator+=(const QZ& o) { *this = from(rep_ + o.rep_); return *this; }
  QZ& operator-=(const QZ& o) { *this = from(rep_ - o.rep_); return *this; }
  friend QZ operator+(QZ a, const QZ& b) { return a += b; }
  friend QZ operator-(QZ a, const QZ& b) { return a -= b; }
  friend QZ operator*(const BigInt& k, const QZ& a) { return from(Rational(k) * a.rep_); }
  friend QZ operator*(long k, const QZ& a) { return from(Rational(k) * a.rep_); }

  friend bool operator==(const QZ& a, const QZ& b) { return a.rep_ == b.rep_; }
  friend auto operator<=>(const QZ& a, const QZ& b) { return a.rep_ <=> b.rep_; }

  friend std::ostream& operator<<(std::ostream& os, const QZ& r) { return os << r.to_string(); }

 private:
  explicit QZ(Rational rep) : rep_(std::move(rep)) {}
  Rational rep_;
};

inline QZ qz_reduce(const Rational& x) { return QZ::from(x); }

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw BadParameters("matrix entry count does not match its shape");
    }
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw BadParameters("ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const T> entries() const { return entries_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const { return is_square() && *this == transpose(); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw BadParameters("matrix shapes do not compose");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);

/// Solves M x = rhs exactly. M may carry extra constraint rows beyond its
/// column count; those must be consistent. Throws SingularSystem when the
/// system has no solution or more than one.
std::vector<Rational> solve_rational_system(const RatMatrix& m, std::span<const Rational> rhs);

struct SmithForm {
  IntMatrix U;  ///< unimodular, rows x rows
  IntMatrix D;  ///< diagonal, d1 | d2 | ... , all >= 0
  IntMatrix V;  ///< unimodular, cols x cols
};

/// U * A * V = D with D in Smith normal form.
SmithForm smith_normal_form(const IntMatrix& a);

/// Fraction-free (Bareiss) determinant.
BigInt determinant(const IntMatrix& a);

/// Exact inverse over Q. Throws SingularMatrix when det(a) = 0.
RatMatrix rational_inverse(const IntMatrix& a);

}  // namespace lenstor
