#include "lenstor/exact_arith.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace lenstor {

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw SingularSystem("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("not a rational literal: '" + std::string(text) + "'");
  }
  const BigInt n{std::string(num.front() == '+' ? num.substr(1) : num)};
  const BigInt d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw SingularSystem("division by zero");
  value_ /= o.value_;
  return *this;
}

QZ QZ::from(const Rational& x) { return QZ(x - Rational(x.floor())); }

Rational QZ::signed_representative() const {
  static const Rational half(1, 2);
  return rep_ > half ? rep_ - Rational(1) : rep_;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

std::vector<Rational> solve_rational_system(const RatMatrix& m, std::span<const Rational> rhs) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rhs.size() != rows) throw BadParameters("right-hand side length does not match row count");
  if (rows < cols) throw SingularSystem("underdetermined system");

  // Augmented working copy, eliminated to reduced row echelon form.
  RatMatrix a(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = m(i, j);
    a(i, cols) = rhs[i];
  }

  for (std::size_t col = 0; col < cols; ++col) {
    std::size_t pivot = col;
    while (pivot < rows && a(pivot, col).is_zero()) ++pivot;
    if (pivot == rows) throw SingularSystem("solution is not unique (column " + std::to_string(col) + ")");
    if (pivot != col)
      for (std::size_t j = col; j <= cols; ++j) std::swap(a(pivot, j), a(col, j));

    const Rational inv = Rational(1) / a(col, col);
    for (std::size_t j = col; j <= cols; ++j) a(col, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      const Rational f = a(i, col);
      for (std::size_t j = col; j <= cols; ++j) a(i, j) -= f * a(col, j);
    }
  }
  for (std::size_t i = cols; i < rows; ++i) {
    if (!a(i, cols).is_zero()) throw SingularSystem("inconsistent constraint row " + std::to_string(i));
  }

  std::vector<Rational> x(cols);
  for (std::size_t j = 0; j < cols; ++j) x[j] = a(j, cols);
  return x;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row[dst] += f * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  SmithForm s{IntMatrix::identity(rows), a, IntMatrix::identity(cols)};
  IntMatrix& d = s.D;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (d(i, j) == 0) continue;
          if (!best || abs(d(i, j)) < abs(d(best->first, best->second))) best = {i, j};
        }
      if (!best) return s;

      if (best->first != t) {
        swap_rows(d, t, best->first);
        swap_rows(s.U, t, best->first);
      }
      if (best->second != t) {
        swap_cols(d, t, best->second);
        swap_cols(s.V, t, best->second);
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        q = -q;
        add_row(d, i, t, q);
        add_row(s.U, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        q = -q;
        add_col(d, j, t, q);
        add_col(s.V, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold any offending row into the pivot row and repeat.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < rows && !offender; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      add_row(d, t, *offender, BigInt(1));
      add_row(s.U, t, *offender, BigInt(1));
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < rows; ++j) s.U(t, j) = -s.U(t, j);
    }
  }
  return s;
}

BigInt determinant(const IntMatrix& a) {
  if (!a.is_square()) throw BadParameters("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(m, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

RatMatrix rational_inverse(const IntMatrix& a) {
  if (!a.is_square()) throw BadParameters("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix w(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = Rational(a(i, j));
    w(i, n + i) = Rational(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && w(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw SingularMatrix("matrix has zero determinant");
    if (pivot != col)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(w(pivot, j), w(col, j));
    const Rational inv = Rational(1) / w(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) w(col, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || w(i, col).is_zero()) continue;
      const Rational f = w(i, col);
      for (std::size_t j = 0; j < 2 * n; ++j) w(i, j) -= f * w(col, j);
    }
  }
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = w(i, n + j);
  return inv;
}

}  // namespace lenstor
