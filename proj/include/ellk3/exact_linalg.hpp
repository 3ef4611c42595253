#pragma once

// Exact integer and rational linear algebra on top of GMP.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

namespace ellk3 {

using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntMatrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  // col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Dense row-major matrix of exact rationals (always kept canonical).
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  explicit RatMatrix(const IntMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RatVector row(std::size_t i) const;
  RatVector col(std::size_t j) const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct SmithForm {
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix d;  // diagonal, d_1 | d_2 | ..., non-negative
  IntMatrix v;  // unimodular, cols x cols
};

/// U * A * V = D. Pivots are chosen by smallest nonzero absolute value, so the
/// transforms are deterministic for a given input.
SmithForm smith_normal_form(const IntMatrix& a);

/// Diagonal entries of the Smith form only (cheaper: no transforms).
std::vector<Integer> elementary_divisors(const IntMatrix& a);

/// Row-style Hermite normal form: upper echelon, positive pivots, entries above
/// each pivot reduced into [0, pivot). Zero rows are dropped, so the result has
/// rank(A) rows.
IntMatrix hermite_normal_form(const IntMatrix& a);

/// Bareiss fraction-free determinant.
Integer determinant(const IntMatrix& a);

/// Rank over Q.
std::size_t rank(const IntMatrix& a);
std::size_t rank(const RatMatrix& a);

/// Exact inverse; throws std::domain_error when singular.
RatMatrix inverse(const IntMatrix& a);
RatMatrix inverse(const RatMatrix& a);

/// x^T G y with G integral.
Rational bilinear(const IntMatrix& gram, const RatVector& x, const RatVector& y);

/// Legendre symbol (u/p) for an odd prime p not dividing u.
int legendre_symbol(const Integer& u, long p);

/// Class of a p-adic unit in Z_p^x / (Z_p^x)^2.
///   odd p: tag +1 (squares) or -1 (the nonsquare class v_p);
///   p = 2: tag in {1, 3, 5, 7} (the residue mod 8).
class SquareClass {
 public:
  SquareClass() = default;
  SquareClass(long p, int tag);

  static SquareClass one(long p) { return SquareClass(p, 1); }
  /// The nontrivial class v_p (odd p) or the class of 5 (p = 2).
  static SquareClass nonsquare(long p);

  long prime() const { return p_; }
  int tag() const { return tag_; }

  friend SquareClass operator*(const SquareClass& a, const SquareClass& b);
  friend auto operator<=>(const SquareClass&, const SquareClass&) = default;
  friend bool operator==(const SquareClass&, const SquareClass&) = default;

 private:
  long p_ = 2;
  int tag_ = 1;
};

std::ostream& operator<<(std::ostream& os, const SquareClass& c);

/// Square class of the integer unit u at p; throws when p | u.
SquareClass square_class(const Integer& u, long p);
/// Square class of a rational p-adic unit (numerator and denominator prime to p).
SquareClass square_class(const Rational& u, long p);

/// Exponent of p in the nonzero integer n.
int valuation(const Integer& n, long p);
/// Exponent of p in the nonzero rational r (may be negative).
int valuation(const Rational& r, long p);

/// Distinct prime divisors of |n| in increasing order (n != 0).
std::vector<long> prime_divisors(const Integer& n);

}  // namespace ellk3
