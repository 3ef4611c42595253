#include "ellk3/exact_linalg.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace ellk3 {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(const IntMatrix& m) : RatMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = m(i, j);
}

RatVector RatMatrix::row(std::size_t i) const {
  return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RatVector RatMatrix::col(std::size_t j) const {
  RatVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("RatMatrix: shape mismatch");
  RatMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

// Floor division for GMP integers (b != 0).
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Locate the entry of smallest nonzero absolute value in the block [t.., t..].
bool find_min_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Integer& x = a(i, j);
      if (x == 0) continue;
      Integer ax = abs(x);
      if (!found || ax < best) {
        found = true;
        best = ax;
        pi = i;
        pj = j;
      }
    }
  return found;
}

template <bool kTrack>
void smith_impl(IntMatrix& d, IntMatrix* u, IntMatrix* v) {
  const std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_min_pivot(d, t, pi, pj)) break;
    for (;;) {
      d.swap_rows(t, pi);
      d.swap_cols(t, pj);
      if constexpr (kTrack) {
        u->swap_rows(t, pi);
        v->swap_cols(t, pj);
      }
      bool dirty = false;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Integer q = -floor_div(d(i, t), d(t, t));
        d.add_row_multiple(i, t, q);
        if constexpr (kTrack) u->add_row_multiple(i, t, q);
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Integer q = -floor_div(d(t, j), d(t, t));
        d.add_col_multiple(j, t, q);
        if constexpr (kTrack) v->add_col_multiple(j, t, q);
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) {
        find_min_pivot(d, t, pi, pj);
        continue;
      }
      // Row and column cleared; enforce divisibility of the remaining block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < d.rows() && !fixed; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row_multiple(t, i, 1);
            if constexpr (kTrack) u->add_row_multiple(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
      pi = t;
      pj = t;
      find_min_pivot(d, t, pi, pj);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      if constexpr (kTrack) u->negate_row(t);
    }
  }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  smith_impl<true>(s.d, &s.u, &s.v);
  return s;
}

std::vector<Integer> elementary_divisors(const IntMatrix& a) {
  IntMatrix d = a;
  smith_impl<false>(d, nullptr, nullptr);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Euclid on column c over rows r.. until a single nonzero remains.
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i)
        if (h(i, c) != 0 && (best == h.rows() || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == h.rows()) break;
      h.swap_rows(r, best);
      bool more = false;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        h.add_row_multiple(i, r, -floor_div(h(i, c), h(r, c)));
        if (h(i, c) != 0) more = true;
      }
      if (!more) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) h.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) h.add_row_multiple(i, r, -floor_div(h(i, c), h(r, c)));
    ++r;
  }
  IntMatrix out(r, h.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = h(i, j);
  return out;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer x = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = x;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const RatMatrix& a) {
  RatMatrix m = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

std::size_t rank(const IntMatrix& a) { return hermite_normal_form(a).rows(); }

RatMatrix inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw std::domain_error("inverse: singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(c, j), m(p, j));
      std::swap(inv(c, j), inv(p, j));
    }
    Rational piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatMatrix inverse(const IntMatrix& a) { return inverse(RatMatrix(a)); }

Rational bilinear(const IntMatrix& gram, const RatVector& x, const RatVector& y) {
  if (x.size() != gram.rows() || y.size() != gram.cols())
    throw std::invalid_argument("bilinear: vector length does not match the Gram matrix");
  Rational s = 0;
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    if (x[i] == 0) continue;
    Rational t = 0;
    for (std::size_t j = 0; j < gram.cols(); ++j)
      if (y[j] != 0 && gram(i, j) != 0) t += gram(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

int legendre_symbol(const Integer& u, long p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("legendre_symbol: p must be an odd prime");
  Integer r = u % p;
  if (r < 0) r += p;
  if (r == 0) throw std::invalid_argument("legendre_symbol: p divides u");
  Integer e;
  Integer pp = p;
  mpz_powm_ui(e.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>((p - 1) / 2),
              pp.get_mpz_t());
  return e == 1 ? 1 : -1;
}

SquareClass::SquareClass(long p, int tag) : p_(p), tag_(tag) {
  if (p == 2) {
    if (tag != 1 && tag != 3 && tag != 5 && tag != 7)
      throw std::invalid_argument("SquareClass: 2-adic tag must be 1, 3, 5 or 7");
  } else if (tag != 1 && tag != -1) {
    throw std::invalid_argument("SquareClass: odd-prime tag must be +1 or -1");
  }
}

SquareClass SquareClass::nonsquare(long p) { return p == 2 ? SquareClass(2, 5) : SquareClass(p, -1); }

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("SquareClass: prime mismatch");
  if (a.p_ == 2) return SquareClass(2, (a.tag_ * b.tag_) % 8);
  return SquareClass(a.p_, a.tag_ * b.tag_);
}

std::ostream& operator<<(std::ostream& os, const SquareClass& c) {
  if (c.prime() == 2) return os << c.tag();
  return os << (c.tag() == 1 ? "1" : "v");
}

SquareClass square_class(const Integer& u, long p) {
  if (u % p == 0) throw std::invalid_argument("square_class: p divides u");
  if (p == 2) {
    Integer r = u % 8;
    if (r < 0) r += 8;
    return SquareClass(2, static_cast<int>(r.get_si()));
  }
  return SquareClass(p, legendre_symbol(u, p));
}

SquareClass square_class(const Rational& u, long p) {
  // 1/d and d lie in the same square class.
  return square_class(Integer(u.get_num() * u.get_den()), p);
}

int valuation(const Integer& n, long p) {
  if (n == 0) throw std::invalid_argument("valuation: zero");
  Integer m = n;
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& r, long p) { return valuation(r.get_num(), p) - valuation(r.get_den(), p); }

std::vector<long> prime_divisors(const Integer& n) {
  if (n == 0) throw std::invalid_argument("prime_divisors: zero");
  Integer m = abs(n);
  std::vector<long> out;
  for (long p = 2; Integer(p) * p <= m; ++p) {
    if (m % p != 0) continue;
    out.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) out.push_back(m.get_si());
  return out;
}

}  // namespace ellk3
