#include "ellk3/local_invariants.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace ellk3 {

namespace {

int mod8(long x) { return static_cast<int>(((x % 8) + 8) % 8); }

long ipow(long p, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

// Exponent phi with order(x) = p^phi for x in Q/Z (x given as any rational).
int phi(const Rational& x, long p) {
  Rational r = mod1(x);
  if (r == 0) return 0;
  return valuation(Integer(r.get_den()), p);
}

// The integer x * p^nu, which must be integral.
Integer scaled(const Rational& x, long pnu) {
  Rational r = x * pnu;
  if (r.get_den() != 1) throw std::logic_error("local invariants: value not in p^-nu Z");
  return r.get_num();
}

long inverse_mod(const Integer& a, long m) {
  Integer inv;
  Integer mm = m;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), mm.get_mpz_t()) == 0)
    throw std::logic_error("local invariants: not invertible");
  return inv.get_si();
}

// Working presentation of a p-group form: generator orders p^nu_i and values.
struct Pres {
  long p = 2;
  std::vector<int> nu;
  std::vector<Rational> q;
  std::vector<std::vector<Rational>> b;

  std::size_t size() const { return nu.size(); }
};

// Presentation on new generators given as integer combinations of the old ones.
Pres recombine(const Pres& in, const std::vector<std::vector<Integer>>& coeffs,
               const std::vector<int>& nus) {
  Pres out;
  out.p = in.p;
  out.nu = nus;
  const std::size_t m = coeffs.size(), k = in.size();
  out.q.resize(m);
  out.b.assign(m, std::vector<Rational>(m));
  for (std::size_t x = 0; x < m; ++x) {
    Rational qq = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (coeffs[x][i] == 0) continue;
      qq += coeffs[x][i] * coeffs[x][i] * in.q[i];
      for (std::size_t j = i + 1; j < k; ++j) qq += 2 * coeffs[x][i] * coeffs[x][j] * in.b[i][j];
    }
    out.q[x] = mod2(qq);
    for (std::size_t y = 0; y < m; ++y) {
      Rational bb = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (coeffs[x][i] == 0) continue;
        for (std::size_t j = 0; j < k; ++j) bb += coeffs[x][i] * coeffs[y][j] * in.b[i][j];
      }
      out.b[x][y] = mod1(bb);
    }
  }
  return out;
}

LocalInvariantSet rank1_set(long p, int nu, const Rational& qv) {
  if (nu < 1) throw std::invalid_argument("rank_le2_set: generator must have order p^nu, nu >= 1");
  const long pnu = ipow(p, nu);
  Integer a = scaled(qv, pnu);
  if (a % p == 0) throw std::invalid_argument("rank_le2_set: degenerate form");
  if (p != 2) {
    int chi = legendre_symbol(a, p);
    if (chi == 1) return {LocalInvariant(mod8(pnu - 1), SquareClass::one(p))};
    if (nu % 2 == 0) return {LocalInvariant(mod8(pnu - 1), SquareClass::nonsquare(p))};
    return {LocalInvariant(mod8(pnu + 3), SquareClass::nonsquare(p))};
  }
  SquareClass ca = square_class(a, 2);
  const int a8 = ca.tag();
  const bool pm1 = (a8 == 1 || a8 == 7);
  if (nu % 2 == 0) return {LocalInvariant(mod8(1 - a8), ca)};
  const int e = pm1 ? mod8(1 - a8) : mod8(5 - a8);
  if (nu >= 2) return {LocalInvariant(e, ca)};
  return {LocalInvariant(e, ca), LocalInvariant(e, ca * SquareClass(2, 5))};
}

// Rank-two 2-adic block (1/2^nu)[[2u~, v], [v, 2w~]] given by q-values.
LocalInvariantSet rank2_set(int nu, const Rational& q1, const Rational& q2, const Rational& b12) {
  const long pnu = ipow(2, nu);
  Integer v = scaled(mod1(b12), pnu);
  if (v % 2 == 0) throw std::invalid_argument("rank_le2_set: off-diagonal numerator must be odd");
  Integer two_u = scaled(q1, pnu), two_w = scaled(q2, pnu);
  if (two_u % 2 != 0 || two_w % 2 != 0)
    throw std::invalid_argument("rank_le2_set: diagonal must not attain the full order");
  const bool uw_odd = ((two_u / 2) % 2 != 0) && ((two_w / 2) % 2 != 0);
  if (!uw_odd) return {LocalInvariant(2, SquareClass(2, 7))};
  if (nu % 2 == 0) return {LocalInvariant(2, SquareClass(2, 3))};
  return {LocalInvariant(6, SquareClass(2, 3))};
}

LocalInvariantSet recurse(const Pres& pr) {
  const long p = pr.p;
  const std::size_t l = pr.size();
  if (l == 0) return {LocalInvariant(0, SquareClass::one(p))};
  if (l == 1) return rank1_set(p, pr.nu[0], pr.q[0]);

  const int nu1 = *std::max_element(pr.nu.begin(), pr.nu.end());
  const long pnu1 = ipow(p, nu1);

  // Case 1: a generator whose self-pairing has full order splits off.
  for (std::size_t i = 0; i < l; ++i) {
    if (pr.nu[i] != nu1 || phi(pr.b[i][i], p) != nu1) continue;
    Integer u = scaled(pr.b[i][i], pnu1);
    long v = inverse_mod(u, pnu1);
    std::vector<std::vector<Integer>> coeffs;
    std::vector<int> nus;
    for (std::size_t j = 0; j < l; ++j) {
      if (j == i) continue;
      std::vector<Integer> c(l, 0);
      Integer w = scaled(pr.b[j][i], pnu1);
      c[j] = 1;
      c[i] = -v * w;
      c[i] %= pnu1;
      coeffs.push_back(std::move(c));
      nus.push_back(pr.nu[j]);
    }
    Pres rest = recombine(pr, coeffs, nus);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      Rational check = 0;
      for (std::size_t a = 0; a < l; ++a) check += coeffs[j][a] * pr.b[a][i];
      if (mod1(check) != 0) throw std::logic_error("local invariants: split failed");
    }
    return star(rank1_set(p, nu1, pr.q[i]), recurse(rest));
  }

  // Case 2: every self-pairing has smaller order; nondegeneracy gives a partner.
  std::size_t i0 = l;
  for (std::size_t i = 0; i < l; ++i)
    if (pr.nu[i] == nu1) {
      i0 = i;
      break;
    }
  std::size_t k = l;
  for (std::size_t j = 0; j < l; ++j)
    if (j != i0 && phi(pr.b[i0][j], p) == nu1) {
      k = j;
      break;
    }
  if (k == l) throw std::invalid_argument("local_invariant_set: degenerate form");

  if (p != 2) {
    std::vector<std::vector<Integer>> coeffs;
    for (std::size_t j = 0; j < l; ++j) {
      std::vector<Integer> c(l, 0);
      c[j] = 1;
      if (j == i0) c[k] = 1;
      coeffs.push_back(std::move(c));
    }
    return recurse(recombine(pr, coeffs, pr.nu));
  }

  if (l == 2) return rank2_set(nu1, pr.q[i0], pr.q[k], pr.b[i0][k]);

  Integer two_u = scaled(pr.b[i0][i0], pnu1);
  Integer vv = scaled(pr.b[i0][k], pnu1);
  Integer two_w = scaled(pr.b[k][k], pnu1);
  long t = inverse_mod(Integer(two_u * two_w - vv * vv), pnu1);
  std::vector<std::vector<Integer>> coeffs;
  std::vector<int> nus;
  for (std::size_t j = 0; j < l; ++j) {
    if (j == i0 || j == k) continue;
    Integer s1 = scaled(pr.b[j][i0], pnu1), s2 = scaled(pr.b[j][k], pnu1);
    Integer beta1 = t * (two_w * s1 - vv * s2);
    Integer beta2 = t * (-vv * s1 + two_u * s2);
    beta1 %= pnu1;
    beta2 %= pnu1;
    std::vector<Integer> c(l, 0);
    c[j] = 1;
    c[i0] = -beta1;
    c[k] = -beta2;
    coeffs.push_back(std::move(c));
    nus.push_back(pr.nu[j]);
  }
  Pres rest = recombine(pr, coeffs, nus);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    for (std::size_t g : {i0, k}) {
      Rational check = 0;
      for (std::size_t a = 0; a < l; ++a) check += coeffs[j][a] * pr.b[a][g];
      if (mod1(check) != 0) throw std::logic_error("local invariants: block split failed");
    }
  return star(rank2_set(nu1, pr.q[i0], pr.q[k], pr.b[i0][k]), recurse(rest));
}

int p_power_exponent(long d, long p) {
  int e = 0;
  while (d % p == 0) {
    d /= p;
    ++e;
  }
  if (d != 1) throw std::invalid_argument("local invariants: order is not a power of p");
  return e;
}

Pres presentation_of(const FiniteQuadraticForm& q, long p) {
  Pres pr;
  pr.p = p;
  for (std::size_t i = 0; i < q.length(); ++i) {
    pr.nu.push_back(p_power_exponent(q.order(i), p));
    pr.q.push_back(q.q(i));
    std::vector<Rational> row;
    for (std::size_t j = 0; j < q.length(); ++j) row.push_back(q.b(i, j));
    pr.b.push_back(std::move(row));
  }
  return pr;
}

}  // namespace

LocalInvariant::LocalInvariant(int e, SquareClass u) : excess(mod8(e)), reddisc(u) {}

std::ostream& operator<<(std::ostream& os, const LocalInvariant& x) {
  return os << '[' << x.excess << ", " << x.reddisc << ']';
}

std::ostream& operator<<(std::ostream& os, const LocalInvariantSet& s) {
  os << '{';
  bool first = true;
  for (const auto& x : s) {
    os << (first ? "" : ", ") << x;
    first = false;
  }
  return os << '}';
}

int p_excess(const std::vector<JordanBlock>& blocks, long p) {
  long total = 0;
  if (p != 2) {
    long rank = 0, m = 0;
    for (const auto& bl : blocks) {
      if (bl.kind != JordanBlock::Kind::Unit)
        throw std::invalid_argument("p_excess: U/V blocks exist only at p = 2");
      if (bl.a % p == 0) throw std::invalid_argument("p_excess: block scalar is not a unit");
      ++rank;
      if (bl.nu % 2 == 1 && legendre_symbol(bl.a, p) == -1) ++m;
      Integer pw;
      Integer pp = p;
      mpz_powm_ui(pw.get_mpz_t(), pp.get_mpz_t(), static_cast<unsigned long>(bl.nu), Integer(8).get_mpz_t());
      total += pw.get_si();
    }
    return mod8(-rank + 4 * m + total);
  }
  for (const auto& bl : blocks) {
    switch (bl.kind) {
      case JordanBlock::Kind::Unit: {
        if (bl.a % 2 == 0) throw std::invalid_argument("p_excess: block scalar is not a unit");
        int a = square_class(bl.a, 2).tag();
        bool pm1 = (a == 1 || a == 7);
        total += (bl.nu % 2 == 0 || pm1) ? 1 - a : 5 - a;
        break;
      }
      case JordanBlock::Kind::U:
        total += 2;
        break;
      case JordanBlock::Kind::V:
        total += (bl.nu % 2 == 0) ? 2 : 6;
        break;
    }
  }
  return mod8(total);
}

SquareClass reddisc(const std::vector<JordanBlock>& blocks, long p) {
  SquareClass c = SquareClass::one(p);
  for (const auto& bl : blocks) {
    switch (bl.kind) {
      case JordanBlock::Kind::Unit:
        c = c * square_class(bl.a, p);
        break;
      case JordanBlock::Kind::U:
        if (p != 2) throw std::invalid_argument("reddisc: U/V blocks exist only at p = 2");
        c = c * SquareClass(2, 7);
        break;
      case JordanBlock::Kind::V:
        if (p != 2) throw std::invalid_argument("reddisc: U/V blocks exist only at p = 2");
        c = c * SquareClass(2, 3);
        break;
    }
  }
  return c;
}

LocalInvariantSet star(const LocalInvariantSet& a, const LocalInvariantSet& b) {
  LocalInvariantSet out;
  for (const auto& x : a)
    for (const auto& y : b) {
      if (x.reddisc.prime() != y.reddisc.prime()) throw std::invalid_argument("star: prime mismatch");
      out.insert(LocalInvariant(x.excess + y.excess, x.reddisc * y.reddisc));
    }
  return out;
}

LocalInvariantSet unimodular_set(long p, long k) {
  if (k < 0) throw std::invalid_argument("unimodular_set: negative rank");
  if (k == 0) return {LocalInvariant(0, SquareClass::one(p))};
  if (p != 2) return {LocalInvariant(0, SquareClass::one(p)), LocalInvariant(0, SquareClass::nonsquare(p))};
  if (k % 2 == 1) return {};
  const int e = mod8(k);
  if (k % 4 == 0) return {LocalInvariant(e, SquareClass(2, 1)), LocalInvariant(e, SquareClass(2, 5))};
  return {LocalInvariant(e, SquareClass(2, 3)), LocalInvariant(e, SquareClass(2, 7))};
}

LocalInvariantSet rank_le2_set(long p, const FiniteQuadraticForm& q) {
  Pres pr = presentation_of(q, p);
  if (pr.size() == 1) return rank1_set(p, pr.nu[0], pr.q[0]);
  if (pr.size() == 2 && p == 2 && pr.nu[0] == pr.nu[1])
    return rank2_set(pr.nu[0], pr.q[0], pr.q[1], pr.b[0][1]);
  throw std::invalid_argument("rank_le2_set: form is not a rank-one or rank-two block");
}

LocalInvariantSet local_invariant_set(long p, long n, const FiniteQuadraticForm& q_p) {
  if (n < 0) throw std::invalid_argument("local_invariant_set: negative rank");
  for (long d : q_p.orders()) p_power_exponent(d, p);
  FiniteQuadraticForm red = reduced_generators(q_p);
  const long l = static_cast<long>(red.length());
  if (n < l) return {};
  return star(unimodular_set(p, n - l), recurse(presentation_of(red, p)));
}

}  // namespace ellk3
