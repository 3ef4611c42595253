#include "ellk3/fqf.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ellk3 {

namespace {

constexpr long kMaxDenom = 1L << 40;
constexpr std::uint64_t kMaxScan = 1ULL << 24;

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("fqf: value does not fit in a machine word");
  return z.get_si();
}

long pos_mod(__int128 a, long m) {
  __int128 r = a % m;
  if (r < 0) r += m;
  return static_cast<long>(r);
}

Rational rat_from_num(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

void check_scan_size(const FiniteQuadraticForm& q) {
  if (q.group_order() > kMaxScan) throw std::length_error("fqf: group too large to enumerate");
}

// Form induced on explicit generators with the given orders.
FiniteQuadraticForm form_on(const FiniteQuadraticForm& q, const std::vector<FqfElement>& gens,
                            const std::vector<long>& orders) {
  const std::size_t k = gens.size();
  std::vector<Rational> qd(k);
  std::vector<std::vector<Rational>> bm(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) {
    qd[i] = eval_q(q, gens[i]);
    for (std::size_t j = 0; j < k; ++j) bm[i][j] = eval_b(q, gens[i], gens[j]);
  }
  return FiniteQuadraticForm(orders, qd, bm);
}

IntMatrix integer_matrix(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw std::logic_error("fqf: expected an integral matrix");
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

// HNF of the preimage in Z^k of the subgroup generated by gens.
IntMatrix preimage_basis(const FiniteQuadraticForm& q, const std::vector<FqfElement>& gens) {
  const std::size_t k = q.length();
  IntMatrix m(gens.size() + k, k);
  for (std::size_t r = 0; r < gens.size(); ++r)
    for (std::size_t j = 0; j < k; ++j) m(r, j) = gens[r][j];
  for (std::size_t i = 0; i < k; ++i) m(gens.size() + i, i) = q.order(i);
  return hermite_normal_form(m);
}

}  // namespace

Rational mod2(const Rational& x) {
  Integer f;
  Rational half = x / 2;
  mpz_fdiv_q(f.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
  Rational r = x - 2 * f;
  r.canonicalize();
  return r;
}

Rational mod1(const Rational& x) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - f;
  r.canonicalize();
  return r;
}

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<long> orders,
                                         const std::vector<Rational>& qdiag,
                                         const std::vector<std::vector<Rational>>& bmat)
    : orders_(std::move(orders)) {
  const std::size_t k = orders_.size();
  if (qdiag.size() != k || bmat.size() != k)
    throw std::invalid_argument("FiniteQuadraticForm: size mismatch");
  for (const auto& row : bmat)
    if (row.size() != k) throw std::invalid_argument("FiniteQuadraticForm: b is not square");
  for (long d : orders_)
    if (d < 1 || d > (1L << 31)) throw std::invalid_argument("FiniteQuadraticForm: bad order");

  std::vector<Rational> qs(k);
  std::vector<Rational> bs(k * k);
  Integer n = 1;
  for (std::size_t i = 0; i < k; ++i) {
    qs[i] = mod2(qdiag[i]);
    mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), qs[i].get_den_mpz_t());
    for (std::size_t j = 0; j < k; ++j) {
      bs[i * k + j] = mod1(bmat[i][j]);
      mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), bs[i * k + j].get_den_mpz_t());
    }
  }
  if (n > kMaxDenom) throw std::invalid_argument("FiniteQuadraticForm: denominator too large");
  denom_ = n.get_si();

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (bs[i * k + j] != bs[j * k + i])
        throw std::invalid_argument("FiniteQuadraticForm: b is not symmetric");
      if (mod1(orders_[i] * bs[i * k + j]) != 0)
        throw std::invalid_argument("FiniteQuadraticForm: order does not annihilate b");
    }
    if (mod1(qs[i]) != bs[i * k + i])
      throw std::invalid_argument("FiniteQuadraticForm: b(x,x) differs from q(x) mod 1");
    if (mod2(Rational(orders_[i]) * orders_[i] * qs[i]) != 0)
      throw std::invalid_argument("FiniteQuadraticForm: order does not annihilate q");
  }

  qnum_.resize(k);
  bnum_.resize(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    qnum_[i] = to_long(Integer(qs[i] * denom_));
    for (std::size_t j = 0; j < k; ++j) bnum_[i * k + j] = to_long(Integer(bs[i * k + j] * denom_));
  }
}

std::uint64_t FiniteQuadraticForm::group_order() const {
  unsigned __int128 n = 1;
  for (long d : orders_) {
    n *= static_cast<unsigned long>(d);
    if (n > (static_cast<unsigned __int128>(1) << 62))
      throw std::overflow_error("FiniteQuadraticForm: group order too large");
  }
  return static_cast<std::uint64_t>(n);
}

Rational FiniteQuadraticForm::q(std::size_t i) const { return rat_from_num(qnum_[i], denom_); }

Rational FiniteQuadraticForm::b(std::size_t i, std::size_t j) const {
  return rat_from_num(bnum(i, j), denom_);
}

FqfElement FiniteQuadraticForm::reduce(const FqfElement& x) const {
  if (x.size() != length()) throw std::invalid_argument("fqf: element has wrong length");
  FqfElement r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = pos_mod(x[i], orders_[i]);
  return r;
}

FqfElement FiniteQuadraticForm::add(const FqfElement& x, const FqfElement& y) const {
  FqfElement r(length());
  for (std::size_t i = 0; i < length(); ++i)
    r[i] = pos_mod(static_cast<__int128>(x[i]) + y[i], orders_[i]);
  return r;
}

FqfElement FiniteQuadraticForm::scale(long k, const FqfElement& x) const {
  FqfElement r(length());
  for (std::size_t i = 0; i < length(); ++i)
    r[i] = pos_mod(static_cast<__int128>(k) * x[i], orders_[i]);
  return r;
}

long FiniteQuadraticForm::element_order(const FqfElement& x) const {
  long o = 1;
  for (std::size_t i = 0; i < length(); ++i) {
    long c = pos_mod(x[i], orders_[i]);
    long oi = orders_[i] / std::gcd(c, orders_[i]);
    o = std::lcm(o, oi);
  }
  return o;
}

long FiniteQuadraticForm::q_numerator(const FqfElement& x) const {
  const std::size_t k = length();
  const long two_n = 2 * denom_;
  __int128 acc = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    __int128 xi = x[i];
    acc = (acc + xi * xi % two_n * qnum_[i]) % two_n;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (x[j] == 0 || bnum_[i * k + j] == 0) continue;
      acc = (acc + 2 * (xi * x[j] % denom_) * bnum_[i * k + j]) % two_n;
    }
  }
  return pos_mod(acc, two_n);
}

long FiniteQuadraticForm::b_numerator(const FqfElement& x, const FqfElement& y) const {
  const std::size_t k = length();
  __int128 acc = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (y[j] == 0 || bnum_[i * k + j] == 0) continue;
      acc = (acc + static_cast<__int128>(x[i]) * y[j] % denom_ * bnum_[i * k + j]) % denom_;
    }
  }
  return pos_mod(acc, denom_);
}

std::size_t FiniteQuadraticForm::index_of(const FqfElement& x) const {
  std::size_t idx = 0;
  for (std::size_t i = length(); i-- > 0;)
    idx = idx * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(pos_mod(x[i], orders_[i]));
  return idx;
}

FqfElement FiniteQuadraticForm::element_at(std::size_t idx) const {
  FqfElement x(length());
  for (std::size_t i = 0; i < length(); ++i) {
    x[i] = static_cast<long>(idx % static_cast<std::size_t>(orders_[i]));
    idx /= static_cast<std::size_t>(orders_[i]);
  }
  return x;
}

bool operator==(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  return a.orders_ == b.orders_ && a.denom_ == b.denom_ && a.qnum_ == b.qnum_ && a.bnum_ == b.bnum_;
}

std::ostream& operator<<(std::ostream& os, const FiniteQuadraticForm& q) {
  os << "orders (";
  for (std::size_t i = 0; i < q.length(); ++i) os << (i ? "," : "") << q.order(i);
  os << ") q (";
  for (std::size_t i = 0; i < q.length(); ++i) os << (i ? "," : "") << q.q(i);
  os << ") b [";
  for (std::size_t i = 0; i < q.length(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < q.length(); ++j) os << (j ? "," : "") << q.b(i, j);
    os << ']';
  }
  return os << ']';
}

Rational eval_q(const FiniteQuadraticForm& q, const FqfElement& x) {
  return rat_from_num(q.q_numerator(q.reduce(x)), q.denom());
}

Rational eval_b(const FiniteQuadraticForm& q, const FqfElement& x, const FqfElement& y) {
  return rat_from_num(q.b_numerator(q.reduce(x), q.reduce(y)), q.denom());
}

RatVector DiscriminantForm::lift(const FqfElement& x) const {
  RatVector v(lattice_rank);
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += x[i] * lifts[i][j];
  }
  return v;
}

DiscriminantForm discriminant_form(const IntMatrix& gram) {
  if (!gram.is_symmetric()) throw std::invalid_argument("discriminant_form: Gram matrix not symmetric");
  for (std::size_t i = 0; i < gram.rows(); ++i)
    if (gram(i, i) % 2 != 0) throw std::invalid_argument("discriminant_form: lattice is odd");
  if (determinant(gram) == 0) throw std::invalid_argument("discriminant_form: singular Gram matrix");

  const std::size_t n = gram.rows();
  SmithForm s = smith_normal_form(gram);
  DiscriminantForm out;
  out.lattice_rank = n;
  std::vector<long> orders;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = s.d(i, i);
    if (d == 1) continue;
    orders.push_back(to_long(d));
    RatVector x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = Rational(s.v(j, i), d);
    for (auto& c : x) c.canonicalize();
    out.lifts.push_back(std::move(x));
  }
  const std::size_t k = orders.size();
  std::vector<Rational> qd(k);
  std::vector<std::vector<Rational>> bm(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) {
    qd[i] = bilinear(gram, out.lifts[i], out.lifts[i]);
    for (std::size_t j = 0; j < k; ++j) bm[i][j] = bilinear(gram, out.lifts[i], out.lifts[j]);
  }
  out.form = FiniteQuadraticForm(orders, qd, bm);
  return out;
}

FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  const std::size_t ka = a.length(), k = a.length() + b.length();
  std::vector<long> orders = a.orders();
  orders.insert(orders.end(), b.orders().begin(), b.orders().end());
  std::vector<Rational> qd(k);
  std::vector<std::vector<Rational>> bm(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < ka; ++i) {
    qd[i] = a.q(i);
    for (std::size_t j = 0; j < ka; ++j) bm[i][j] = a.b(i, j);
  }
  for (std::size_t i = 0; i < b.length(); ++i) {
    qd[ka + i] = b.q(i);
    for (std::size_t j = 0; j < b.length(); ++j) bm[ka + i][ka + j] = b.b(i, j);
  }
  return FiniteQuadraticForm(orders, qd, bm);
}

FiniteQuadraticForm negate(const FiniteQuadraticForm& q) {
  const std::size_t k = q.length();
  std::vector<Rational> qd(k);
  std::vector<std::vector<Rational>> bm(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) {
    qd[i] = -q.q(i);
    for (std::size_t j = 0; j < k; ++j) bm[i][j] = -q.b(i, j);
  }
  return FiniteQuadraticForm(q.orders(), qd, bm);
}

FiniteQuadraticForm p_part(const FiniteQuadraticForm& q, long p) {
  std::vector<FqfElement> gens;
  std::vector<long> orders;
  for (std::size_t i = 0; i < q.length(); ++i) {
    long d = q.order(i);
    long pk = 1;
    while (d % p == 0) {
      d /= p;
      pk *= p;
    }
    if (pk == 1) continue;
    FqfElement g = q.zero();
    g[i] = d;
    gens.push_back(std::move(g));
    orders.push_back(pk);
  }
  return form_on(q, gens, orders);
}

QuotientPresentation quotient_presentation(const FiniteQuadraticForm& q,
                                           const std::vector<FqfElement>& s_gens,
                                           const std::vector<FqfElement>& h_gens) {
  QuotientPresentation out;
  const std::size_t k = q.length();
  if (k == 0) return out;
  IntMatrix b = preimage_basis(q, s_gens);
  IntMatrix c = preimage_basis(q, h_gens);
  IntMatrix a = integer_matrix(RatMatrix(c) * inverse(b));
  SmithForm s = smith_normal_form(a);
  IntMatrix vinv = integer_matrix(inverse(s.v));
  IntMatrix gens = vinv * b;
  for (std::size_t i = 0; i < k; ++i) {
    Integer si = s.d(i, i);
    if (si == 1) continue;
    if (si == 0) throw std::logic_error("quotient_presentation: H is not inside S");
    FqfElement g(k);
    for (std::size_t j = 0; j < k; ++j) {
      Integer r;
      Integer dj = q.order(j);
      mpz_fdiv_r(r.get_mpz_t(), gens(i, j).get_mpz_t(), dj.get_mpz_t());
      g[j] = r.get_si();
    }
    out.gens.push_back(std::move(g));
    out.orders.push_back(to_long(si));
  }
  return out;
}

FiniteQuadraticForm normalize(const FiniteQuadraticForm& q) {
  std::vector<FqfElement> units;
  for (std::size_t i = 0; i < q.length(); ++i) {
    FqfElement e = q.zero();
    e[i] = 1;
    units.push_back(std::move(e));
  }
  QuotientPresentation p = quotient_presentation(q, units, {});
  return form_on(q, p.gens, p.orders);
}

FiniteQuadraticForm reduced_generators(const FiniteQuadraticForm& q) {
  std::uint64_t n = q.group_order();
  if (n > 1) {
    std::vector<long> ps = prime_divisors(Integer(static_cast<unsigned long>(n)));
    if (ps.size() != 1) throw std::invalid_argument("reduced_generators: not a p-group");
  }
  std::vector<FqfElement> units;
  for (std::size_t i = 0; i < q.length(); ++i) {
    FqfElement e = q.zero();
    e[i] = 1;
    units.push_back(std::move(e));
  }
  QuotientPresentation p = quotient_presentation(q, units, {});
  std::reverse(p.gens.begin(), p.gens.end());
  std::reverse(p.orders.begin(), p.orders.end());
  return form_on(q, p.gens, p.orders);
}

std::vector<long> invariant_factors(const FiniteQuadraticForm& q,
                                    const std::vector<FqfElement>& gens) {
  QuotientPresentation p = quotient_presentation(q, gens, {});
  std::vector<long> f = p.orders;
  std::reverse(f.begin(), f.end());
  return f;
}

std::vector<std::size_t> subgroup_indices(const FiniteQuadraticForm& q,
                                          const std::vector<FqfElement>& gens) {
  check_scan_size(q);
  std::vector<char> in(q.group_order(), 0);
  std::vector<FqfElement> elems{q.zero()};
  in[q.index_of(q.zero())] = 1;
  for (const auto& g0 : gens) {
    FqfElement g = q.reduce(g0);
    if (in[q.index_of(g)]) continue;
    const std::size_t base = elems.size();
    FqfElement step = g;
    while (!in[q.index_of(step)]) {
      for (std::size_t t = 0; t < base; ++t) {
        FqfElement e = q.add(elems[t], step);
        in[q.index_of(e)] = 1;
        elems.push_back(std::move(e));
      }
      step = q.add(step, g);
    }
  }
  std::vector<std::size_t> idx;
  idx.reserve(elems.size());
  for (const auto& e : elems) idx.push_back(q.index_of(e));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<FqfElement> isotropic_elements(const FiniteQuadraticForm& q) {
  check_scan_size(q);
  std::vector<FqfElement> out;
  for (std::size_t i = 0; i < q.group_order(); ++i) {
    FqfElement x = q.element_at(i);
    if (q.q_numerator(x) == 0) out.push_back(std::move(x));
  }
  return out;
}

std::vector<FqfElement> orthogonal_complement(const FiniteQuadraticForm& q,
                                              const std::vector<FqfElement>& h_gens) {
  check_scan_size(q);
  const std::size_t k = q.length();
  // w[h][i] = b(h, gamma_i) numerators
  std::vector<std::vector<long>> w;
  for (const auto& h0 : h_gens) {
    FqfElement h = q.reduce(h0);
    std::vector<long> row(k);
    for (std::size_t i = 0; i < k; ++i) {
      FqfElement e = q.zero();
      e[i] = 1;
      row[i] = q.b_numerator(h, e);
    }
    w.push_back(std::move(row));
  }
  std::vector<FqfElement> out;
  for (std::size_t idx = 0; idx < q.group_order(); ++idx) {
    FqfElement x = q.element_at(idx);
    bool ok = true;
    for (const auto& row : w) {
      __int128 acc = 0;
      for (std::size_t i = 0; i < k; ++i) acc += static_cast<__int128>(x[i]) * row[i];
      if (acc % q.denom() != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(x));
  }
  return out;
}

std::vector<FqfElement> generating_set(const FiniteQuadraticForm& q,
                                       const std::vector<FqfElement>& elements) {
  check_scan_size(q);
  std::vector<FqfElement> gens;
  std::vector<char> in(q.group_order(), 0);
  std::vector<FqfElement> span{q.zero()};
  in[q.index_of(q.zero())] = 1;
  for (const auto& x0 : elements) {
    FqfElement g = q.reduce(x0);
    if (in[q.index_of(g)]) continue;
    gens.push_back(g);
    const std::size_t base = span.size();
    FqfElement step = g;
    while (!in[q.index_of(step)]) {
      for (std::size_t t = 0; t < base; ++t) {
        FqfElement e = q.add(span[t], step);
        in[q.index_of(e)] = 1;
        span.push_back(std::move(e));
      }
      step = q.add(step, g);
    }
  }
  return gens;
}

bool is_totally_isotropic(const FiniteQuadraticForm& q, const std::vector<FqfElement>& h_gens) {
  for (std::size_t i = 0; i < h_gens.size(); ++i) {
    FqfElement hi = q.reduce(h_gens[i]);
    if (q.q_numerator(hi) != 0) return false;
    for (std::size_t j = i + 1; j < h_gens.size(); ++j)
      if (q.b_numerator(hi, q.reduce(h_gens[j])) != 0) return false;
  }
  return true;
}

FiniteQuadraticForm subquotient(const FiniteQuadraticForm& q,
                                const std::vector<FqfElement>& h_gens) {
  if (!is_totally_isotropic(q, h_gens))
    throw std::invalid_argument("subquotient: H is not totally isotropic");
  std::vector<FqfElement> perp = orthogonal_complement(q, h_gens);
  std::vector<FqfElement> perp_gens = generating_set(q, perp);
  QuotientPresentation p = quotient_presentation(q, perp_gens, h_gens);
  return form_on(q, p.gens, p.orders);
}

namespace {

std::string rat_text(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

Rational parse_rat(const std::string& tok) {
  if (tok.find('/') == std::string::npos)
    throw std::invalid_argument("parse_form: expected a/b, got '" + tok + "'");
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), tok.c_str(), 10) != 0 || r.get_den() == 0)
    throw std::invalid_argument("parse_form: bad rational '" + tok + "'");
  r.canonicalize();
  return r;
}

}  // namespace

std::string format_form(const FiniteQuadraticForm& q) {
  std::ostringstream out;
  const std::size_t k = q.length();
  for (std::size_t i = 0; i < k; ++i) out << (i ? " " : "") << q.order(i);
  out << '\n';
  for (std::size_t i = 0; i < k; ++i) out << (i ? " " : "") << rat_text(q.q(i));
  out << '\n';
  for (std::size_t i = 0; i + 1 < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) out << (j > i + 1 ? " " : "") << rat_text(q.b(i, j));
    out << '\n';
  }
  return out.str();
}

FiniteQuadraticForm parse_form(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (lines.size() < 2) throw std::invalid_argument("parse_form: need at least two lines");

  std::vector<long> orders;
  for (const auto& tok : split_ws(lines[0])) {
    std::size_t pos = 0;
    long d = 0;
    try {
      d = std::stol(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_form: bad order '" + tok + "'");
    }
    if (pos != tok.size() || d < 1) throw std::invalid_argument("parse_form: bad order '" + tok + "'");
    orders.push_back(d);
  }
  const std::size_t k = orders.size();
  std::vector<std::string> qtok = split_ws(lines[1]);
  if (qtok.size() != k) throw std::invalid_argument("parse_form: q line has wrong length");
  std::vector<Rational> qd;
  for (const auto& t : qtok) qd.push_back(parse_rat(t));

  std::vector<std::vector<Rational>> bm(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) bm[i][i] = mod1(qd[i]);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (lines.size() <= 2 + i) throw std::invalid_argument("parse_form: missing b line");
    std::vector<std::string> bt = split_ws(lines[2 + i]);
    if (bt.size() != k - 1 - i) throw std::invalid_argument("parse_form: b line has wrong length");
    for (std::size_t j = i + 1; j < k; ++j) bm[i][j] = bm[j][i] = parse_rat(bt[j - i - 1]);
  }
  for (std::size_t extra = 2 + (k > 0 ? k - 1 : 0); extra < lines.size(); ++extra)
    if (!split_ws(lines[extra]).empty()) throw std::invalid_argument("parse_form: trailing data");
  return FiniteQuadraticForm(orders, qd, bm);
}

}  // namespace ellk3
