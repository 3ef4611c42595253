#include "ellk3/lattice_ops.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ellk3 {

GramLattice::GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_symmetric()) throw std::invalid_argument("GramLattice: Gram matrix must be symmetric");
}

bool GramLattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (gram_(i, i) % 2 != 0) return false;
  return true;
}

Overlattice overlattice(const GramLattice& l, const std::vector<RatVector>& lifts) {
  const std::size_t n = l.rank();
  const IntMatrix& g = l.gram();
  for (const auto& x : lifts) {
    if (x.size() != n) throw std::invalid_argument("overlattice: lift has wrong length");
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += g(i, j) * x[j];
      if (s.get_den() != 1) throw std::invalid_argument("overlattice: lift is not in the dual lattice");
    }
  }
  for (std::size_t a = 0; a < lifts.size(); ++a) {
    Rational qa = bilinear(g, lifts[a], lifts[a]);
    if (qa.get_den() != 1 || qa.get_num() % 2 != 0)
      throw std::invalid_argument("overlattice: glue is not isotropic");
    for (std::size_t b = a + 1; b < lifts.size(); ++b)
      if (bilinear(g, lifts[a], lifts[b]).get_den() != 1)
        throw std::invalid_argument("overlattice: glue is not totally isotropic");
  }

  Integer den = 1;
  for (const auto& x : lifts)
    for (const auto& c : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());

  IntMatrix rows(n + lifts.size(), n);
  for (std::size_t i = 0; i < n; ++i) rows(i, i) = den;
  for (std::size_t a = 0; a < lifts.size(); ++a)
    for (std::size_t j = 0; j < n; ++j) rows(n + a, j) = Integer(lifts[a][j] * den);
  IntMatrix h = hermite_normal_form(rows);
  if (h.rows() != n) throw std::logic_error("overlattice: basis has wrong rank");

  IntMatrix gm = h * g * h.transpose();
  Integer den2 = den * den;
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (gm(i, j) % den2 != 0) throw std::logic_error("overlattice: Gram matrix not integral");
      out(i, j) = gm(i, j) / den2;
    }
  Overlattice ov{GramLattice(out), h, den, 1};
  if (!ov.lattice.is_even()) throw std::logic_error("overlattice: result is not even");

  Integer vol = 1;
  for (std::size_t i = 0; i < n; ++i) vol *= den;
  Integer dh = abs(determinant(h));
  if (vol % dh != 0) throw std::logic_error("overlattice: non-integral index");
  Integer idx = vol / dh;
  if (!idx.fits_slong_p()) throw std::overflow_error("overlattice: index too large");
  ov.index = idx.get_si();
  return ov;
}

namespace {

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Q(x) = sum_i w_i (sum_j m_ij x_j)^2 / (e * delta^2) with m_ii = delta, m_ij = 0 for j < i.
struct ScaledCholesky {
  std::size_t n = 0;
  Integer delta;
  Integer e;
  std::vector<Integer> w;
  std::vector<std::vector<Integer>> m;
};

ScaledCholesky scaled_cholesky(const IntMatrix& g) {
  const std::size_t n = g.rows();
  std::vector<Rational> d(n);
  std::vector<std::vector<Rational>> u(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    Rational di = g(i, i);
    for (std::size_t k = 0; k < i; ++k) di -= d[k] * u[k][i] * u[k][i];
    if (di <= 0) throw std::invalid_argument("short_vectors: Gram matrix is not positive definite");
    d[i] = di;
    u[i][i] = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational s = g(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= d[k] * u[k][i] * u[k][j];
      u[i][j] = s / di;
    }
  }
  ScaledCholesky c;
  c.n = n;
  c.delta = 1;
  c.e = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_lcm(c.e.get_mpz_t(), c.e.get_mpz_t(), d[i].get_den_mpz_t());
    for (std::size_t j = i; j < n; ++j)
      mpz_lcm(c.delta.get_mpz_t(), c.delta.get_mpz_t(), u[i][j].get_den_mpz_t());
  }
  c.w.resize(n);
  c.m.assign(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    c.w[i] = Integer(d[i] * c.e);
    for (std::size_t j = i; j < n; ++j) c.m[i][j] = Integer(u[i][j] * c.delta);
  }
  return c;
}

}  // namespace

std::vector<std::vector<long>> short_vectors(const GramLattice& l, long norm_bound, bool both_signs) {
  const std::size_t n = l.rank();
  std::vector<std::vector<long>> out;
  if (n == 0 || norm_bound <= 0) {
    if (n > 0) scaled_cholesky(l.gram());
    return out;
  }
  ScaledCholesky c = scaled_cholesky(l.gram());
  const Integer budget = Integer(norm_bound) * c.e * c.delta * c.delta;

  std::vector<long> x(n, 0);
  std::vector<Integer> rem(n + 1);
  rem[n] = budget;
  Integer ci, s, t, lo, hi, val;
  std::function<void(std::size_t)> rec = [&](std::size_t level) {
    const std::size_t i = level - 1;
    Integer cc = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[j] != 0) cc += c.m[i][j] * x[j];
    Integer quot = floor_div(rem[level], c.w[i]);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), quot.get_mpz_t());
    Integer xlo = ceil_div(Integer(-root - cc), c.delta);
    Integer xhi = floor_div(Integer(root - cc), c.delta);
    for (Integer xi = xlo; xi <= xhi; ++xi) {
      Integer y = c.delta * xi + cc;
      Integer r = rem[level] - c.w[i] * y * y;
      if (r < 0) continue;
      x[i] = xi.get_si();
      rem[i] = r;
      if (i == 0) {
        bool nonzero = false;
        for (long v : x) nonzero = nonzero || v != 0;
        if (nonzero) out.push_back(x);
      } else {
        rec(i);
      }
    }
    x[i] = 0;
  };
  rec(n);

  // Exact verification of every candidate.
  const IntMatrix& g = l.gram();
  std::vector<std::vector<long>> kept;
  for (auto& v : out) {
    Integer nv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      Integer row = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (v[j] != 0) row += g(i, j) * v[j];
      nv += row * v[i];
    }
    if (nv > norm_bound || nv <= 0) throw std::logic_error("short_vectors: enumeration bound violated");
    if (!both_signs) {
      std::size_t last = n;
      while (last-- > 0 && v[last] == 0) {}
      if (v[last] < 0) continue;
    }
    kept.push_back(std::move(v));
  }
  return kept;
}

ADEType root_type(const GramLattice& l) {
  if (!l.is_even()) throw std::invalid_argument("root_type: lattice is not even");
  const std::size_t n = l.rank();
  std::vector<std::vector<long>> roots;
  for (auto& v : short_vectors(l, 2, true)) roots.push_back(std::move(v));

  std::vector<std::vector<long>> g(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = l.gram()(i, j).get_si();

  // G * r for every root, then pairings by dot products.
  std::vector<std::vector<long>> gr(roots.size(), std::vector<long>(n, 0));
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t i = 0; i < n; ++i) {
      long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += g[i][j] * roots[a][j];
      gr[a][i] = s;
    }

  std::vector<std::size_t> parent(roots.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t b = a + 1; b < roots.size(); ++b) {
      long s = 0;
      for (std::size_t i = 0; i < n; ++i) s += gr[a][i] * roots[b][i];
      if (s != 0) parent[find(a)] = find(b);
    }

  std::map<std::size_t, std::vector<std::size_t>> comps;
  for (std::size_t a = 0; a < roots.size(); ++a) comps[find(a)].push_back(a);

  std::vector<Component> out;
  for (const auto& [rep, members] : comps) {
    IntMatrix m(members.size(), n);
    for (std::size_t r = 0; r < members.size(); ++r)
      for (std::size_t j = 0; j < n; ++j) m(r, j) = roots[members[r]][j];
    const long rk = static_cast<long>(rank(m));
    const long cnt = static_cast<long>(members.size());
    if (cnt == rk * (rk + 1)) out.push_back({Kind::A, static_cast<int>(rk)});
    else if (rk >= 4 && cnt == 2 * rk * (rk - 1)) out.push_back({Kind::D, static_cast<int>(rk)});
    else if (rk == 6 && cnt == 72) out.push_back({Kind::E, 6});
    else if (rk == 7 && cnt == 126) out.push_back({Kind::E, 7});
    else if (rk == 8 && cnt == 240) out.push_back({Kind::E, 8});
    else throw std::logic_error("root_type: unrecognized root system component");
  }
  return ADEType(std::move(out));
}

}  // namespace ellk3
