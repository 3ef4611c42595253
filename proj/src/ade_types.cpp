#include "ellk3/ade_types.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <stdexcept>

namespace ellk3 {

namespace {

char kind_letter(Kind k) { return k == Kind::A ? 'A' : (k == Kind::D ? 'D' : 'E'); }

Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

void sort_desc(std::vector<Component>& v) { std::sort(v.begin(), v.end(), std::greater<>()); }

}  // namespace

Component make_component(Kind k, int index) {
  bool ok = false;
  switch (k) {
    case Kind::A: ok = index >= 1; break;
    case Kind::D: ok = index >= 4; break;
    case Kind::E: ok = index >= 6 && index <= 8; break;
  }
  if (!ok)
    throw std::invalid_argument(std::string("invalid Dynkin symbol ") + kind_letter(k) + std::to_string(index));
  return Component{k, index};
}

long Component::root_count() const {
  switch (kind) {
    case Kind::A: return static_cast<long>(index) * (index + 1);
    case Kind::D: return 2L * index * (index - 1);
    case Kind::E: return index == 6 ? 72 : (index == 7 ? 126 : 240);
  }
  return 0;
}

long Component::discriminant() const {
  switch (kind) {
    case Kind::A: return index + 1;
    case Kind::D: return 4;
    case Kind::E: return 9 - index;
  }
  return 1;
}

std::string Component::name() const { return kind_letter(kind) + std::to_string(index); }

ADEType::ADEType(std::vector<Component> comps) : comps_(std::move(comps)) {
  for (const auto& c : comps_) make_component(c.kind, c.index);
  sort_desc(comps_);
}

int ADEType::rank() const {
  int r = 0;
  for (const auto& c : comps_) r += c.rank();
  return r;
}

int ADEType::euler() const {
  int e = 0;
  for (const auto& c : comps_) e += c.euler();
  return e;
}

std::size_t ADEType::count(const Component& c) const {
  return static_cast<std::size_t>(std::count(comps_.begin(), comps_.end(), c));
}

ADEType ADEType::with(const Component& c) const {
  std::vector<Component> v = comps_;
  v.push_back(c);
  return ADEType(std::move(v));
}

ADEType ADEType::without(const Component& c) const {
  std::vector<Component> v = comps_;
  auto it = std::find(v.begin(), v.end(), c);
  if (it == v.end()) throw std::invalid_argument("ADEType::without: component not present");
  v.erase(it);
  return ADEType(std::move(v));
}

std::string ADEType::str() const {
  if (comps_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < comps_.size();) {
    std::size_t j = i;
    while (j < comps_.size() && comps_[j] == comps_[i]) ++j;
    if (!out.empty()) out += '+';
    if (j - i > 1) out += std::to_string(j - i);
    out += comps_[i].name();
    i = j;
  }
  return out;
}

ADEType parse_type(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '{' && ch != '}' && ch != '_') s += ch;
  if (s.empty()) throw std::invalid_argument("empty ADE-type string");
  if (s == "0") return ADEType();
  std::vector<Component> comps;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find('+', pos);
    if (end == std::string::npos) end = s.size();
    std::string tok = s.substr(pos, end - pos);
    if (tok.empty()) throw std::invalid_argument("bad ADE-type string '" + text + "'");
    std::size_t i = 0;
    long mult = 1;
    if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
      mult = 0;
      while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) {
        mult = mult * 10 + (tok[i] - '0');
        if (mult > 1000) throw std::invalid_argument("multiplicity too large in '" + text + "'");
        ++i;
      }
    }
    if (i >= tok.size()) throw std::invalid_argument("missing Dynkin letter in '" + text + "'");
    char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[i])));
    ++i;
    Kind k;
    if (letter == 'A') k = Kind::A;
    else if (letter == 'D') k = Kind::D;
    else if (letter == 'E') k = Kind::E;
    else throw std::invalid_argument("unknown Dynkin letter in '" + text + "'");
    if (i >= tok.size()) throw std::invalid_argument("missing index in '" + text + "'");
    long idx = 0;
    for (; i < tok.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(tok[i])))
        throw std::invalid_argument("bad index in '" + text + "'");
      idx = idx * 10 + (tok[i] - '0');
      if (idx > 1000) throw std::invalid_argument("index too large in '" + text + "'");
    }
    if (mult == 0) throw std::invalid_argument("zero multiplicity in '" + text + "'");
    Component c = make_component(k, static_cast<int>(idx));
    for (long m = 0; m < mult; ++m) comps.push_back(c);
    if (end == s.size()) break;
    pos = end + 1;
  }
  return ADEType(std::move(comps));
}

bool table_less(const ADEType& a, const ADEType& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  return b < a;
}

std::vector<ADEType> enumerate_candidates(int max_rank, int max_euler) {
  std::vector<Component> kinds;
  for (int n = 8; n >= 6; --n) kinds.push_back({Kind::E, n});
  for (int m = max_rank; m >= 4; --m) kinds.push_back({Kind::D, m});
  for (int l = max_rank; l >= 1; --l) kinds.push_back({Kind::A, l});

  std::vector<ADEType> out;
  std::vector<Component> cur;
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t from, int rank, int eul) {
    if (!cur.empty()) out.emplace_back(cur);
    for (std::size_t i = from; i < kinds.size(); ++i) {
      const Component& c = kinds[i];
      if (rank + c.rank() > max_rank || eul + c.euler() > max_euler) continue;
      cur.push_back(c);
      rec(i, rank + c.rank(), eul + c.euler());
      cur.pop_back();
    }
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end(), table_less);
  return out;
}

IntMatrix cartan_gram(const Component& c) {
  const int n = c.index;
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  auto edge = [&](int i, int j) {
    g(i, j) = 1;
    g(j, i) = 1;
  };
  switch (c.kind) {
    case Kind::A:
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
      break;
    case Kind::D:
      edge(0, 2);
      edge(1, 2);
      for (int i = 2; i + 1 < n; ++i) edge(i, i + 1);
      break;
    case Kind::E:
      edge(0, 3);
      for (int i = 1; i + 1 < n; ++i) edge(i, i + 1);
      break;
  }
  return g;
}

IntMatrix cartan_gram(const ADEType& t) {
  const int n = t.rank();
  IntMatrix g(n, n);
  int off = 0;
  for (const auto& c : t.components()) {
    IntMatrix b = cartan_gram(c);
    for (int i = 0; i < c.index; ++i)
      for (int j = 0; j < c.index; ++j) g(off + i, off + j) = b(i, j);
    off += c.index;
  }
  return g;
}

std::vector<int> named_generator_vertices(const Component& c) {
  switch (c.kind) {
    case Kind::A: return {c.index - 1};
    case Kind::D:
      if (c.index % 2 == 0) return {0, c.index - 1};
      return {0};
    case Kind::E:
      if (c.index == 8) return {};
      return {c.index - 1};
  }
  return {};
}

FiniteQuadraticForm disc_form_closed(const Component& c) {
  const int i = c.index;
  switch (c.kind) {
    case Kind::A:
      return FiniteQuadraticForm({i + 1}, {frac(i, i + 1)}, {{frac(i, i + 1)}});
    case Kind::D:
      if (i % 2 == 0)
        return FiniteQuadraticForm({2, 2}, {frac(i, 4), Rational(1)},
                                   {{frac(i, 4), frac(1, 2)}, {frac(1, 2), Rational(0)}});
      return FiniteQuadraticForm({4}, {frac(i, 4)}, {{frac(i, 4)}});
    case Kind::E:
      if (i == 6) return FiniteQuadraticForm({3}, {frac(4, 3)}, {{frac(1, 3)}});
      if (i == 7) return FiniteQuadraticForm({2}, {frac(3, 2)}, {{frac(1, 2)}});
      return FiniteQuadraticForm();
  }
  return FiniteQuadraticForm();
}

FiniteQuadraticForm disc_form_closed(const ADEType& t) {
  FiniteQuadraticForm q;
  for (const auto& c : t.components()) q = direct_sum(q, disc_form_closed(c));
  return q;
}

Rational coset_min_norm(const Component& c, const FqfElement& x) {
  switch (c.kind) {
    case Kind::A: {
      const long n = c.index + 1;
      const long k = ((x.at(0) % n) + n) % n;
      return frac(k * (n - k), n);
    }
    case Kind::D: {
      if (c.index % 2 == 0) {
        const long c1 = ((x.at(0) % 2) + 2) % 2, c2 = ((x.at(1) % 2) + 2) % 2;
        if (c1 == 1) return frac(c.index, 4);
        return c2 == 1 ? Rational(1) : Rational(0);
      }
      const long k = ((x.at(0) % 4) + 4) % 4;
      if (k == 0) return 0;
      return k == 2 ? Rational(1) : frac(c.index, 4);
    }
    case Kind::E:
      if (c.index == 8) return 0;
      if (x.at(0) % (9 - c.index) == 0) return 0;
      return c.index == 6 ? frac(4, 3) : frac(3, 2);
  }
  return 0;
}

std::vector<FormAut> gamma_generators(const Component& c) {
  switch (c.kind) {
    case Kind::A:
      if (c.index == 1) return {};
      return {{{-1}}};
    case Kind::D:
      if (c.index == 4) return {{{0, 1}, {1, 0}}, {{1, 0}, {1, 1}}};
      if (c.index % 2 == 0) return {{{1, 0}, {1, 1}}};
      return {{{-1}}};
    case Kind::E:
      if (c.index == 6) return {{{-1}}};
      return {};
  }
  return {};
}

FqfElement apply_aut(const FormAut& g, const FqfElement& x, const std::vector<long>& orders) {
  FqfElement y(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    long acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += g[i][j] * x[j];
    y[i] = ((acc % orders[i]) + orders[i]) % orders[i];
  }
  return y;
}

std::vector<FormAut> gamma_elements(const Component& c) {
  FiniteQuadraticForm q = disc_form_closed(c);
  const std::size_t k = q.length();
  FormAut id(k, std::vector<long>(k, 0));
  for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
  auto reduce = [&](FormAut m) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m[i][j] = ((m[i][j] % q.order(i)) + q.order(i)) % q.order(i);
    return m;
  };
  std::vector<FormAut> elems{reduce(id)};
  std::vector<FormAut> gens = gamma_generators(c);
  for (std::size_t at = 0; at < elems.size(); ++at)
    for (const auto& g : gens) {
      FormAut prod(k, std::vector<long>(k, 0));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          for (std::size_t t = 0; t < k; ++t) prod[i][j] += g[i][t] * elems[at][t][j];
      prod = reduce(prod);
      if (std::find(elems.begin(), elems.end(), prod) == elems.end()) elems.push_back(prod);
    }
  return elems;
}

ActionSpec gamma_generators(const ADEType& t) {
  ActionSpec spec;
  std::size_t off = 0;
  for (const auto& c : t.components()) {
    if (c.kind == Kind::E && c.index == 8) continue;
    spec.components.push_back(c);
    spec.offsets.push_back(off);
    spec.generators.push_back(gamma_generators(c));
    off += disc_form_closed(c).length();
  }
  for (std::size_t i = 0; i < spec.components.size();) {
    std::size_t j = i;
    while (j < spec.components.size() && spec.components[j] == spec.components[i]) ++j;
    spec.blocks.emplace_back(i, j);
    i = j;
  }
  return spec;
}

Ruleset parse_ruleset(const std::string& s) {
  if (s == "trivial" || s == "1" || s == "[1]") return Ruleset::Trivial;
  if (s == "2" || s == "[2]") return Ruleset::Z2;
  if (s == "3" || s == "[3]") return Ruleset::Z3;
  if (s == "4" || s == "[4]") return Ruleset::Z4;
  if (s == "22" || s == "2,2" || s == "[2,2]") return Ruleset::Z2Z2;
  throw std::invalid_argument("unknown ruleset '" + s + "'");
}

namespace {

enum class Sub { ASplit, DToA, DTo2A1, DToA3, DToD, E };

struct Instance {
  Sub kind;
  int param;  // l' for ASplit, m' for DToD
  std::vector<Component> result;
};

void push_a(std::vector<Component>& v, int l) {
  if (l >= 1) v.push_back({Kind::A, l});
}

std::vector<Instance> instances(const Component& c) {
  std::vector<Instance> out;
  const int n = c.index;
  switch (c.kind) {
    case Kind::A:
      for (int lp = 0; 2 * lp <= n; ++lp) {
        Instance in{Sub::ASplit, lp, {}};
        push_a(in.result, lp);
        push_a(in.result, n - 1 - lp);
        out.push_back(std::move(in));
      }
      break;
    case Kind::D: {
      Instance a{Sub::DToA, 0, {}};
      push_a(a.result, n - 1);
      out.push_back(std::move(a));
      Instance b{Sub::DTo2A1, 0, {{Kind::A, 1}, {Kind::A, 1}}};
      push_a(b.result, n - 3);
      out.push_back(std::move(b));
      Instance d{Sub::DToA3, 0, {{Kind::A, 3}}};
      push_a(d.result, n - 4);
      out.push_back(std::move(d));
      for (int mp = 4; mp <= n - 1; ++mp) {
        Instance e{Sub::DToD, mp, {{Kind::D, mp}}};
        push_a(e.result, n - 1 - mp);
        out.push_back(std::move(e));
      }
      break;
    }
    case Kind::E: {
      auto add = [&](std::vector<Component> r) { out.push_back(Instance{Sub::E, 0, std::move(r)}); };
      std::vector<Component> r;
      push_a(r, n - 1);
      add(r);
      add({{Kind::D, n - 1}});
      r = {{Kind::A, 1}};
      push_a(r, n - 2);
      add(r);
      r = {{Kind::A, 1}, {Kind::A, 2}};
      push_a(r, n - 4);
      add(r);
      r = {{Kind::A, 4}};
      push_a(r, n - 5);
      add(r);
      r = {{Kind::D, 5}};
      push_a(r, n - 6);
      add(r);
      for (int np = 6; np <= n - 1; ++np) {
        r = {{Kind::E, np}};
        push_a(r, n - 1 - np);
        add(r);
      }
      break;
    }
  }
  return out;
}

bool a_rule_mod(int l, int l1, int l2, int m) {
  return l % m == m - 1 && l1 % m != m - 1 && l2 % m != m - 1;
}

bool forbidden(const Component& c, const Instance& in, Ruleset rs) {
  const int n = c.index;
  const ADEType res(in.result);
  switch (rs) {
    case Ruleset::Trivial:
      return false;
    case Ruleset::Z2:
    case Ruleset::Z2Z2:
      if (in.kind == Sub::ASplit) return n % 2 == 1 && in.param % 2 == 0 && 2 * in.param < n;
      if (in.kind == Sub::DToA) return rs == Ruleset::Z2 || n % 2 == 0;
      if (in.kind == Sub::DToA3) return n % 2 == 0;
      if (in.kind == Sub::DToD) return n % 2 == 0 && in.param % 2 == 1 && in.param >= 5;
      if (rs == Ruleset::Z2 && in.kind == Sub::E && n == 7)
        return res == parse_type("A6") || res == parse_type("A4+A2") || res == parse_type("E6");
      return false;
    case Ruleset::Z3:
      if (in.kind == Sub::ASplit) return a_rule_mod(n, in.param, n - 1 - in.param, 3);
      if (in.kind == Sub::E && n == 6) return res == parse_type("A4+A1") || res == parse_type("D5");
      return false;
    case Ruleset::Z4:
      if (in.kind == Sub::ASplit) {
        if (n == 1) return true;
        return a_rule_mod(n, in.param, n - 1 - in.param, 4);
      }
      if (c.kind == Kind::D && n % 2 == 1) {
        if (in.kind == Sub::DToA || in.kind == Sub::DTo2A1) return true;
        if (in.kind == Sub::DToD && in.param == n - 1) return true;
        if (in.kind == Sub::DToD && in.param == n - 3 && n > 6) return true;
      }
      return false;
  }
  return false;
}

std::set<ADEType> children_impl(const ADEType& t, const Ruleset* rs) {
  std::set<ADEType> out;
  const auto& comps = t.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i > 0 && comps[i] == comps[i - 1]) continue;
    ADEType rest = t.without(comps[i]);
    for (const auto& in : instances(comps[i])) {
      if (rs && forbidden(comps[i], in, *rs)) continue;
      ADEType child = rest;
      for (const auto& r : in.result) child = child.with(r);
      out.insert(child);
    }
  }
  return out;
}

}  // namespace

std::set<ADEType> elementary_children(const ADEType& t) { return children_impl(t, nullptr); }

std::set<ADEType> restricted_children(const ADEType& t, Ruleset rs) { return children_impl(t, &rs); }

std::set<ADEType> closure(const std::set<ADEType>& seeds, Ruleset rs) {
  std::set<ADEType> seen;
  std::deque<ADEType> queue;
  for (const auto& s : seeds)
    if (!s.empty() && seen.insert(s).second) queue.push_back(s);
  while (!queue.empty()) {
    ADEType t = queue.front();
    queue.pop_front();
    for (const auto& c : restricted_children(t, rs))
      if (!c.empty() && seen.insert(c).second) queue.push_back(c);
  }
  return seen;
}

}  // namespace ellk3
