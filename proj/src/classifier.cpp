#include "ellk3/classifier.hpp"

#include "ellk3/genus.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ellk3 {

std::string group_str(const GroupType& g) {
  if (g.empty()) return "[1]";
  std::string s = "[";
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s + "]";
}

GroupType parse_group(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  if (s.size() < 3 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("bad group '" + text + "'");
  GroupType g;
  if (s[s.size() - 2] == ',') throw std::invalid_argument("bad group '" + text + "'");
  std::stringstream in(s.substr(1, s.size() - 2));
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad group '" + text + "'");
    }
    if (pos != tok.size() || v < 1) throw std::invalid_argument("bad group '" + text + "'");
    g.push_back(v);
  }
  if (g == GroupType{1}) return {};
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 1) throw std::invalid_argument("bad group '" + text + "'");
    if (i > 0 && g[i - 1] % g[i] != 0) throw std::invalid_argument("bad group '" + text + "'");
  }
  return g;
}

long group_order(const GroupType& g) {
  long n = 1;
  for (long d : g) n *= d;
  return n;
}

bool group_cell_less(const GroupType& a, const GroupType& b) {
  if (group_order(a) != group_order(b)) return group_order(a) > group_order(b);
  return a > b;
}

bool entry_less(const ClassEntry& a, const ClassEntry& b) {
  if (!(a.type == b.type)) return table_less(a.type, b.type);
  if (group_order(a.group) != group_order(b.group)) return group_order(a.group) < group_order(b.group);
  return a.group < b.group;
}

TypeContext::TypeContext(const ADEType& t, std::uint64_t max_order)
    : type_(t), action_(gamma_generators(t)), form_(disc_form_closed(t)), lattice_(cartan_gram(t)) {
  if (form_.group_order() > max_order) throw std::length_error("TypeContext: discriminant group too large");
  order_ = static_cast<std::size_t>(form_.group_order());

  // Lifts of the named generators: dual vectors of the named vertices.
  const std::size_t n = static_cast<std::size_t>(t.rank());
  std::size_t off = 0;
  for (const auto& c : t.components()) {
    std::vector<int> verts = named_generator_vertices(c);
    if (!verts.empty()) {
      RatMatrix inv = inverse(cartan_gram(c));
      for (int vtx : verts) {
        RatVector x(n);
        for (int j = 0; j < c.index; ++j) x[off + static_cast<std::size_t>(j)] = inv(static_cast<std::size_t>(j), static_cast<std::size_t>(vtx));
        gen_lifts_.push_back(std::move(x));
      }
    }
    off += static_cast<std::size_t>(c.index);
  }

  std::size_t stride = 1;
  const std::size_t nc = action_.components.size();
  comp_stride_.resize(nc);
  comp_size_.resize(nc);
  comp_elems_.resize(nc);
  orbit_min_.resize(nc);
  stab_min_.resize(nc);
  comp_aut_table_.resize(nc);
  comp_min_norm_.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    const Component& comp = action_.components[c];
    FiniteQuadraticForm local = disc_form_closed(comp);
    const std::size_t size = static_cast<std::size_t>(local.group_order());
    comp_stride_[c] = stride;
    comp_size_[c] = size;
    stride *= size;
    for (std::size_t i = 0; i < size; ++i) {
      comp_elems_[c].push_back(local.element_at(i));
      comp_min_norm_[c].push_back(ellk3::coset_min_norm(comp, comp_elems_[c].back()));
    }
    for (const auto& g : gamma_elements(comp)) {
      std::vector<std::size_t> img(size);
      for (std::size_t i = 0; i < size; ++i)
        img[i] = local.index_of(apply_aut(g, comp_elems_[c][i], local.orders()));
      comp_aut_table_[c].push_back(std::move(img));
    }
    orbit_min_[c].resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      std::size_t m = i;
      for (const auto& img : comp_aut_table_[c]) m = std::min(m, img[i]);
      orbit_min_[c][i] = m;
    }
    stab_min_[c].resize(size * size);
    for (std::size_t v = 0; v < size; ++v)
      for (std::size_t w = 0; w < size; ++w) {
        std::size_t m = w;
        for (const auto& img : comp_aut_table_[c])
          if (img[v] == v) m = std::min(m, img[w]);
        stab_min_[c][v * size + w] = m;
      }
  }
  if (stride != order_) throw std::logic_error("TypeContext: component sizes disagree with the form");

  qnum_.resize(order_);
  elem_order_.resize(order_);
  for (std::size_t i = 0; i < order_; ++i) {
    FqfElement x = form_.element_at(i);
    qnum_[i] = form_.q_numerator(x);
    elem_order_[i] = form_.element_order(x);
  }
}

FqfElement TypeContext::element(std::size_t idx) const { return form_.element_at(idx); }

RatVector TypeContext::lift(const FqfElement& x) const {
  RatVector v(static_cast<std::size_t>(type_.rank()));
  for (std::size_t g = 0; g < gen_lifts_.size(); ++g) {
    if (x[g] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (gen_lifts_[g][j] != 0) v[j] += x[g] * gen_lifts_[g][j];
  }
  return v;
}

Rational TypeContext::coset_min_norm(std::size_t idx) const {
  Rational s = 0;
  for (std::size_t c = 0; c < comp_size_.size(); ++c)
    s += comp_min_norm_[c][(idx / comp_stride_[c]) % comp_size_[c]];
  return s;
}

std::size_t TypeContext::canonical(std::size_t idx) const {
  const std::size_t nc = comp_size_.size();
  std::vector<std::size_t> loc(nc);
  for (std::size_t c = 0; c < nc; ++c) loc[c] = orbit_min_[c][(idx / comp_stride_[c]) % comp_size_[c]];
  for (const auto& [a, b] : action_.blocks)
    std::sort(loc.begin() + static_cast<std::ptrdiff_t>(a), loc.begin() + static_cast<std::ptrdiff_t>(b));
  std::size_t out = 0;
  for (std::size_t c = 0; c < nc; ++c) out += loc[c] * comp_stride_[c];
  return out;
}

std::size_t TypeContext::canonical_under_stabilizer(std::size_t v, std::size_t w) const {
  const std::size_t nc = comp_size_.size();
  std::vector<std::size_t> vl(nc), m(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    vl[c] = (v / comp_stride_[c]) % comp_size_[c];
    const std::size_t wl = (w / comp_stride_[c]) % comp_size_[c];
    m[c] = stab_min_[c][vl[c] * comp_size_[c] + wl];
  }
  for (const auto& [a, b] : action_.blocks) {
    std::size_t i = a;
    while (i < b) {
      std::size_t j = i;
      while (j < b && vl[j] == vl[i]) ++j;
      std::sort(m.begin() + static_cast<std::ptrdiff_t>(i), m.begin() + static_cast<std::ptrdiff_t>(j));
      i = j;
    }
  }
  std::size_t out = 0;
  for (std::size_t c = 0; c < nc; ++c) out += m[c] * comp_stride_[c];
  return out;
}

std::size_t TypeContext::act(std::size_t idx, const std::vector<std::size_t>& component_aut,
                             const std::vector<std::size_t>& permutation) const {
  const std::size_t nc = comp_size_.size();
  std::vector<std::size_t> loc(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    const std::size_t l = (idx / comp_stride_[c]) % comp_size_[c];
    loc[permutation[c]] = comp_aut_table_[c][component_aut[c]][l];
  }
  std::size_t out = 0;
  for (std::size_t c = 0; c < nc; ++c) out += loc[c] * comp_stride_[c];
  return out;
}

std::vector<std::size_t> TypeContext::span(const std::vector<std::size_t>& gens) const {
  std::vector<std::size_t> elems{0};
  std::vector<FqfElement> cache{form_.zero()};
  std::map<std::size_t, bool> seen{{0, true}};
  for (std::size_t g : gens) {
    if (seen.count(g)) continue;
    const FqfElement ge = element(g);
    const std::size_t base = cache.size();
    FqfElement step = ge;
    while (!seen.count(form_.index_of(step))) {
      for (std::size_t t = 0; t < base; ++t) {
        FqfElement e = form_.add(cache[t], step);
        const std::size_t ei = form_.index_of(e);
        seen.emplace(ei, true);
        elems.push_back(ei);
        cache.push_back(std::move(e));
      }
      step = form_.add(step, ge);
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

GroupType TypeContext::invariant_factors_of(const std::vector<std::size_t>& elements,
                                            const std::vector<std::size_t>& gens) const {
  if (gens.size() <= 2) {
    const long n = static_cast<long>(elements.size());
    long e = 1;
    for (std::size_t i : elements) e = std::max(e, elem_order_[i]);
    GroupType g;
    if (e > 1) g.push_back(e);
    if (n / e > 1) g.push_back(n / e);
    return g;
  }
  std::vector<FqfElement> ge;
  for (std::size_t i : gens) ge.push_back(element(i));
  return invariant_factors(form_, ge);
}

bool TypeContext::adds_roots(const std::vector<std::size_t>& elements) const {
  for (std::size_t i : elements)
    if (i != 0 && coset_min_norm(i) == 2) return true;
  return false;
}

namespace {

// Sorted element sets of candidate subgroups, grouped by isomorphism type.
struct Candidate {
  std::vector<std::size_t> gens;
  std::vector<std::size_t> elements;
};

bool orthogonal(const FiniteQuadraticForm& q, const FqfElement& a, const FqfElement& b) {
  return q.b_numerator(a, b) == 0;
}

std::optional<GroupType> check_indices(const TypeContext& ctx, const Candidate& cand,
                                       const CheckOptions& opt) {
  const bool prefilter_rejects = ctx.adds_roots(cand.elements);
  if (opt.root_prefilter && prefilter_rejects) return std::nullopt;

  std::vector<FqfElement> gens;
  for (std::size_t g : cand.gens) gens.push_back(ctx.element(g));
  const int rank = ctx.type().rank();
  if (rank > 18) return std::nullopt;
  FiniteQuadraticForm sq = subquotient(ctx.form(), gens);
  if (!exists_even_lattice(2, 18 - rank, sq)) return std::nullopt;

  std::vector<RatVector> lifts;
  for (const auto& g : gens)
    if (std::any_of(g.begin(), g.end(), [](long c) { return c != 0; })) lifts.push_back(ctx.lift(g));
  Overlattice m = overlattice(ctx.lattice(), lifts);
  if (m.index != static_cast<long>(cand.elements.size()))
    throw std::logic_error("check: overlattice index differs from the glue order");
  const bool same_roots = root_type(m.lattice) == ctx.type();
  if (same_roots == prefilter_rejects)
    throw std::logic_error("check: root prefilter disagrees with the root type for " + ctx.type().str());
  if (!same_roots) return std::nullopt;
  return ctx.invariant_factors_of(cand.elements, cand.gens);
}

// Run the checks group type by group type, stopping at the first success.
std::vector<GroupType> decide(const TypeContext& ctx, const std::map<GroupType, std::vector<Candidate>>& by_group,
                              const CheckOptions& opt) {
  std::vector<GroupType> out;
  for (const auto& [g, cands] : by_group)
    for (const auto& c : cands)
      if (check_indices(ctx, c, opt)) {
        out.push_back(g);
        break;
      }
  std::sort(out.begin(), out.end(), group_cell_less);
  return out;
}

std::map<GroupType, std::vector<Candidate>> reduced_candidates(const TypeContext& ctx) {
  const std::size_t n = ctx.order();
  const FiniteQuadraticForm& q = ctx.form();
  std::vector<std::size_t> iso;
  for (std::size_t i = 0; i < n; ++i)
    if (ctx.isotropic(i)) iso.push_back(i);

  std::map<GroupType, std::vector<Candidate>> out;
  std::set<std::vector<std::size_t>> seen;
  std::vector<FqfElement> iso_elems;
  for (std::size_t i : iso) iso_elems.push_back(ctx.element(i));
  for (std::size_t a = 0; a < iso.size(); ++a) {
    const std::size_t v = iso[a];
    if (ctx.canonical(v) != v) continue;
    for (std::size_t b = 0; b < iso.size(); ++b) {
      const std::size_t w = iso[b];
      if (!orthogonal(q, iso_elems[a], iso_elems[b])) continue;
      if (ctx.canonical_under_stabilizer(v, w) != w) continue;
      std::vector<std::size_t> gens{v, w};
      std::vector<std::size_t> elems = ctx.span(gens);
      if (!seen.insert(elems).second) continue;
      GroupType g = ctx.invariant_factors_of(elems, gens);
      out[g].push_back(Candidate{std::move(gens), std::move(elems)});
    }
  }
  return out;
}

}  // namespace

std::vector<FqfElement> orbit_reps_isotropic(const ADEType& t) {
  TypeContext ctx(t);
  std::vector<FqfElement> out;
  for (std::size_t i = 0; i < ctx.order(); ++i)
    if (ctx.isotropic(i) && ctx.canonical(i) == i) out.push_back(ctx.element(i));
  return out;
}

std::vector<GluePair> glue_candidates(const ADEType& t) {
  TypeContext ctx(t);
  std::vector<GluePair> out;
  for (const auto& [g, cands] : reduced_candidates(ctx))
    for (const auto& c : cands) out.push_back(GluePair{ctx.element(c.gens[0]), ctx.element(c.gens[1])});
  return out;
}

std::optional<GroupType> check_subgroup(const TypeContext& ctx, const std::vector<FqfElement>& gens,
                                        const CheckOptions& opt) {
  if (!is_totally_isotropic(ctx.form(), gens))
    throw std::invalid_argument("check_subgroup: glue is not totally isotropic");
  Candidate c;
  for (const auto& g : gens) c.gens.push_back(ctx.index(ctx.form().reduce(g)));
  c.elements = ctx.span(c.gens);
  return check_indices(ctx, c, opt);
}

std::optional<ClassEntry> check_pair(const ADEType& t, const GluePair& pair, const CheckOptions& opt) {
  TypeContext ctx(t);
  auto g = check_subgroup(ctx, {pair.v, pair.w}, opt);
  if (!g) return std::nullopt;
  return ClassEntry{t, *g};
}

std::vector<GroupType> classify_type(const ADEType& t) {
  TypeContext ctx(t);
  return decide(ctx, reduced_candidates(ctx), CheckOptions{});
}

std::vector<GroupType> classify_type_bruteforce(const ADEType& t, const CheckOptions& opt) {
  TypeContext ctx(t);
  const FiniteQuadraticForm& q = ctx.form();
  std::vector<std::size_t> iso;
  for (std::size_t i = 0; i < ctx.order(); ++i)
    if (ctx.isotropic(i)) iso.push_back(i);
  std::vector<FqfElement> iso_elems;
  for (std::size_t i : iso) iso_elems.push_back(ctx.element(i));

  std::map<GroupType, std::vector<Candidate>> by_group;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t a = 0; a < iso.size(); ++a)
    for (std::size_t b = a; b < iso.size(); ++b) {
      if (!orthogonal(q, iso_elems[a], iso_elems[b])) continue;
      std::vector<std::size_t> gens{iso[a], iso[b]};
      std::vector<std::size_t> elems = ctx.span(gens);
      if (!seen.insert(elems).second) continue;
      GroupType g = ctx.invariant_factors_of(elems, gens);
      by_group[g].push_back(Candidate{std::move(gens), std::move(elems)});
    }
  return decide(ctx, by_group, opt);
}

std::vector<ClassEntry> classify_types(const std::vector<ADEType>& types, unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::vector<GroupType>> results(types.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= types.size() || failed.load()) return;
      try {
        results[i] = classify_type(types[i]);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ClassEntry> out;
  for (std::size_t i = 0; i < types.size(); ++i)
    for (const auto& g : results[i]) out.push_back(ClassEntry{types[i], g});
  std::sort(out.begin(), out.end(), entry_less);
  return out;
}

std::vector<ClassEntry> classify_all(int max_rank, int max_euler, unsigned jobs) {
  auto types = enumerate_candidates(max_rank, max_euler);
  if (max_euler <= 24)
    for (const auto& t : types) {
      std::uint64_t d = 1;
      for (const auto& c : t.components()) d *= static_cast<std::uint64_t>(c.discriminant());
      if (d > 6561) throw std::logic_error("classify_all: |D| exceeds 3^8 for " + t.str());
    }
  return classify_types(types, jobs);
}

}  // namespace ellk3
