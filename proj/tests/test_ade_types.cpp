#include "ellk3/ade_types.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace ellk3;

namespace {

std::vector<Component> all_components(int max_rank) {
  std::vector<Component> out;
  for (int l = 1; l <= max_rank; ++l) out.push_back({Kind::A, l});
  for (int m = 4; m <= max_rank; ++m) out.push_back({Kind::D, m});
  for (int n = 6; n <= 8 && n <= max_rank; ++n) out.push_back({Kind::E, n});
  return out;
}

std::set<ADEType> types(std::initializer_list<const char*> names) {
  std::set<ADEType> s;
  for (const char* n : names) s.insert(parse_type(n));
  return s;
}

// Lifts of the named generators of disc_form_closed(c) in root coordinates.
std::vector<RatVector> named_lifts(const Component& c) {
  RatMatrix inv = inverse(cartan_gram(c));
  std::vector<RatVector> out;
  for (int v : named_generator_vertices(c)) out.push_back(inv.col(static_cast<std::size_t>(v)));
  return out;
}

RatVector combine(const std::vector<RatVector>& lifts, const FqfElement& x, std::size_t n) {
  RatVector v(n);
  for (std::size_t g = 0; g < lifts.size(); ++g)
    for (std::size_t j = 0; j < n; ++j) v[j] += x[g] * lifts[g][j];
  return v;
}

}  // namespace

TEST(ADEType, RankAndEuler) {
  EXPECT_EQ(parse_type("2E8+A2").rank(), 18);
  EXPECT_EQ(parse_type("2E8+A2").euler(), 23);
  EXPECT_EQ(parse_type("12A1").rank(), 12);
  EXPECT_EQ(parse_type("12A1").euler(), 24);
  EXPECT_EQ(ADEType().rank(), 0);
  EXPECT_EQ(ADEType().euler(), 0);
}

TEST(ADEType, ParseAndPrint) {
  EXPECT_EQ(parse_type("A2 + 2E8").str(), "2E8+A2");
  EXPECT_EQ(parse_type("a1+A1").str(), "2A1");
  EXPECT_EQ(parse_type("D4+E6+A1+D5").str(), "E6+D5+D4+A1");
  EXPECT_EQ(parse_type("0").str(), "0");
  EXPECT_TRUE(parse_type("0").empty());
  for (const char* bad : {"", "D3", "E9", "E5", "A0", "X2", "2", "A1++A2", "A", "-A1", "3 A"})
    EXPECT_THROW(parse_type(bad), std::invalid_argument) << bad;
}

TEST(ADEType, RoundTripOnAllCandidates) {
  for (const auto& t : enumerate_candidates()) ASSERT_EQ(parse_type(t.str()), t);
}

TEST(Enumerate, SmallSlices) {
  auto r1 = enumerate_candidates(1, 24);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_EQ(r1[0].str(), "A1");
  auto r2 = enumerate_candidates(2, 24);
  ASSERT_EQ(r2.size(), 3u);
  EXPECT_EQ(r2[1].str(), "A2");
  EXPECT_EQ(r2[2].str(), "2A1");
  EXPECT_TRUE(enumerate_candidates(18, 0).empty());
}

TEST(Enumerate, CountsPerRank) {
  const std::vector<long> expected = {1, 2, 3, 6, 9, 16, 24, 39, 57, 88, 128, 193, 274, 393, 531, 688, 773, 712};
  auto all = enumerate_candidates();
  EXPECT_EQ(all.size(), 3937u);
  std::vector<long> per(18, 0);
  for (const auto& t : all) ++per[static_cast<std::size_t>(t.rank() - 1)];
  EXPECT_EQ(per, expected);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end(), table_less));
  EXPECT_EQ(enumerate_candidates(18, 36).size(), 5366u);
}

TEST(CartanGram, Examples) {
  EXPECT_EQ(cartan_gram(Component{Kind::A, 2}), (IntMatrix{{2, 1}, {1, 2}}));
  IntMatrix d4 = cartan_gram(Component{Kind::D, 4});
  // d_3 (vertex 2) is adjacent to every other vertex, no other edges.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const long want = i == j ? 2 : ((i == 2 || j == 2) ? 1 : 0);
      EXPECT_EQ(d4(i, j), want);
    }
  for (int l = 1; l <= 18; ++l) EXPECT_EQ(determinant(cartan_gram(Component{Kind::A, l})), l + 1);
  for (const auto& c : all_components(18)) EXPECT_EQ(determinant(cartan_gram(c)), c.discriminant());
}

TEST(DiscFormClosed, Examples) {
  EXPECT_TRUE(disc_form_closed(Component{Kind::E, 8}).is_trivial());
  auto d5 = disc_form_closed(Component{Kind::D, 5});
  EXPECT_EQ(d5.orders(), std::vector<long>{4});
  EXPECT_EQ(d5.q(0), Rational(5, 4));
  auto a1 = disc_form_closed(Component{Kind::A, 1});
  EXPECT_EQ(a1.orders(), std::vector<long>{2});
  EXPECT_EQ(a1.q(0), Rational(1, 2));
  auto d6 = disc_form_closed(Component{Kind::D, 6});
  EXPECT_EQ(d6.q(0), Rational(3, 2));
  EXPECT_EQ(d6.q(1), Rational(1));
  EXPECT_EQ(d6.b(0, 1), Rational(1, 2));
  EXPECT_EQ(disc_form_closed(Component{Kind::E, 6}).q(0), Rational(4, 3));
  EXPECT_EQ(disc_form_closed(Component{Kind::E, 7}).q(0), Rational(3, 2));
}

TEST(DiscFormClosed, MatchesLatticeElementWise) {
  for (const auto& c : all_components(18)) {
    const auto q = disc_form_closed(c);
    const IntMatrix g = cartan_gram(c);
    const auto lifts = named_lifts(c);
    const std::size_t n = g.rows();
    ASSERT_EQ(Integer(static_cast<unsigned long>(q.group_order())), determinant(g)) << c.name();
    ASSERT_EQ(discriminant_form(g).form.group_order(), q.group_order());
    for (std::size_t i = 0; i < q.group_order(); ++i) {
      const FqfElement x = q.element_at(i);
      const RatVector v = combine(lifts, x, n);
      // Injective: only 0 lifts into L itself.
      bool integral = true;
      for (const auto& cv : v) integral = integral && cv.get_den() == 1;
      ASSERT_EQ(integral, i == 0) << c.name();
      ASSERT_EQ(eval_q(q, x), mod2(bilinear(g, v, v))) << c.name();
      for (std::size_t j = 0; j < q.group_order(); ++j) {
        const FqfElement y = q.element_at(j);
        ASSERT_EQ(eval_b(q, x, y), mod1(bilinear(g, v, combine(lifts, y, n)))) << c.name();
      }
    }
  }
}

TEST(CosetMinNorm, MatchesBoxSearch) {
  for (const auto& c : all_components(7)) {
    const auto q = disc_form_closed(c);
    const IntMatrix g = cartan_gram(c);
    const auto lifts = named_lifts(c);
    const std::size_t n = g.rows();
    for (std::size_t i = 0; i < q.group_order(); ++i) {
      const FqfElement x = q.element_at(i);
      RatVector base = combine(lifts, x, n);
      for (auto& cv : base) {
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), cv.get_num_mpz_t(), cv.get_den_mpz_t());
        cv -= f;
      }
      Rational best = -1;
      std::vector<long> shift(n, -2);
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == n) {
          RatVector v = base;
          bool zero = true;
          for (std::size_t j = 0; j < n; ++j) {
            v[j] += shift[j];
            zero = zero && v[j] == 0;
          }
          if (zero) return;
          Rational nv = bilinear(g, v, v);
          if (best < 0 || nv < best) best = nv;
          return;
        }
        for (long s = -2; s <= 2; ++s) {
          shift[k] = s;
          rec(k + 1);
        }
      };
      rec(0);
      if (i == 0) EXPECT_EQ(coset_min_norm(c, x), 0);
      else EXPECT_EQ(coset_min_norm(c, x), best) << c.name() << " element " << i;
    }
  }
}

TEST(GammaGenerators, Examples) {
  EXPECT_TRUE(gamma_generators(Component{Kind::A, 1}).empty());
  EXPECT_TRUE(gamma_generators(Component{Kind::E, 7}).empty());
  auto a3 = gamma_generators(Component{Kind::A, 3});
  ASSERT_EQ(a3.size(), 1u);
  EXPECT_EQ(apply_aut(a3[0], {1}, {4}), FqfElement{3});
  auto d4 = gamma_generators(Component{Kind::D, 4});
  EXPECT_EQ(d4.size(), 2u);
  auto el = gamma_elements(Component{Kind::D, 4});
  EXPECT_EQ(el.size(), 6u);
  std::set<std::vector<FqfElement>> images;
  for (const auto& g : el)
    images.insert({apply_aut(g, {1, 0}, {2, 2}), apply_aut(g, {0, 1}, {2, 2}), apply_aut(g, {1, 1}, {2, 2})});
  EXPECT_EQ(images.size(), 6u);  // the full S3 on the three nonzero elements
  EXPECT_EQ(gamma_elements(Component{Kind::D, 6}).size(), 2u);
}

TEST(GammaGenerators, PreserveFormOnEveryCandidate) {
  for (const auto& t : enumerate_candidates()) {
    const auto spec = gamma_generators(t);
    ASSERT_EQ(spec.components.size(), spec.offsets.size());
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
      const auto q = disc_form_closed(spec.components[c]);
      for (const auto& g : spec.generators[c])
        for (std::size_t i = 0; i < q.group_order(); ++i) {
          const auto x = q.element_at(i);
          const auto gx = apply_aut(g, x, q.orders());
          ASSERT_EQ(eval_q(q, gx), eval_q(q, x)) << t.str();
          for (std::size_t j = 0; j < q.group_order(); ++j) {
            const auto y = q.element_at(j);
            ASSERT_EQ(eval_b(q, gx, apply_aut(g, y, q.orders())), eval_b(q, x, y)) << t.str();
          }
        }
    }
    for (const auto& [a, b] : spec.blocks)
      for (std::size_t k = a; k < b; ++k) ASSERT_EQ(spec.components[k], spec.components[a]);
  }
}

TEST(Children, Examples) {
  EXPECT_EQ(elementary_children(parse_type("A1")), std::set<ADEType>{ADEType()});
  EXPECT_EQ(elementary_children(parse_type("E8")),
            types({"E7", "A7", "D7", "A6+A1", "A4+A2+A1", "A4+A3", "D5+A2", "E6+A1"}));
  EXPECT_EQ(elementary_children(parse_type("D4")), types({"A3", "3A1"}));
  EXPECT_EQ(elementary_children(parse_type("A2")), types({"A1"}));
}

TEST(Children, RankDropsByOne) {
  for (const auto& t : enumerate_candidates())
    for (const auto& c : elementary_children(t)) ASSERT_EQ(c.rank(), t.rank() - 1) << t.str() << " -> " << c.str();
}

TEST(Children, ForbiddenSubstitutions) {
  // [2]: E7 -> A6, A4+A2, E6 are forbidden.
  auto e7 = restricted_children(parse_type("E7"), Ruleset::Z2);
  EXPECT_FALSE(e7.count(parse_type("A6")));
  EXPECT_FALSE(e7.count(parse_type("E6")));
  EXPECT_TRUE(e7.count(parse_type("D6")));
  // [3]: E6 -> A4+A1, D5 are forbidden.
  auto e6 = restricted_children(parse_type("E6"), Ruleset::Z3);
  EXPECT_FALSE(e6.count(parse_type("D5")));
  EXPECT_FALSE(e6.count(parse_type("A4+A1")));
  EXPECT_TRUE(e6.count(parse_type("A5")));
  // [4]: A1 -> 0 is forbidden.
  EXPECT_TRUE(restricted_children(parse_type("A1"), Ruleset::Z4).empty());
  // The trivial ruleset forbids nothing.
  for (const auto& t : enumerate_candidates(8, 24))
    ASSERT_EQ(restricted_children(t, Ruleset::Trivial), elementary_children(t));
  for (const auto& t : enumerate_candidates(8, 24))
    for (Ruleset rs : {Ruleset::Z2, Ruleset::Z3, Ruleset::Z4, Ruleset::Z2Z2})
      for (const auto& c : restricted_children(t, rs)) ASSERT_TRUE(elementary_children(t).count(c));
}

TEST(Closure, Examples) {
  EXPECT_EQ(closure(types({"A1"}), Ruleset::Trivial), types({"A1"}));
  EXPECT_EQ(closure(types({"A2"}), Ruleset::Trivial), types({"A2", "A1"}));
  EXPECT_EQ(closure(types({"D4"}), Ruleset::Trivial), types({"D4", "A3", "3A1", "A2", "2A1", "A1"}));
}

TEST(Ruleset, Parse) {
  EXPECT_EQ(parse_ruleset("trivial"), Ruleset::Trivial);
  EXPECT_EQ(parse_ruleset("2"), Ruleset::Z2);
  EXPECT_EQ(parse_ruleset("3"), Ruleset::Z3);
  EXPECT_EQ(parse_ruleset("4"), Ruleset::Z4);
  EXPECT_EQ(parse_ruleset("22"), Ruleset::Z2Z2);
  EXPECT_EQ(parse_ruleset("2,2"), Ruleset::Z2Z2);
  EXPECT_THROW(parse_ruleset("5"), std::invalid_argument);
}
