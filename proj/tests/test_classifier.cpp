#include "ellk3/classifier.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace ellk3;

namespace {

bool is_zero(const FqfElement& x) {
  return std::all_of(x.begin(), x.end(), [](long c) { return c == 0; });
}

std::vector<GroupType> groups(std::initializer_list<GroupType> g) { return g; }

}  // namespace

TEST(GroupText, RoundTrip) {
  for (const GroupType& g : {GroupType{}, GroupType{2}, GroupType{4, 2}, GroupType{6, 2}, GroupType{3, 3}})
    EXPECT_EQ(parse_group(group_str(g)), g);
  EXPECT_EQ(group_str({}), "[1]");
  EXPECT_EQ(group_str({4, 2}), "[4,2]");
  EXPECT_EQ(parse_group(" [ 4, 2 ] "), (GroupType{4, 2}));
  for (const char* bad : {"", "2", "[0]", "[2,4]", "[a]", "[1,2]", "[2,]"})
    EXPECT_THROW(parse_group(bad), std::invalid_argument) << bad;
}

TEST(GroupText, CellOrder) {
  std::vector<GroupType> v = {{}, {2}, {3}, {6}, {2, 2}, {4}};
  std::sort(v.begin(), v.end(), group_cell_less);
  EXPECT_EQ(v, groups({{6}, {4}, {2, 2}, {3}, {2}, {}}));
}

TEST(OrbitReps, Examples) {
  EXPECT_EQ(orbit_reps_isotropic(parse_type("A1")), std::vector<FqfElement>{FqfElement{0}});
  auto four = orbit_reps_isotropic(parse_type("4A1"));
  ASSERT_EQ(four.size(), 2u);
  EXPECT_TRUE(is_zero(four[0]));
  EXPECT_EQ(four[1], FqfElement(4, 1));
  auto eight = orbit_reps_isotropic(parse_type("8A1"));
  ASSERT_EQ(eight.size(), 3u);
  std::vector<long> weights;
  for (const auto& x : eight) weights.push_back(std::accumulate(x.begin(), x.end(), 0L));
  std::sort(weights.begin(), weights.end());
  EXPECT_EQ(weights, (std::vector<long>{0, 4, 8}));
}

TEST(GlueCandidates, Examples) {
  auto a1 = glue_candidates(parse_type("A1"));
  ASSERT_EQ(a1.size(), 1u);
  EXPECT_TRUE(is_zero(a1[0].v) && is_zero(a1[0].w));

  auto e8 = glue_candidates(parse_type("2E8+A2"));
  ASSERT_EQ(e8.size(), 1u);
  EXPECT_TRUE(is_zero(e8[0].v) && is_zero(e8[0].w));

  const ADEType t = parse_type("3A6");
  TypeContext ctx(t);
  bool zero_pair = false, order7 = false;
  for (const auto& p : glue_candidates(t)) {
    EXPECT_EQ(eval_q(ctx.form(), p.v), 0);
    EXPECT_EQ(eval_q(ctx.form(), p.w), 0);
    EXPECT_EQ(eval_b(ctx.form(), p.v, p.w), 0);
    if (is_zero(p.v) && is_zero(p.w)) zero_pair = true;
    const auto h = ctx.span({ctx.index(p.v), ctx.index(p.w)});
    if (h.size() == 7) {
      order7 = true;
      for (long c : ctx.element(h[1])) EXPECT_NE(c, 0);  // diagonal-type glue
    }
  }
  EXPECT_TRUE(zero_pair);
  EXPECT_TRUE(order7);
}

TEST(GlueCandidates, NoLiteralDuplicates) {
  for (const char* name : {"8A1", "4A3+4A1", "2A5+2A2+2A1", "2D4+2A1", "6A3"}) {
    const ADEType t = parse_type(name);
    TypeContext ctx(t);
    std::set<std::vector<std::size_t>> seen;
    for (const auto& p : glue_candidates(t))
      ASSERT_TRUE(seen.insert(ctx.span({ctx.index(p.v), ctx.index(p.w)})).second) << name;
  }
}

TEST(CheckPair, Examples) {
  const ADEType a6 = parse_type("3A6");
  TypeContext ctx(a6);
  std::optional<ClassEntry> seven;
  for (const auto& p : glue_candidates(a6))
    if (auto e = check_pair(a6, p); e && !e->group.empty()) seven = e;
  ASSERT_TRUE(seven.has_value());
  EXPECT_EQ(seven->group, GroupType{7});

  const GluePair four{FqfElement(4, 1), FqfElement(4, 0)};
  EXPECT_FALSE(check_pair(parse_type("4A1"), four).has_value());
  EXPECT_FALSE(check_pair(parse_type("4A1"), four, CheckOptions{false}).has_value());

  const GluePair eight{FqfElement(8, 1), FqfElement(8, 0)};
  auto e = check_pair(parse_type("8A1"), eight);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->group, GroupType{2});
  EXPECT_EQ(check_pair(parse_type("8A1"), eight, CheckOptions{false})->group, GroupType{2});
}

TEST(CheckPair, RejectsNonIsotropicGlue) {
  EXPECT_THROW(check_pair(parse_type("2A1"), GluePair{{1, 0}, {0, 0}}), std::invalid_argument);
}

TEST(ClassifyType, Examples) {
  EXPECT_EQ(classify_type(parse_type("A1")), groups({{}}));
  EXPECT_EQ(classify_type(parse_type("3A6")), groups({{7}}));
  EXPECT_EQ(classify_type(parse_type("11A1")), groups({{2}}));
  EXPECT_EQ(classify_type(parse_type("8A1")), groups({{2}, {}}));
  EXPECT_EQ(classify_type(parse_type("2A5+2A2+2A1")), groups({{6}, {3}, {2}, {}}));
  EXPECT_EQ(classify_type(parse_type("4A3+4A1")), groups({{4, 2}, {2, 2}}));
  EXPECT_EQ(classify_type(parse_type("6A3")), groups({{4, 4}}));
  EXPECT_EQ(classify_type(parse_type("2A7+A3+A1")), groups({{8}}));
  EXPECT_EQ(classify_type(parse_type("3A5+3A1")), groups({{6, 2}}));
  EXPECT_EQ(classify_type(parse_type("8A2")), groups({{3, 3}}));
}

TEST(ClassifyType, EulerOverflowTypesAreEmpty) {
  for (const char* name : {"13A1", "E8+10A1", "7A2+4A1", "6A2+6A1", "E7+11A1"})
    EXPECT_TRUE(classify_type(parse_type(name)).empty()) << name;
}

TEST(ClassifyType, BruteForceAgreesOnSamples) {
  for (const char* name : {"A1", "8A1", "4A1", "2A3", "4A3", "3A2+2A1", "2D4+2A1", "D6+4A1", "A7+A1", "10A1"}) {
    const ADEType t = parse_type(name);
    EXPECT_EQ(classify_type_bruteforce(t), classify_type(t)) << name;
    EXPECT_EQ(classify_type_bruteforce(t, CheckOptions{false}), classify_type(t)) << name;
  }
}

TEST(CheckSubgroup, LengthThreeNeverPasses) {
  std::mt19937 rng(5);
  for (const char* name : {"12A1", "8A1+D4", "4A3+4A1", "2D4+4A1", "E7+8A1", "9A2"}) {
    const ADEType t = parse_type(name);
    TypeContext ctx(t, 1u << 17);
    std::vector<std::size_t> iso;
    for (std::size_t i = 1; i < ctx.order(); ++i)
      if (ctx.isotropic(i)) iso.push_back(i);
    if (iso.size() < 3) continue;
    std::uniform_int_distribution<std::size_t> pick(0, iso.size() - 1);
    int tried = 0;
    for (int attempt = 0; attempt < 20000 && tried < 40; ++attempt) {
      std::vector<FqfElement> gens = {ctx.element(iso[pick(rng)]), ctx.element(iso[pick(rng)]),
                                      ctx.element(iso[pick(rng)])};
      if (!is_totally_isotropic(ctx.form(), gens)) continue;
      if (invariant_factors(ctx.form(), gens).size() < 3) continue;
      ++tried;
      ASSERT_FALSE(check_subgroup(ctx, gens).has_value()) << name;
      ASSERT_FALSE(check_subgroup(ctx, gens, CheckOptions{false}).has_value()) << name;
    }
    EXPECT_GT(tried, 0) << name;
  }
}

TEST(CheckSubgroup, GammaInvariance) {
  std::mt19937 rng(13);
  for (const char* name : {"8A1", "4A3+4A1", "2A5+2A2+2A1", "2D4+2A1+A3", "D6+D4+4A1", "3A6", "E6+A5+2A2+A1"}) {
    const ADEType t = parse_type(name);
    TypeContext ctx(t);
    const auto& spec = ctx.action();
    for (const auto& p : glue_candidates(t)) {
      auto base = check_pair(t, p);
      if (!base) continue;
      for (int rep = 0; rep < 4; ++rep) {
        std::vector<std::size_t> aut(spec.components.size()), perm(spec.components.size());
        for (std::size_t c = 0; c < spec.components.size(); ++c)
          aut[c] = std::uniform_int_distribution<std::size_t>(0, gamma_elements(spec.components[c]).size() - 1)(rng);
        std::iota(perm.begin(), perm.end(), 0);
        for (const auto& [a, b] : spec.blocks)
          std::shuffle(perm.begin() + static_cast<std::ptrdiff_t>(a), perm.begin() + static_cast<std::ptrdiff_t>(b), rng);
        const FqfElement gv = ctx.element(ctx.act(ctx.index(p.v), aut, perm));
        const FqfElement gw = ctx.element(ctx.act(ctx.index(p.w), aut, perm));
        auto moved = check_subgroup(ctx, {gv, gw});
        ASSERT_TRUE(moved.has_value()) << name;
        ASSERT_EQ(*moved, base->group) << name;
      }
    }
  }
}

TEST(TypeContext, CanonicalIsOrbitInvariant) {
  std::mt19937 rng(17);
  for (const char* name : {"4A3+4A1", "2D4+2A1", "3A4+2A2", "D8+D6+2A1"}) {
    TypeContext ctx(parse_type(name));
    const auto& spec = ctx.action();
    for (std::size_t i = 0; i < ctx.order(); ++i) {
      std::vector<std::size_t> aut(spec.components.size()), perm(spec.components.size());
      for (std::size_t c = 0; c < spec.components.size(); ++c)
        aut[c] = std::uniform_int_distribution<std::size_t>(0, gamma_elements(spec.components[c]).size() - 1)(rng);
      std::iota(perm.begin(), perm.end(), 0);
      for (const auto& [a, b] : spec.blocks)
        std::shuffle(perm.begin() + static_cast<std::ptrdiff_t>(a), perm.begin() + static_cast<std::ptrdiff_t>(b), rng);
      const std::size_t j = ctx.act(i, aut, perm);
      ASSERT_EQ(ctx.canonical(i), ctx.canonical(j)) << name;
      ASSERT_EQ(ctx.isotropic(i), ctx.isotropic(j));
      ASSERT_EQ(ctx.coset_min_norm(i), ctx.coset_min_norm(j));
    }
  }
}

TEST(TypeContext, RejectsLargeGroups) { EXPECT_THROW(TypeContext(parse_type("18A1"), 6561), std::length_error); }

TEST(ClassEntry, SortOrder) {
  std::vector<ClassEntry> v = {{parse_type("2A1"), {}}, {parse_type("A2"), {}}, {parse_type("A1"), {}},
                               {parse_type("8A1"), {2}}, {parse_type("8A1"), {}}};
  std::sort(v.begin(), v.end(), entry_less);
  EXPECT_EQ(v[0].type.str(), "A1");
  EXPECT_EQ(v[1].type.str(), "A2");
  EXPECT_EQ(v[2].type.str(), "2A1");
  EXPECT_TRUE(v[3].group.empty());
  EXPECT_EQ(v[4].group, GroupType{2});
}

TEST(ClassifyTypes, JobsDoNotChangeOutput) {
  auto types = enumerate_candidates(12, 24);
  EXPECT_EQ(classify_types(types, 1), classify_types(types, 3));
}
