#include "ellk3/fqf.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

using namespace ellk3;

namespace {

FiniteQuadraticForm cyclic(long d, Rational q) {
  q.canonicalize();
  return FiniteQuadraticForm({d}, {q}, {{mod1(q)}});
}

FiniteQuadraticForm power(const FiniteQuadraticForm& q, int k) {
  FiniteQuadraticForm out;
  for (int i = 0; i < k; ++i) out = direct_sum(out, q);
  return out;
}

std::map<Rational, long> q_histogram(const FiniteQuadraticForm& q) {
  std::map<Rational, long> h;
  for (std::size_t i = 0; i < q.group_order(); ++i) ++h[eval_q(q, q.element_at(i))];
  return h;
}

std::map<Rational, long> b_histogram(const FiniteQuadraticForm& q) {
  std::map<Rational, long> h;
  for (std::size_t i = 0; i < q.group_order(); ++i)
    for (std::size_t j = 0; j < q.group_order(); ++j) ++h[eval_b(q, q.element_at(i), q.element_at(j))];
  return h;
}

std::map<long, long> order_histogram(const FiniteQuadraticForm& q) {
  std::map<long, long> h;
  for (std::size_t i = 0; i < q.group_order(); ++i) ++h[q.element_order(q.element_at(i))];
  return h;
}

const FiniteQuadraticForm kA1 = cyclic(2, Rational(1, 2));
const FiniteQuadraticForm kA2 = cyclic(3, Rational(2, 3));
const FiniteQuadraticForm kA5 = cyclic(6, Rational(5, 6));

}  // namespace

TEST(FiniteQuadraticForm, RejectsInconsistentData) {
  // q(1) = 1/2 requires b(1,1) = 1/2.
  EXPECT_THROW(FiniteQuadraticForm({2}, {Rational(1, 2)}, {{Rational(0)}}), std::invalid_argument);
  // 3 * (1/2) is not an integer.
  EXPECT_THROW(FiniteQuadraticForm({3}, {Rational(1, 2)}, {{Rational(1, 2)}}), std::invalid_argument);
  // Asymmetric b.
  EXPECT_THROW(FiniteQuadraticForm({2, 2}, {Rational(1), Rational(1)}, {{Rational(0), Rational(1, 2)}, {Rational(0), Rational(0)}}),
               std::invalid_argument);
}

TEST(DiscriminantForm, A1) {
  auto d = discriminant_form(IntMatrix{{2}});
  EXPECT_EQ(d.form.orders(), std::vector<long>{2});
  EXPECT_EQ(d.form.q(0), Rational(1, 2));
}

TEST(DiscriminantForm, HyperbolicPlaneIsTrivial) {
  auto d = discriminant_form(IntMatrix{{0, 1}, {1, 0}});
  EXPECT_TRUE(d.form.is_trivial());
  EXPECT_EQ(d.form.length(), 0u);
}

TEST(DiscriminantForm, A2) {
  auto d = discriminant_form(IntMatrix{{2, 1}, {1, 2}});
  EXPECT_EQ(d.form.orders(), std::vector<long>{3});
  EXPECT_EQ(d.form.q(0), Rational(2, 3));
}

TEST(DiscriminantForm, RejectsBadGram) {
  EXPECT_THROW(discriminant_form(IntMatrix{{1}}), std::invalid_argument);
  EXPECT_THROW(discriminant_form(IntMatrix{{2, 2}, {2, 2}}), std::invalid_argument);
  EXPECT_THROW(discriminant_form(IntMatrix{{2, 1}, {0, 2}}), std::invalid_argument);
}

TEST(DiscriminantForm, OrderIsDeterminantAndLiftsAreExact) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix g = oracle::random_even_lattice(rng, 1 + trial % 4);
    auto d = discriminant_form(g);
    ASSERT_EQ(Integer(static_cast<unsigned long>(d.form.group_order())), abs(determinant(g)));
    for (std::size_t i = 0; i < d.form.group_order() && i < 200; ++i) {
      FqfElement x = d.form.element_at(i);
      RatVector v = d.lift(x);
      ASSERT_EQ(eval_q(d.form, x), mod2(bilinear(g, v, v)));
      FqfElement y = d.form.element_at((i * 7 + 3) % d.form.group_order());
      ASSERT_EQ(eval_b(d.form, x, y), mod1(bilinear(g, v, d.lift(y))));
    }
  }
}

TEST(DiscriminantForm, DirectSumOfLattices) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix a = oracle::random_even_lattice(rng, 1 + trial % 2, 4);
    IntMatrix b = oracle::random_even_lattice(rng, 1 + trial % 3, 4);
    auto whole = discriminant_form(oracle::block_sum(a, b)).form;
    auto parts = direct_sum(discriminant_form(a).form, discriminant_form(b).form);
    if (whole.group_order() > 96) continue;
    ASSERT_EQ(whole.group_order(), parts.group_order());
    ASSERT_EQ(q_histogram(whole), q_histogram(parts));
    ASSERT_EQ(order_histogram(whole), order_histogram(parts));
    ASSERT_EQ(b_histogram(whole), b_histogram(parts));
  }
}

TEST(DirectSum, WithTrivialIsIdentity) { EXPECT_EQ(direct_sum(kA2, FiniteQuadraticForm()), kA2); }

TEST(DirectSum, TwoA1) {
  auto q = direct_sum(kA1, kA1);
  EXPECT_EQ(q.orders(), (std::vector<long>{2, 2}));
  EXPECT_EQ(q.q(0), Rational(1, 2));
  EXPECT_EQ(q.q(1), Rational(1, 2));
  EXPECT_EQ(q.b(0, 1), 0);
}

TEST(DirectSum, A2PlusA1NormalizesToCyclicSix) {
  auto q = normalize(direct_sum(kA2, kA1));
  EXPECT_EQ(q.orders(), std::vector<long>{6});
  EXPECT_EQ(q_histogram(q), q_histogram(direct_sum(kA2, kA1)));
}

TEST(PPart, A5) {
  auto two = p_part(kA5, 2);
  EXPECT_EQ(two.orders(), std::vector<long>{2});
  EXPECT_EQ(two.q(0), Rational(3, 2));
  auto three = p_part(kA5, 3);
  EXPECT_EQ(three.orders(), std::vector<long>{3});
  EXPECT_EQ(three.q(0), Rational(4, 3));
  EXPECT_TRUE(p_part(kA1, 3).is_trivial());
}

TEST(PPart, ReassemblyKeepsStatistics) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 80; ++trial) {
    auto q = discriminant_form(oracle::random_even_lattice(rng, 1 + trial % 3, 5)).form;
    if (q.group_order() > 200) continue;
    FiniteQuadraticForm sum;
    for (long p : prime_divisors(Integer(static_cast<unsigned long>(q.group_order())))) sum = direct_sum(sum, p_part(q, p));
    ASSERT_EQ(sum.group_order(), q.group_order());
    ASSERT_EQ(q_histogram(sum), q_histogram(q));
    ASSERT_EQ(order_histogram(sum), order_histogram(q));
    if (q.group_order() <= 64) ASSERT_EQ(b_histogram(sum), b_histogram(q));
  }
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval_q(kA1, {0}), 0);
  EXPECT_EQ(eval_q(direct_sum(kA1, kA1), {1, 1}), 1);
  // b(x,x) = q(x) mod 1, so 2/3 for the dual generator of A2.
  EXPECT_EQ(eval_b(kA2, {1}, {1}), Rational(2, 3));
}

TEST(Eval, PolarizationIdentity) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    auto q = discriminant_form(oracle::random_even_lattice(rng, 1 + trial % 4, 5)).form;
    if (q.group_order() > 512) continue;
    const std::size_t n = q.group_order();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto x = q.element_at(i), y = q.element_at(j);
        ASSERT_EQ(mod2(eval_q(q, q.add(x, y)) - eval_q(q, x) - eval_q(q, y)), mod2(2 * eval_b(q, x, y)));
      }
  }
}

TEST(Isotropic, Examples) {
  EXPECT_EQ(isotropic_elements(kA1), std::vector<FqfElement>{FqfElement{0}});
  EXPECT_EQ(isotropic_elements(FiniteQuadraticForm()).size(), 1u);
  auto four = power(kA1, 4);
  auto iso = isotropic_elements(four);
  ASSERT_EQ(iso.size(), 2u);
  for (const auto& x : iso) {
    long w = 0;
    for (long c : x) w += c;
    EXPECT_TRUE(w == 0 || w == 4);
  }
}

TEST(Subquotient, TrivialSubgroup) {
  EXPECT_EQ(orthogonal_complement(kA5, {}).size(), 6u);
  auto sq = subquotient(kA5, {});
  EXPECT_EQ(q_histogram(sq), q_histogram(kA5));
}

TEST(Subquotient, EightA1) {
  auto q = power(kA1, 8);
  FqfElement ones(8, 1);
  EXPECT_EQ(orthogonal_complement(q, {ones}).size(), 128u);
  EXPECT_EQ(subquotient(q, {ones}).group_order(), 64u);
}

TEST(Subquotient, FourA1MatchesD4) {
  auto q = power(kA1, 4);
  auto sq = subquotient(q, {FqfElement(4, 1)});
  EXPECT_EQ(sq.group_order(), 4u);
  // D4: (Z/2)^2 with every nonzero element of q = 1.
  auto d4 = discriminant_form(IntMatrix{{2, 0, 1, 0}, {0, 2, 1, 0}, {1, 1, 2, 1}, {0, 0, 1, 2}}).form;
  EXPECT_EQ(q_histogram(sq), q_histogram(d4));
  EXPECT_EQ(b_histogram(sq), b_histogram(d4));
}

TEST(Subquotient, RejectsNonIsotropic) { EXPECT_THROW(subquotient(kA1, {{1}}), std::invalid_argument); }

TEST(Subquotient, OrderFormulaOnRandomIsotropicSubgroups) {
  auto q = direct_sum(power(kA1, 4), power(cyclic(4, Rational(1, 4)), 2));
  auto iso = isotropic_elements(q);
  for (const auto& v : iso)
    for (const auto& w : iso) {
      if (eval_b(q, v, w) != 0) continue;
      auto h = subgroup_indices(q, {v, w});
      auto perp = orthogonal_complement(q, {v, w});
      ASSERT_EQ(perp.size() * h.size(), q.group_order());
      for (std::size_t idx : h) ASSERT_EQ(eval_q(q, q.element_at(idx)), 0);
      auto sq = subquotient(q, {v, w});
      ASSERT_EQ(sq.group_order() * h.size() * h.size(), q.group_order());
    }
}

TEST(ReducedGenerators, Examples) {
  auto q42 = direct_sum(cyclic(2, Rational(1, 2)), cyclic(4, Rational(1, 4)));
  EXPECT_EQ(reduced_generators(q42).orders(), (std::vector<long>{4, 2}));
  EXPECT_EQ(reduced_generators(power(kA1, 3)).orders(), (std::vector<long>{2, 2, 2}));
  EXPECT_EQ(reduced_generators(cyclic(9, Rational(8, 9))).orders(), std::vector<long>{9});
  EXPECT_THROW(reduced_generators(kA5), std::invalid_argument);
}

TEST(InvariantFactors, LargestFirst) {
  auto q = direct_sum(cyclic(4, Rational(1, 4)), kA1);
  EXPECT_EQ(invariant_factors(q, {{1, 0}, {0, 1}}), (std::vector<long>{4, 2}));
  EXPECT_EQ(invariant_factors(q, {{2, 1}}), std::vector<long>{2});
  EXPECT_TRUE(invariant_factors(q, {{0, 0}}).empty());
}

TEST(TextFormat, RoundTrip) {
  for (const auto& q : {kA1, kA5, direct_sum(kA2, power(kA1, 2)), FiniteQuadraticForm(),
                        discriminant_form(IntMatrix{{2, 0, 1, 0}, {0, 2, 1, 0}, {1, 1, 2, 1}, {0, 0, 1, 2}}).form}) {
    const std::string text = format_form(q);
    EXPECT_EQ(parse_form(text), q) << text;
    EXPECT_EQ(format_form(parse_form(text)), text);
  }
}

TEST(TextFormat, Malformed) {
  EXPECT_THROW(parse_form(""), std::invalid_argument);
  EXPECT_THROW(parse_form("2\n"), std::invalid_argument);
  EXPECT_THROW(parse_form("2\nabc\n"), std::invalid_argument);
  EXPECT_THROW(parse_form("2\n1/2 1/2\n"), std::invalid_argument);
  EXPECT_THROW(parse_form("2\n1/3\n"), std::invalid_argument);
}
