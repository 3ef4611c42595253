#pragma once

// ADE-types: formal sums of Dynkin symbols A_l, D_m, E_n.

#include "ellk3/exact_linalg.hpp"
#include "ellk3/fqf.hpp"

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace ellk3 {

enum class Kind { A = 0, D = 1, E = 2 };

/// A connected Dynkin diagram.
struct Component {
  Kind kind = Kind::A;
  int index = 1;

  int rank() const { return index; }
  int euler() const { return kind == Kind::A ? index + 1 : index + 2; }
  /// Number of roots of the root lattice.
  long root_count() const;
  /// |det| of the Cartan matrix.
  long discriminant() const;
  std::string name() const;

  friend auto operator<=>(const Component&, const Component&) = default;
  friend bool operator==(const Component&, const Component&) = default;
};

/// Throws std::invalid_argument unless the symbol is a valid Dynkin diagram.
Component make_component(Kind k, int index);

class ADEType {
 public:
  ADEType() = default;
  explicit ADEType(std::vector<Component> comps);

  /// Components with multiplicity, sorted descending (E before D before A,
  /// larger index first).
  const std::vector<Component>& components() const { return comps_; }
  bool empty() const { return comps_.empty(); }
  int rank() const;
  int euler() const;
  std::size_t count(const Component& c) const;

  ADEType with(const Component& c) const;
  /// Removes one copy of c (throws if absent).
  ADEType without(const Component& c) const;

  /// Canonical text, e.g. "2E8+A2"; the empty type prints as "0".
  std::string str() const;

  friend bool operator==(const ADEType&, const ADEType&) = default;
  /// Plain lexicographic order on the descending component list.
  friend bool operator<(const ADEType& a, const ADEType& b) { return a.comps_ < b.comps_; }

 private:
  std::vector<Component> comps_;
};

/// Parses "2E8 + A2", "A2+2E8", "a1", "0". Throws std::invalid_argument.
ADEType parse_type(const std::string& text);

/// Reference table order: rank ascending, then the component list descending
/// lexicographically.
bool table_less(const ADEType& a, const ADEType& b);

/// All types with 1 <= rank <= max_rank and euler <= max_euler, in table order.
std::vector<ADEType> enumerate_candidates(int max_rank = 18, int max_euler = 24);

/// Cartan matrix with the vertex labels a_1..a_l, d_1..d_m, e_1..e_n. For D_m,
/// d_1 and d_2 attach to d_3 and d_3..d_m is a chain. For E_n, e_1 attaches to
/// e_4 and e_2..e_n is a chain.
IntMatrix cartan_gram(const Component& c);
/// Block-diagonal over the components in canonical order.
IntMatrix cartan_gram(const ADEType& t);

/// Closed-form discriminant form of one component on its named generators:
/// A_l: a_l*; D_m even: d_1*, d_m*; D_m odd: d_1*; E6: e_6*; E7: e_7*; E8: none.
FiniteQuadraticForm disc_form_closed(const Component& c);
/// Zero-based vertex indices whose dual vectors are the named generators.
std::vector<int> named_generator_vertices(const Component& c);
/// Direct sum of the component forms in canonical component order.
FiniteQuadraticForm disc_form_closed(const ADEType& t);

/// Minimal norm of the coset x + L(c) for x in the discriminant group of c
/// (coordinates on the named generators). Zero coset gives 0.
Rational coset_min_norm(const Component& c, const FqfElement& x);

/// An automorphism of a component discriminant form: y_i = sum_j m[i][j] x_j.
using FormAut = std::vector<std::vector<long>>;

struct ActionSpec {
  /// Components carrying a nontrivial discriminant group, canonical order.
  std::vector<Component> components;
  /// Generator offset of each component inside disc_form_closed(type).
  std::vector<std::size_t> offsets;
  /// Generators of Gamma(tau) for each component.
  std::vector<std::vector<FormAut>> generators;
  /// Maximal runs [first, last) of identical components (permutable blocks).
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
};

std::vector<FormAut> gamma_generators(const Component& c);
/// Every element of Gamma(tau), identity first.
std::vector<FormAut> gamma_elements(const Component& c);
ActionSpec gamma_generators(const ADEType& t);
FqfElement apply_aut(const FormAut& g, const FqfElement& x, const std::vector<long>& orders);

enum class Ruleset { Trivial, Z2, Z3, Z4, Z2Z2 };

/// Accepts "trivial", "1", "2", "3", "4", "22", "2,2". Throws otherwise.
Ruleset parse_ruleset(const std::string& s);

/// Types obtained by deleting one vertex (may include the empty type).
std::set<ADEType> elementary_children(const ADEType& t);
/// Same, excluding instances listed as forbidden for the ruleset.
std::set<ADEType> restricted_children(const ADEType& t, Ruleset rs);
/// Seeds plus all iterated restricted children, without the empty type.
std::set<ADEType> closure(const std::set<ADEType>& seeds, Ruleset rs);

}  // namespace ellk3
