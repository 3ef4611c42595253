#pragma once

// Classification of (ADE-type, torsion group) pairs: glue enumeration up to
// Gamma(Sigma), genus existence of the orthogonal complement, root stability.

#include "ellk3/ade_types.hpp"
#include "ellk3/fqf.hpp"
#include "ellk3/lattice_ops.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ellk3 {

/// Invariant factors, largest first; empty = trivial group.
using GroupType = std::vector<long>;

/// "[1]", "[2]", "[4,2]".
std::string group_str(const GroupType& g);
/// Inverse of group_str. Throws std::invalid_argument.
GroupType parse_group(const std::string& s);
long group_order(const GroupType& g);
/// Cell order: larger group first, then larger factors first.
bool group_cell_less(const GroupType& a, const GroupType& b);

struct ClassEntry {
  ADEType type;
  GroupType group;

  friend bool operator==(const ClassEntry&, const ClassEntry&) = default;
};

/// (rank, table type order, group order, invariant factors).
bool entry_less(const ClassEntry& a, const ClassEntry& b);

struct GluePair {
  FqfElement v;
  FqfElement w;
};

/// Everything the classifier needs about one type, built once.
class TypeContext {
 public:
  /// Throws std::length_error when |D| exceeds max_order.
  explicit TypeContext(const ADEType& t, std::uint64_t max_order = 1u << 17);

  const ADEType& type() const { return type_; }
  const FiniteQuadraticForm& form() const { return form_; }
  const ActionSpec& action() const { return action_; }
  const GramLattice& lattice() const { return lattice_; }
  std::size_t order() const { return order_; }

  FqfElement element(std::size_t idx) const;
  std::size_t index(const FqfElement& x) const { return form_.index_of(x); }
  bool isotropic(std::size_t idx) const { return qnum_[idx] == 0; }
  long element_order(std::size_t idx) const { return elem_order_[idx]; }

  /// Lift of x into the dual of L(Sigma), in Cartan coordinates.
  RatVector lift(const FqfElement& x) const;
  /// Minimal norm of the coset x + L(Sigma).
  Rational coset_min_norm(std::size_t idx) const;

  /// Gamma(Sigma)-canonical form of x.
  std::size_t canonical(std::size_t idx) const;
  /// Canonical form of w under the stabilizer subgroup of a canonical v.
  std::size_t canonical_under_stabilizer(std::size_t v, std::size_t w) const;
  /// Image of x under a random element of Gamma(Sigma), for invariance tests.
  std::size_t act(std::size_t idx, const std::vector<std::size_t>& component_aut,
                  const std::vector<std::size_t>& permutation) const;

  /// Sorted element indices of the subgroup generated by gens.
  std::vector<std::size_t> span(const std::vector<std::size_t>& gens) const;
  /// Invariant factors of the subgroup with these elements (largest first).
  GroupType invariant_factors_of(const std::vector<std::size_t>& elements,
                                 const std::vector<std::size_t>& gens) const;
  /// True iff some nonzero element has coset minimal norm 2.
  bool adds_roots(const std::vector<std::size_t>& elements) const;

 private:
  ADEType type_;
  ActionSpec action_;
  FiniteQuadraticForm form_;
  GramLattice lattice_;
  std::vector<RatVector> gen_lifts_;
  std::size_t order_ = 1;
  std::vector<std::size_t> comp_stride_, comp_size_;
  std::vector<std::vector<FqfElement>> comp_elems_;
  std::vector<std::vector<std::size_t>> orbit_min_;
  // stab_min_[c][v_local * size + w_local]
  std::vector<std::vector<std::size_t>> stab_min_;
  std::vector<std::vector<std::vector<std::size_t>>> comp_aut_table_;
  std::vector<std::vector<Rational>> comp_min_norm_;
  std::vector<long> qnum_;
  std::vector<long> elem_order_;
};

/// Canonical isotropic representatives of the Gamma(Sigma)-orbits (0 first).
std::vector<FqfElement> orbit_reps_isotropic(const ADEType& t);
/// Covering family of totally isotropic subgroups of length <= 2.
std::vector<GluePair> glue_candidates(const ADEType& t);

struct CheckOptions {
  /// Reject glue that adds roots before running the genus test.
  bool root_prefilter = true;
};

/// Step-3 verdict for the subgroup generated by gens (any number of them).
std::optional<GroupType> check_subgroup(const TypeContext& ctx, const std::vector<FqfElement>& gens,
                                        const CheckOptions& opt = {});
std::optional<ClassEntry> check_pair(const ADEType& t, const GluePair& pair,
                                     const CheckOptions& opt = {});

/// All realizable groups for t, sorted by group_cell_less.
std::vector<GroupType> classify_type(const ADEType& t);
/// Same result computed from every totally isotropic subgroup of length <= 2
/// with no orbit reduction (oracle).
std::vector<GroupType> classify_type_bruteforce(const ADEType& t, const CheckOptions& opt = {});

/// Entries over all candidate types, sorted by entry_less. jobs = 0 means
/// hardware concurrency.
std::vector<ClassEntry> classify_all(int max_rank = 18, int max_euler = 24, unsigned jobs = 1);
/// Same over an explicit type list; output order follows entry_less.
std::vector<ClassEntry> classify_types(const std::vector<ADEType>& types, unsigned jobs = 1);

}  // namespace ellk3
