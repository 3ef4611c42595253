#pragma once

// p-adic invariants: p-excess, reduced discriminant, and the sets of
// [excess, reddisc] pairs realizable by even Z_p-lattices with a given
// discriminant form.

#include "ellk3/exact_linalg.hpp"
#include "ellk3/fqf.hpp"

#include <iosfwd>
#include <set>
#include <vector>

namespace ellk3 {

struct LocalInvariant {
  int excess = 0;  // residue mod 8 in [0, 8)
  SquareClass reddisc;

  LocalInvariant() = default;
  LocalInvariant(int e, SquareClass u);

  friend auto operator<=>(const LocalInvariant&, const LocalInvariant&) = default;
  friend bool operator==(const LocalInvariant&, const LocalInvariant&) = default;
};

using LocalInvariantSet = std::set<LocalInvariant>;

std::ostream& operator<<(std::ostream& os, const LocalInvariant& x);
std::ostream& operator<<(std::ostream& os, const LocalInvariantSet& s);

/// One summand of a Jordan decomposition: p^nu (a), or (p = 2 only) 2^nu U / 2^nu V.
struct JordanBlock {
  enum class Kind { Unit, U, V };
  int nu = 0;
  Kind kind = Kind::Unit;
  Integer a = 1;  // only for Kind::Unit

  static JordanBlock unit(int nu, const Integer& a) { return {nu, Kind::Unit, a}; }
  static JordanBlock hyperbolic(int nu) { return {nu, Kind::U, 1}; }
  static JordanBlock v_block(int nu) { return {nu, Kind::V, 1}; }
  int rank() const { return kind == Kind::Unit ? 1 : 2; }
};

int p_excess(const std::vector<JordanBlock>& blocks, long p);
SquareClass reddisc(const std::vector<JordanBlock>& blocks, long p);

/// {[s + s', u u']} over all pairs. Throws on a prime mismatch.
LocalInvariantSet star(const LocalInvariantSet& a, const LocalInvariantSet& b);

/// The set for a unimodular even lattice of rank k. Throws for k < 0.
LocalInvariantSet unimodular_set(long p, long k);

/// Rank-one cyclic form, or (p = 2) the rank-two block with odd off-diagonal.
/// Throws std::invalid_argument for any other shape.
LocalInvariantSet rank_le2_set(long p, const FiniteQuadraticForm& q);

/// All [excess, reddisc] of even Z_p-lattices of rank n whose discriminant form
/// is q_p (a form on a p-group). Empty when n is below the length of q_p.
LocalInvariantSet local_invariant_set(long p, long n, const FiniteQuadraticForm& q_p);

}  // namespace ellk3
