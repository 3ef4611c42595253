#pragma once

// Explicit even lattices: overlattices from glue, short vectors, root types.

#include "ellk3/ade_types.hpp"
#include "ellk3/exact_linalg.hpp"

#include <vector>

namespace ellk3 {

class GramLattice {
 public:
  GramLattice() = default;
  /// Throws std::invalid_argument unless gram is square and symmetric.
  explicit GramLattice(IntMatrix gram);

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  Integer det() const { return determinant(gram_); }
  bool is_even() const;

 private:
  IntMatrix gram_;
};

struct Overlattice {
  GramLattice lattice;
  /// Rows of basis / denom are the new basis vectors in the old coordinates.
  IntMatrix basis;
  Integer denom;
  long index = 1;
};

/// M = L + span(lifts). Throws std::invalid_argument when a lift is outside the
/// dual lattice or the glue is not totally isotropic.
Overlattice overlattice(const GramLattice& l, const std::vector<RatVector>& lifts);

/// All nonzero v with v^T G v <= norm_bound. With both_signs false only the
/// member of each +-pair whose last nonzero coordinate is positive is kept.
/// Throws std::invalid_argument if G is not positive definite.
std::vector<std::vector<long>> short_vectors(const GramLattice& l, long norm_bound = 2,
                                             bool both_signs = true);

/// ADE-type of the sublattice generated by the norm-2 vectors.
ADEType root_type(const GramLattice& l);

}  // namespace ellk3
