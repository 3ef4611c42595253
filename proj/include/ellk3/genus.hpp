#pragma once

// Existence of an even Z-lattice with prescribed signature and discriminant form.

#include "ellk3/fqf.hpp"

namespace ellk3 {

/// True iff an even lattice of signature (r, s) with discriminant form
/// isomorphic to q exists. Throws std::invalid_argument when r + s == 0.
bool exists_even_lattice(long r, long s, const FiniteQuadraticForm& q);

}  // namespace ellk3
