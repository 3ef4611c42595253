#pragma once

// Finite quadratic forms (discriminant forms of even lattices).
//
// Values live in Q/2Z (q) and Q/Z (b). Internally every value is an integer
// numerator over one common denominator, so evaluation is exact and cheap.

#include "ellk3/exact_linalg.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ellk3 {

/// Coefficients with respect to the generators, reduced mod the orders.
using FqfElement = std::vector<long>;

/// Reduce into [0, 2).
Rational mod2(const Rational& x);
/// Reduce into [0, 1).
Rational mod1(const Rational& x);

class FiniteQuadraticForm {
 public:
  /// The form on the trivial group.
  FiniteQuadraticForm() = default;
  /// q values are reduced mod 2, b values mod 1. b must be symmetric with
  /// b(i,i) == q(i) mod 1. Throws std::invalid_argument on inconsistent data.
  FiniteQuadraticForm(std::vector<long> orders, const std::vector<Rational>& qdiag,
                      const std::vector<std::vector<Rational>>& bmat);

  std::size_t length() const { return orders_.size(); }
  const std::vector<long>& orders() const { return orders_; }
  long order(std::size_t i) const { return orders_[i]; }
  /// |D| as a 64-bit integer (throws if it does not fit).
  std::uint64_t group_order() const;
  bool is_trivial() const { return group_order() == 1; }

  Rational q(std::size_t i) const;
  Rational b(std::size_t i, std::size_t j) const;

  /// Common denominator N: q(i) = qnum(i)/N mod 2, b(i,j) = bnum(i,j)/N mod 1.
  long denom() const { return denom_; }
  long qnum(std::size_t i) const { return qnum_[i]; }
  long bnum(std::size_t i, std::size_t j) const { return bnum_[i * length() + j]; }

  FqfElement reduce(const FqfElement& x) const;
  FqfElement zero() const { return FqfElement(length(), 0); }
  FqfElement add(const FqfElement& x, const FqfElement& y) const;
  FqfElement scale(long k, const FqfElement& x) const;
  /// Order of the element x in D.
  long element_order(const FqfElement& x) const;

  /// Numerators: q(x) = q_numerator(x)/N in [0, 2N), b likewise in [0, N).
  long q_numerator(const FqfElement& x) const;
  long b_numerator(const FqfElement& x, const FqfElement& y) const;

  /// Mixed-radix indexing with the first coefficient least significant.
  std::size_t index_of(const FqfElement& x) const;
  FqfElement element_at(std::size_t idx) const;

  friend bool operator==(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

 private:
  std::vector<long> orders_;
  long denom_ = 1;
  std::vector<long> qnum_;
  std::vector<long> bnum_;
};

std::ostream& operator<<(std::ostream& os, const FiniteQuadraticForm& q);

Rational eval_q(const FiniteQuadraticForm& q, const FqfElement& x);
Rational eval_b(const FiniteQuadraticForm& q, const FqfElement& x, const FqfElement& y);

struct DiscriminantForm {
  FiniteQuadraticForm form;
  /// lifts[i] is a vector of L^dual (coordinates in the lattice basis) mapping
  /// to generator i.
  std::vector<RatVector> lifts;
  std::size_t lattice_rank = 0;

  /// Lift of an arbitrary element (sum of generator lifts).
  RatVector lift(const FqfElement& x) const;
};

/// D_L = L^dual / L via the Smith form of the Gram matrix. Generators are the
/// nontrivial Smith factors in increasing order d_1 | d_2 | ...
/// Throws std::invalid_argument for odd, non-symmetric or singular input.
DiscriminantForm discriminant_form(const IntMatrix& gram);

FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);
FiniteQuadraticForm negate(const FiniteQuadraticForm& q);

/// The form on the p-Sylow subgroup, generated by (d_i / p^{v_p(d_i)}) * gamma_i.
FiniteQuadraticForm p_part(const FiniteQuadraticForm& q, long p);

/// Same form, re-presented on invariant-factor generators d_1 | d_2 | ...
FiniteQuadraticForm normalize(const FiniteQuadraticForm& q);

/// For a p-group form: generators of orders p^nu_1 >= ... >= p^nu_l.
/// Throws std::invalid_argument when |D| is not a prime power.
FiniteQuadraticForm reduced_generators(const FiniteQuadraticForm& q);

/// Generators with orders s_i > 1 presenting S/H (H inside S, both given by
/// generators). Orders are increasing with s_1 | s_2 | ...
struct QuotientPresentation {
  std::vector<FqfElement> gens;
  std::vector<long> orders;
};
QuotientPresentation quotient_presentation(const FiniteQuadraticForm& q,
                                           const std::vector<FqfElement>& s_gens,
                                           const std::vector<FqfElement>& h_gens);

/// Invariant factors of the subgroup generated by gens, largest first, without
/// trivial factors (empty for the zero subgroup).
std::vector<long> invariant_factors(const FiniteQuadraticForm& q,
                                    const std::vector<FqfElement>& gens);

/// Every element of the subgroup generated by gens, as sorted element indices.
std::vector<std::size_t> subgroup_indices(const FiniteQuadraticForm& q,
                                          const std::vector<FqfElement>& gens);

std::vector<FqfElement> isotropic_elements(const FiniteQuadraticForm& q);

/// H^perp as the list of its elements.
std::vector<FqfElement> orthogonal_complement(const FiniteQuadraticForm& q,
                                              const std::vector<FqfElement>& h_gens);

/// A small generating set of a subgroup given by its elements.
std::vector<FqfElement> generating_set(const FiniteQuadraticForm& q,
                                       const std::vector<FqfElement>& elements);

bool is_totally_isotropic(const FiniteQuadraticForm& q, const std::vector<FqfElement>& h_gens);

/// (H^perp / H, q restricted), in invariant-factor presentation.
/// Throws std::invalid_argument when H is not totally isotropic.
FiniteQuadraticForm subquotient(const FiniteQuadraticForm& q,
                                const std::vector<FqfElement>& h_gens);

/// Text format: line 1 orders, line 2 q values "a/b", then the strictly upper
/// b entries of each row on its own line.
std::string format_form(const FiniteQuadraticForm& q);
/// Throws std::invalid_argument on malformed text.
FiniteQuadraticForm parse_form(const std::string& text);

}  // namespace ellk3
