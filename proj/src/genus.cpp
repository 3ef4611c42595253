#include "ellk3/genus.hpp"

#include "ellk3/local_invariants.hpp"

#include <stdexcept>
#include <vector>

namespace ellk3 {

namespace {

// Is there a choice of one excess per list, all from admissible pairs, with the
// required total mod 8?
bool reachable(const std::vector<std::vector<int>>& choices, int target) {
  std::vector<char> sums(8, 0);
  sums[0] = 1;
  for (const auto& c : choices) {
    std::vector<char> next(8, 0);
    for (int s = 0; s < 8; ++s)
      if (sums[s])
        for (int e : c) next[(s + e) % 8] = 1;
    sums = next;
  }
  return sums[((target % 8) + 8) % 8] != 0;
}

}  // namespace

bool exists_even_lattice(long r, long s, const FiniteQuadraticForm& q) {
  if (r < 0 || s < 0) throw std::invalid_argument("exists_even_lattice: negative signature");
  const long n = r + s;
  if (n == 0) throw std::invalid_argument("exists_even_lattice: rank zero");

  const Integer order = static_cast<unsigned long>(q.group_order());
  const Integer d = (s % 2 == 0) ? order : Integer(-order);
  std::vector<long> primes = prime_divisors(Integer(2 * d));

  std::vector<std::vector<int>> choices;
  for (long p : primes) {
    FiniteQuadraticForm qp = p_part(q, p);
    Integer delta = d;
    while (delta % p == 0) delta /= p;
    SquareClass want = square_class(delta, p);
    std::vector<int> excesses;
    for (const auto& li : local_invariant_set(p, n, qp))
      if (li.reddisc == want) excesses.push_back(li.excess);
    if (excesses.empty()) return false;
    choices.push_back(std::move(excesses));
  }
  return reachable(choices, static_cast<int>((n - (r - s)) % 8));
}

}  // namespace ellk3
