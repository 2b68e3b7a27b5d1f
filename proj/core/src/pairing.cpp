#include "hyperforge/pairing.hpp"

#include <cmath>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

// Rounds strictly before diagonal d (pairs with m + l < d).
round_t pairs_before(round_t d) { return (d - 1) * (d - 2) / 2; }

// Triples with coordinate sum < s.
round_t triples_before(round_t s) { return s < 4 ? 0 : (s - 1) * (s - 2) * (s - 3) / 6; }

}  // namespace

round_t PairingOrder::round_of(Pair p) {
  if (p.m < 1 || p.l < 1) throw Error(ErrorCode::invalid_argument, "pair entries start at 1");
  const round_t d = static_cast<round_t>(p.m) + p.l;
  return pairs_before(d) + p.m;
}

Pair PairingOrder::pair_of(round_t r) {
  if (r < 1) throw Error(ErrorCode::invalid_argument, "rounds start at 1");
  // Smallest d with pairs_before(d + 1) >= r.
  round_t d = static_cast<round_t>((3.0 + std::sqrt(8.0 * static_cast<double>(r))) / 2.0);
  while (d > 2 && pairs_before(d) >= r) --d;
  while (pairs_before(d + 1) < r) ++d;
  const round_t m = r - pairs_before(d);
  return {static_cast<unsigned>(m), static_cast<unsigned>(d - m)};
}

unsigned PairingOrder::max_degree_before(round_t r) {
  if (r <= 1) return 0;
  const Pair p = pair_of(r);
  const unsigned d = p.m + p.l;
  // Full diagonal d-1 reaches degree d-2; earlier entries of diagonal d reach m-1 <= d-2.
  return d - 2;
}

round_t TriplePairing::round_of(Triple t) {
  if (t.m < 1 || t.l < 1 || t.nu < 1) throw Error(ErrorCode::invalid_argument, "triple entries start at 1");
  const round_t s = static_cast<round_t>(t.m) + t.l + t.nu;
  round_t r = triples_before(s);
  for (round_t m = 1; m < t.m; ++m) r += s - m - 1;
  return r + t.l;
}

Triple TriplePairing::triple_of(round_t r) {
  if (r < 1) throw Error(ErrorCode::invalid_argument, "rounds start at 1");
  round_t s = 3 + static_cast<round_t>(std::cbrt(6.0 * static_cast<double>(r)));
  while (s > 3 && triples_before(s) >= r) --s;
  while (triples_before(s + 1) < r) ++s;
  round_t rem = r - triples_before(s);
  round_t m = 1;
  while (rem > s - m - 1) {
    rem -= s - m - 1;
    ++m;
  }
  const round_t l = rem;
  return {static_cast<unsigned>(m), static_cast<unsigned>(l), static_cast<unsigned>(s - m - l)};
}

}  // namespace hyperforge
