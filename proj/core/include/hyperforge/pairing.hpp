#pragma once

#include <cstdint>
#include <string_view>

namespace hyperforge {

using round_t = std::uint64_t;

struct Pair {
  unsigned m = 1;  // degree
  unsigned l = 1;  // target index
  friend bool operator==(const Pair&, const Pair&) = default;
};

struct Triple {
  unsigned m = 1;   // degree
  unsigned l = 1;   // target index
  unsigned nu = 1;  // column of the coefficient matrix
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Bijection between rounds r >= 1 and pairs (m, l) >= (1, 1): diagonals
/// m + l = 2, 3, ... in turn, m ascending within a diagonal.
class PairingOrder {
 public:
  static constexpr std::string_view name = "cantor";

  static round_t round_of(Pair p);
  static Pair pair_of(round_t r);
  // Largest degree among rounds before r; 0 for r = 1.
  static unsigned max_degree_before(round_t r);
};

/// Bijection between rounds r >= 1 and triples (m, l, nu) >= (1, 1, 1),
/// ordered by m + l + nu, then lexicographically.
class TriplePairing {
 public:
  static constexpr std::string_view name = "cantor3";

  static round_t round_of(Triple t);
  static Triple triple_of(round_t r);
};

}  // namespace hyperforge
