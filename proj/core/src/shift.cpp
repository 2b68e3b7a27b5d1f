#include "hyperforge/shift.hpp"

#include "hyperforge/error.hpp"

namespace hyperforge {

FiniteSeq backward_iterate(const Weight& w, const FiniteSeq& x, index_t a) {
  if (a == 0) return x;
  FiniteSeq out;
  for (auto it = x.coeffs().lower_bound(a); it != x.end(); ++it) {
    const index_t n = it->first - a;
    out.set(n, it->second * w.ratio(n, a));
  }
  return out;
}

FiniteSeq forward_iterate(const Weight& w, const FiniteSeq& x, index_t a) {
  if (a == 0) return x;
  FiniteSeq out;
  for (const auto& [n, c] : x) out.set(n + a, c / w.ratio(n, a));
  return out;
}

FiniteSeq root_power_block(const Weight& w, const FiniteSeq& y, index_t a, unsigned j, unsigned m) {
  if (j == 0 || m == 0) throw Error(ErrorCode::invalid_argument, "root_power_block needs j, m >= 1");
  FiniteSeq out;
  for (const auto& [n, c] : y) {
    out.set(n + a, c.root(m).pow(j) / w.root_ratio(n, a, j, m));
  }
  return out;
}

}  // namespace hyperforge
