#pragma once

#include "hyperforge/finite_seq.hpp"
#include "hyperforge/weight.hpp"

namespace hyperforge {

// B_w^a: coefficient at n+a moves to n, multiplied by v_{n+a} / v_n.
FiniteSeq backward_iterate(const Weight& w, const FiniteSeq& x, index_t a);

// F_{w^{-1}}^a: coefficient at n moves to n+a, multiplied by v_n / v_{n+a}.
// backward_iterate(w, forward_iterate(w, x, a), a) == x.
FiniteSeq forward_iterate(const Weight& w, const FiniteSeq& x, index_t a);

/// j-th power of F^a_{w^{-1/m}} y^{1/m}:
///   sum_n (w_{n+1}^{j/m} ... w_{n+a}^{j/m})^{-1} (y_n)^{j/m} e_{n+a}
/// with principal m-th roots; w^{j/m} is the j-th power of w^{1/m}.
FiniteSeq root_power_block(const Weight& w, const FiniteSeq& y, index_t a, unsigned j, unsigned m);

}  // namespace hyperforge
