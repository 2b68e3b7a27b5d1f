#pragma once

#include <cstdint>
#include <vector>

namespace hyperforge {

using MultiIndex = std::vector<unsigned>;

// { alpha in N_0^t : |alpha| = mu, alpha_t > 0 } in lexicographic order.
std::vector<MultiIndex> enumerate_multi_indices(unsigned mu, unsigned t);

// C(mu + t - 2, t - 1), the size of the set above.
std::uint64_t multi_index_count(unsigned mu, unsigned t);

// mu! / (alpha_1! ... alpha_t!); exact for mu <= 20.
std::uint64_t multinomial(unsigned mu, const MultiIndex& alpha);

std::uint64_t binomial(unsigned n, unsigned k);

// All alpha in N_0^k with |alpha| = mu, lexicographic.
std::vector<MultiIndex> compositions(unsigned mu, unsigned k);

}  // namespace hyperforge
