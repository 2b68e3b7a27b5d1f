#include "hyperforge/multi_index.hpp"

#include <algorithm>
#include <numeric>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

void fill(unsigned left, std::size_t pos, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = left;
    out.push_back(cur);
    return;
  }
  for (unsigned v = 0; v <= left; ++v) {
    cur[pos] = v;
    fill(left - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> compositions(unsigned mu, unsigned k) {
  std::vector<MultiIndex> out;
  if (k == 0) {
    if (mu == 0) out.emplace_back();
    return out;
  }
  MultiIndex cur(k, 0);
  fill(mu, 0, cur, out);
  return out;
}

std::vector<MultiIndex> enumerate_multi_indices(unsigned mu, unsigned t) {
  if (mu < 1 || t < 1) throw Error(ErrorCode::invalid_argument, "mu and t must be >= 1");
  std::vector<MultiIndex> out;
  for (unsigned last = 1; last <= mu; ++last) {
    for (MultiIndex head : compositions(mu - last, t - 1)) {
      head.push_back(last);
      out.push_back(std::move(head));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i after dividing out the gcd.
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(i));
    result = (result / g) * (num / (i / g));
  }
  return result;
}

std::uint64_t multi_index_count(unsigned mu, unsigned t) {
  if (mu < 1 || t < 1) return 0;
  return binomial(mu + t - 2, t - 1);
}

std::uint64_t multinomial(unsigned mu, const MultiIndex& alpha) {
  const unsigned total = std::accumulate(alpha.begin(), alpha.end(), 0u);
  if (total != mu) throw Error(ErrorCode::invalid_argument, "multi-index does not sum to mu");
  if (mu > 20) throw Error(ErrorCode::invalid_argument, "multinomial supported for mu <= 20");
  // Product of binomials C(a_1 + ... + a_i, a_i).
  std::uint64_t result = 1;
  unsigned running = 0;
  for (unsigned a : alpha) {
    running += a;
    result *= binomial(running, a);
  }
  return result;
}

}  // namespace hyperforge
