#pragma once

// Independent reference implementations for the tests. Everything here works
// on dense std::complex<long double> vectors and straight loops, sharing no
// code with the library beyond the FiniteSeq container used for conversion.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "hyperforge/finite_seq.hpp"
#include "hyperforge/spaces.hpp"
#include "hyperforge/weight.hpp"

namespace hyperforge::testing {

using cld = std::complex<long double>;
using Dense = std::vector<cld>;

inline Dense dense(const FiniteSeq& x) {
  if (x.empty()) return {};
  Dense d(x.max_index() + 1, cld{0, 0});
  for (const auto& [n, c] : x) d[n] = c.to_complex_wide();
  return d;
}

inline FiniteSeq from_dense(const Dense& d) {
  FiniteSeq x;
  for (std::size_t n = 0; n < d.size(); ++n) {
    if (d[n] != cld{0, 0}) x.set(n, WideComplex(d[n]));
  }
  return x;
}

inline Dense naive_convolution(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense out(a.size() + b.size() - 1, cld{0, 0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline Dense naive_power(const Dense& a, unsigned m) {
  Dense out{cld{1, 0}};
  for (unsigned k = 0; k < m; ++k) out = naive_convolution(out, a);
  return out;
}

inline Dense naive_coordinatewise(const Dense& a, const Dense& b) {
  Dense out(std::min(a.size(), b.size()));
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = a[n] * b[n];
  return out;
}

// max_n |a_n - b_n| / max_n max(|a_n|, |b_n|)
inline long double dense_relative_difference(const Dense& a, const Dense& b) {
  const std::size_t len = std::max(a.size(), b.size());
  long double diff = 0, scale = 0;
  for (std::size_t n = 0; n < len; ++n) {
    const cld x = n < a.size() ? a[n] : cld{0, 0};
    const cld y = n < b.size() ? b[n] : cld{0, 0};
    diff = std::max(diff, std::abs(x - y));
    scale = std::max({scale, std::abs(x), std::abs(y)});
  }
  return scale == 0 ? 0 : diff / scale;
}

inline long double relative_difference(const FiniteSeq& x, const Dense& d) {
  return dense_relative_difference(dense(x), d);
}

// Seminorms straight from their definitions; for entire_cauchy this is the
// upper end sum |x_n| q^n.
inline long double naive_seminorm(const SpaceSpec& space, unsigned q, const FiniteSeq& x) {
  long double acc = 0;
  for (const auto& [n, c] : x) {
    const long double a = std::abs(c.to_complex_wide());
    switch (space.id()) {
      case SpaceId::lp: acc += std::pow(a, static_cast<long double>(space.p())); break;
      case SpaceId::c0: acc = std::max(acc, a); break;
      case SpaceId::l1: acc += a; break;
      case SpaceId::entire_hadamard:
      case SpaceId::entire_cauchy: acc += a * std::pow(static_cast<long double>(q), static_cast<long double>(n)); break;
      case SpaceId::omega_coord:
        if (n <= q) acc = std::max(acc, a);
        break;
      case SpaceId::omega_cauchy:
        if (n <= q) acc += a;
        break;
    }
  }
  if (space.id() == SpaceId::lp) acc = std::pow(acc, 1.0L / static_cast<long double>(space.p()));
  return acc;
}

// w_{n+1} ... w_{n+a} by direct multiplication of the decoded weights.
inline cld naive_weight_ratio(const Weight& w, index_t n, index_t a) {
  cld acc{1, 0};
  for (index_t k = n + 1; k <= n + a; ++k) acc *= w.w(k).to_complex_wide();
  return acc;
}

inline Dense naive_backward(const Weight& w, const Dense& x, index_t a) {
  if (x.size() <= a) return {};
  Dense out(x.size() - a);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = naive_weight_ratio(w, n, a) * x[n + a];
  return out;
}

/// Deterministic generator of small random sequences with coefficients in
/// the unit disk.
class SeqGen {
 public:
  explicit SeqGen(std::uint64_t seed) : rng_(seed) {}

  FiniteSeq next(unsigned max_support = 8, index_t max_index = 12) {
    std::uniform_int_distribution<unsigned> count(1, max_support);
    std::uniform_int_distribution<index_t> idx(0, max_index);
    FiniteSeq x;
    const unsigned k = count(rng_);
    for (unsigned i = 0; i < k; ++i) x.set(idx(rng_), WideComplex(unit_disk()));
    return x;
  }

  std::complex<double> unit_disk() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
      const std::complex<double> z(u(rng_), u(rng_));
      if (std::abs(z) <= 1.0 && std::abs(z) > 1e-3) return z;
    }
  }

  unsigned uniform(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace hyperforge::testing
