#include "hyperforge/finite_seq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperforge/error.hpp"

namespace hyperforge {

FiniteSeq FiniteSeq::basis(index_t n, WideComplex coefficient) {
  FiniteSeq x;
  x.set(n, coefficient);
  return x;
}

FiniteSeq FiniteSeq::from_values(std::initializer_list<std::complex<double>> values) {
  return from_values(std::vector<std::complex<double>>(values));
}

FiniteSeq FiniteSeq::from_values(const std::vector<std::complex<double>>& values) {
  FiniteSeq x;
  for (std::size_t n = 0; n < values.size(); ++n) x.set(n, WideComplex(values[n]));
  return x;
}

void FiniteSeq::set(index_t n, const WideComplex& coefficient) {
  if (coefficient.is_zero()) {
    coeffs_.erase(n);
  } else {
    coeffs_[n] = coefficient;
  }
}

WideComplex FiniteSeq::operator[](index_t n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? WideComplex{} : it->second;
}

index_t FiniteSeq::min_index() const {
  if (coeffs_.empty()) throw Error(ErrorCode::invalid_argument, "min_index of zero sequence");
  return coeffs_.begin()->first;
}

index_t FiniteSeq::max_index() const {
  if (coeffs_.empty()) throw Error(ErrorCode::invalid_argument, "max_index of zero sequence");
  return coeffs_.rbegin()->first;
}

FiniteSeq& FiniteSeq::operator+=(const FiniteSeq& rhs) {
  for (const auto& [n, c] : rhs.coeffs_) {
    auto it = coeffs_.find(n);
    if (it == coeffs_.end()) {
      coeffs_.emplace(n, c);
      continue;
    }
    WideComplex sum = it->second + c;
    if (sum.is_zero()) {
      coeffs_.erase(it);
    } else {
      it->second = sum;
    }
  }
  return *this;
}

FiniteSeq& FiniteSeq::operator-=(const FiniteSeq& rhs) {
  return *this += rhs.scaled(WideComplex(-1.0));
}

FiniteSeq FiniteSeq::scaled(const WideComplex& factor) const {
  FiniteSeq out;
  if (factor.is_zero()) return out;
  for (const auto& [n, c] : coeffs_) out.coeffs_.emplace(n, c * factor);
  return out;
}

FiniteSeq coordinatewise_product(const FiniteSeq& x, const FiniteSeq& y) {
  FiniteSeq out;
  const auto& small = x.size() <= y.size() ? x : y;
  const auto& large = x.size() <= y.size() ? y : x;
  for (const auto& [n, c] : small) {
    auto other = large[n];
    if (!other.is_zero()) out.set(n, c * other);
  }
  return out;
}

FiniteSeq coordinatewise_power(const FiniteSeq& x, unsigned j) {
  if (j == 0) throw Error(ErrorCode::invalid_argument, "coordinatewise power 0 is not finitely supported");
  FiniteSeq out;
  for (const auto& [n, c] : x) out.set(n, c.pow(j));
  return out;
}

FiniteSeq cauchy_product(const FiniteSeq& x, const FiniteSeq& y) {
  std::map<index_t, WideAccumulator> acc;
  for (const auto& [i, a] : x) {
    for (const auto& [j, b] : y) acc[i + j].add(a * b);
  }
  FiniteSeq out;
  for (const auto& [n, sum] : acc) out.set(n, sum.value());
  return out;
}

FiniteSeq cauchy_power(const FiniteSeq& x, unsigned m) {
  if (m == 0) return FiniteSeq::basis(0);
  FiniteSeq out = x;
  for (unsigned k = 1; k < m; ++k) out = cauchy_product(out, x);
  return out;
}

wide_real max_relative_difference(const FiniteSeq& x, const FiniteSeq& y) {
  wide_real ref = -std::numeric_limits<wide_real>::infinity();
  for (const auto& [n, c] : x) ref = std::max(ref, c.log_abs());
  for (const auto& [n, c] : y) ref = std::max(ref, c.log_abs());
  if (std::isinf(ref)) return 0;
  wide_real worst = 0;
  auto visit = [&](index_t n) {
    const WideComplex d = x[n] - y[n];
    if (!d.is_zero()) worst = std::max(worst, std::exp(d.log_abs() - ref));
  };
  for (const auto& [n, c] : x) visit(n);
  for (const auto& [n, c] : y) visit(n);
  return worst;
}

wide_real max_coefficient_relative_difference(const FiniteSeq& x, const FiniteSeq& y) {
  wide_real worst = 0;
  for (const auto& [n, c] : x) worst = std::max(worst, relative_difference(c, y[n]));
  for (const auto& [n, c] : y) worst = std::max(worst, relative_difference(x[n], c));
  return worst;
}

}  // namespace hyperforge
