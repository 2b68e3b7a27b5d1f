#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <vector>

#include "hyperforge/wide_complex.hpp"

namespace hyperforge {

using index_t = std::uint64_t;

/// Finitely supported complex sequence. Only nonzero coefficients are stored.
///
/// Truncations of infinite objects (generator partial sums) carry the index
/// from which coefficients are no longer known.
class FiniteSeq {
 public:
  using container = std::map<index_t, WideComplex>;
  using const_iterator = container::const_iterator;

  FiniteSeq() = default;

  static FiniteSeq basis(index_t n, WideComplex coefficient = WideComplex::one());
  // Dense list starting at index 0; zeros are skipped.
  static FiniteSeq from_values(std::initializer_list<std::complex<double>> values);
  static FiniteSeq from_values(const std::vector<std::complex<double>>& values);

  void set(index_t n, const WideComplex& coefficient);
  WideComplex operator[](index_t n) const;

  bool empty() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  index_t min_index() const;
  index_t max_index() const;

  const container& coeffs() const noexcept { return coeffs_; }
  const_iterator begin() const noexcept { return coeffs_.begin(); }
  const_iterator end() const noexcept { return coeffs_.end(); }

  std::optional<index_t> truncation_horizon() const noexcept { return horizon_; }
  void set_truncation_horizon(std::optional<index_t> h) noexcept { horizon_ = h; }

  FiniteSeq& operator+=(const FiniteSeq& rhs);
  FiniteSeq& operator-=(const FiniteSeq& rhs);
  FiniteSeq scaled(const WideComplex& factor) const;

  friend FiniteSeq operator+(FiniteSeq lhs, const FiniteSeq& rhs) { return lhs += rhs; }
  friend FiniteSeq operator-(FiniteSeq lhs, const FiniteSeq& rhs) { return lhs -= rhs; }

  // Structural equality: same support, bit-identical coefficients.
  friend bool operator==(const FiniteSeq& a, const FiniteSeq& b) { return a.coeffs_ == b.coeffs_; }

 private:
  container coeffs_;
  std::optional<index_t> horizon_;
};

FiniteSeq coordinatewise_product(const FiniteSeq& x, const FiniteSeq& y);
// Each coefficient raised to the j-th power (j >= 1).
FiniteSeq coordinatewise_power(const FiniteSeq& x, unsigned j);

FiniteSeq cauchy_product(const FiniteSeq& x, const FiniteSeq& y);
// x^0 = e_0; otherwise m-1 repeated convolutions.
FiniteSeq cauchy_power(const FiniteSeq& x, unsigned m);

// max_n |x_n - y_n| / max_n max(|x_n|, |y_n|), rescaled; 0 when both empty.
wide_real max_relative_difference(const FiniteSeq& x, const FiniteSeq& y);
// max_n of the per-coefficient relative difference.
wide_real max_coefficient_relative_difference(const FiniteSeq& x, const FiniteSeq& y);

}  // namespace hyperforge
