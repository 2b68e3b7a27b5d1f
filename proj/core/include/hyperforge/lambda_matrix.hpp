#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hyperforge/algebra_element.hpp"

namespace hyperforge {

/// Coefficient matrix (lambda_{k,nu}) whose columns run through a countable
/// set A of K-tuples with Gaussian-rational entries of modulus <= 1.
///
/// A is enumerated by denominator level D = 1, 2, ...: a tuple belongs to
/// level D when the lcm of its entries' reduced denominators is D. Entries of
/// the grid {(p + p'i)/D} are ordered by angle in [0, 2pi), then by modulus
/// descending, with 0 last; tuples are lexicographic over that order. Column
/// nu takes the element at position 0; 0, 1; 0, 1, 2; ... so every element
/// recurs infinitely often.
class LambdaMatrix {
 public:
  explicit LambdaMatrix(unsigned rows, std::size_t max_elements = 20000);

  unsigned rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::complex<double>>& element(std::size_t index) const;
  // 0-based position in A used by column nu >= 1.
  static std::size_t element_index(std::uint64_t nu);
  // Smallest column at or after min_nu that uses element `index`.
  static std::uint64_t column_for(std::size_t index, std::uint64_t min_nu = 1);

  const std::vector<std::complex<double>>& column(std::uint64_t nu) const;
  std::complex<double> entry(unsigned k, std::uint64_t nu) const;

 private:
  unsigned rows_;
  std::vector<std::vector<std::complex<double>>> elements_;
};

struct LeadingColumn {
  std::uint64_t nu = 1;
  std::size_t element = 0;
  std::complex<double> rho;
};

inline constexpr double kLeadingFormThreshold = 1e-6;

/// First column nu >= min_nu at which the top-degree form of z evaluates to
/// |rho| > threshold.
LeadingColumn leading_form_column(const AlgebraElement& z, const LambdaMatrix& lambda, std::uint64_t min_nu = 1,
                                  double threshold = kLeadingFormThreshold);

}  // namespace hyperforge
