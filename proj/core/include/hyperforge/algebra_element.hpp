#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "hyperforge/finite_seq.hpp"
#include "hyperforge/multi_index.hpp"
#include "hyperforge/spaces.hpp"

namespace hyperforge {

/// Polynomial without constant term in generators x1..xK:
/// z = sum_beta c_beta x1^{beta_1} ... xK^{beta_K}.
class AlgebraElement {
 public:
  using Terms = std::map<MultiIndex, std::complex<double>>;

  AlgebraElement() = default;

  // One-generator polynomial from (degree, coefficient) pairs.
  static AlgebraElement univariate(const std::vector<std::pair<unsigned, std::complex<double>>>& terms);

  // Adds c * x^beta; beta is padded to the current generator count.
  void add_term(MultiIndex beta, std::complex<double> c);

  unsigned generators() const noexcept { return generators_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  unsigned degree() const;
  unsigned lowest_degree() const;
  // Terms with |beta| = mu.
  Terms homogeneous(unsigned mu) const;
  // Same element over K >= generators() generators.
  AlgebraElement padded(unsigned K) const;

  // Throws degenerate_element if empty.
  void require_nonzero() const;

  std::string to_string() const;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  unsigned generators_ = 0;
  Terms terms_;
};

unsigned total_degree(const MultiIndex& beta);
// Generators with a positive exponent (1-based).
std::vector<unsigned> active_generators(const MultiIndex& beta);

// Substitutes the generators into z using the space's product.
FiniteSeq evaluate(const AlgebraElement& z, const std::vector<FiniteSeq>& generators, const SpaceSpec& space);

// Sum of c_beta a^beta over |beta| = degree(z): the top-degree form at a point.
std::complex<double> leading_form_value(const AlgebraElement& z, const std::vector<std::complex<double>>& a);

}  // namespace hyperforge
