#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperforge/algebra_element.hpp"
#include "hyperforge/cauchy_construct.hpp"
#include "hyperforge/coord_construct.hpp"

namespace hyperforge {

/// One measured orbit approximation: ||T^a u - target||_q against a bound.
///
/// `distance` is an upper bound for the untruncated generator: the seminorm
/// measured on the truncation plus `allowance`, a certified bound for every
/// block beyond the last built round. pass <=> distance <= bound, where the
/// allowance itself is strict. Rows whose bound does not exceed the
/// allowance cannot be decided from the truncation and are marked skipped.
struct OrbitRow {
  round_t round = 0;
  index_t a = 0;
  std::optional<std::size_t> target;  // empty when the row measures distance to 0
  unsigned q = 1;
  unsigned mu = 1;                    // power of the generator, or degree of the element
  double distance = 0;
  double bound = 0;
  double ratio = 0;
  bool pass = false;
  bool skipped = false;
  double measured = 0;
  double allowance = 0;
  std::string note;

  friend bool operator==(const OrbitRow&, const OrbitRow&) = default;
};

struct OrbitSummary {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  double max_ratio = 0;
  bool degenerate = false;
  bool pass = true;

  friend bool operator==(const OrbitSummary&, const OrbitSummary&) = default;
};

struct OrbitReport {
  std::string bundle_id;
  std::string element;
  std::vector<OrbitRow> rounds;
  OrbitSummary summary;

  // Recomputes the summary from the rows.
  void summarize();
  friend bool operator==(const OrbitReport&, const OrbitReport&) = default;
};

// Coordinatewise: rounds t = (j, l), ||T^{a_t} x^j - y||_t < 2^{-t}.
OrbitReport orbit_power_report(const CoordBundle& bundle, unsigned j);
// Cauchy, single generator: rounds with m = j against 2^{-r+1}, rounds with
// m > j against 2^{-r} for distance to 0.
OrbitReport orbit_power_report(const CauchyBundle& bundle, unsigned j);

// Coordinatewise: lowest-degree part normalized by its leading coefficient,
// bound (sum of the other |coefficients| + 2) 2^{-t}.
OrbitReport orbit_element_report(const CoordBundle& bundle, const AlgebraElement& z);
// Cauchy: single generator uses the top coefficient and (sum_{mu<m} |c_mu| + 2) 2^{-r};
// several generators use rho_r from the coefficient matrix and |rho_r| 2^{-r} + tail.
OrbitReport orbit_element_report(const CauchyBundle& bundle, const AlgebraElement& z);

struct ExpansionComparison {
  FiniteSeq direct;    // z evaluated by repeated Cauchy products
  FiniteSeq expanded;  // sum_alpha d_alpha P^alpha
  // d_alpha by multi-index over the blocks (length = number of rounds).
  std::map<MultiIndex, std::complex<double>> coefficients;
  wide_real relative_difference = 0;
  bool partial = false;  // terms above the degree cap were left out
  bool pass = false;
};

inline constexpr double kExpansionTolerance = 1e-10;

ExpansionComparison expansion_oracle(const CauchyBundle& bundle, const AlgebraElement& z, unsigned degree_cap = 6);

struct ZeroProductPair {
  unsigned k = 0;
  unsigned k2 = 0;
  bool pass = true;
  std::optional<index_t> witness;  // first index where both generators are nonzero
};

struct ZeroProductReport {
  std::string bundle_id;
  std::vector<ZeroProductPair> pairs;
  bool pass = true;
};

// Pairwise coordinatewise products of the generators; exact support test.
ZeroProductReport zero_product_report(const CoordBundle& bundle);

struct GenerationRow {
  round_t round = 0;
  index_t index = 0;  // m gamma_r
  bool generators_vanish = false;
  double power_log_abs = 0;  // log |(p_r^m)_{m gamma_r}|; -inf when zero
  bool pass = false;
};

struct GenerationReport {
  std::string bundle_id;
  std::vector<GenerationRow> rounds;
  bool pass = true;
};

// For every round with m >= 2: all generators vanish at m gamma_r while
// p_r^m does not.
GenerationReport non_finite_generation_report(const CauchyBundle& bundle);

}  // namespace hyperforge
