#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hyperforge/certificate.hpp"
#include "hyperforge/spaces.hpp"
#include "hyperforge/weight.hpp"

namespace hyperforge {

struct BlockOptions {
  // Maximum number of (gamma, eta) candidates examined.
  std::uint64_t budget = 50'000'000;
  // Resume the ascending scan at this (gamma, eta) instead of the start.
  std::optional<std::pair<index_t, index_t>> resume_from;
  // Run the mixing and Property B checks first.
  bool check_prerequisites = true;
};

/// p = q + b e_gamma with q = sum_j c_j e_{eta+j} such that
///   C.1 ||p||_r < eps,
///   C.2 m q * b^{m-1} e_{(m-1)gamma} = F^{eta+(m-1)gamma} y (exact by construction),
///   C.3 ||B^{eta+(m-1)gamma}(b^m e_{m gamma})||_r < eps.
struct BlockSolveResult {
  unsigned m = 1;
  unsigned r = 1;
  index_t N = 0;
  double eps = 0.5;
  wide_real log_eps = 0;
  index_t eta = 0;
  index_t gamma = 0;
  WideComplex b;
  std::vector<WideComplex> c;
  FiniteSeq p;
  Certificate C1;
  Certificate C3;
  wide_real C2_residual = 0;
  bool omega_bypass = false;
  // Constants of the existence argument, kept for diagnostics.
  double C4 = 0;
  double eps_tilde = 0;
  std::uint64_t candidates = 0;

  index_t a() const { return eta + static_cast<index_t>(m - 1) * gamma; }
  bool certified() const { return C1.pass && C3.pass; }
};

BlockSolveResult solve_building_block(const SpaceSpec& space, const Weight& w, const FiniteSeq& y, unsigned m,
                                      unsigned r, index_t N, double eps, const BlockOptions& options = {});
// Same with eps given as a natural log, for tolerances below the double range.
BlockSolveResult solve_building_block_log(const SpaceSpec& space, const Weight& w, const FiniteSeq& y, unsigned m,
                                          unsigned r, index_t N, wide_real log_eps, const BlockOptions& options = {});

// The closed-form pieces, exposed for independent checks.
wide_real block_log_b(const SpaceSpec& space, const Weight& w, index_t s, unsigned m, unsigned r, index_t eta,
                      index_t gamma);
std::vector<WideComplex> block_coefficients(const Weight& w, const FiniteSeq& y, unsigned m, const WideComplex& b,
                                            index_t eta, index_t gamma);
FiniteSeq block_point(const std::vector<WideComplex>& c, const WideComplex& b, index_t eta, index_t gamma);
// Relative residual of C.2.
wide_real block_c2_residual(const Weight& w, const FiniteSeq& y, const BlockSolveResult& res);
// log ||B^{eta+(m-1)gamma}(b^m e_{m gamma})||_r
wide_real block_c3_log_value(const SpaceSpec& space, const Weight& w, unsigned m, unsigned r,
                             const WideComplex& b, index_t eta, index_t gamma);

// Throws prerequisite_missing when mixing or Property B cannot be certified.
void check_block_prerequisites(const SpaceSpec& space, const Weight& w, unsigned m, unsigned r);

}  // namespace hyperforge
