#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "hyperforge/building_block.hpp"
#include "hyperforge/certificate.hpp"
#include "hyperforge/lambda_matrix.hpp"
#include "hyperforge/multi_index.hpp"
#include "hyperforge/pairing.hpp"
#include "hyperforge/targets.hpp"

namespace hyperforge {

struct CauchyOptions {
  unsigned rounds = 8;
  // 0 builds one generator (pairs (m, l)); K >= 1 builds K generators over
  // the coefficient matrix (triples (m, l, nu)).
  unsigned generators = 0;
  std::uint64_t block_budget = 50'000'000;
  // Maximum number of epsilon / rho tightening steps per round.
  unsigned tighten_budget = 200;
  bool check_prerequisites = true;
};

struct CauchyRound {
  round_t r = 0;
  unsigned m = 1;
  unsigned l = 1;
  unsigned nu = 0;  // 0 for the single-generator pairing
  std::size_t target_id = 0;
  std::size_t lambda_element = 0;
  std::vector<std::complex<double>> lambda_column;

  index_t N = 0;
  index_t eta = 0;
  index_t gamma = 0;
  index_t a = 0;
  WideComplex b;
  std::vector<WideComplex> c;
  FiniteSeq p;

  // Solver settings after tightening: C.1 measured with seminorm rho against eps.
  // eps as a natural log; eps itself underflows a double after a few rounds.
  wide_real log_eps = 0;
  unsigned rho = 0;
  unsigned tighten_steps = 0;

  Certificate C1;
  Certificate C3;
  wide_real C2_residual = 0;
  Certificate D1;  // ||p_r||_r < 2^{-r}
  Certificate D2;  // max index of every listed P^alpha below a_r
  Certificate D3;  // ||T^{a_r} p_r^m - y||_r < 2^{-r}
  Certificate D4;  // tail inequalities against 2^{-r}
  Certificate separation;  // a_r <= m gamma_r < eta_{r+1}

  bool certified() const {
    return C1.pass && C3.pass && D1.pass && D2.pass && D3.pass && D4.pass && separation.pass;
  }
};

struct CauchyBundle {
  SpaceSpec space = SpaceSpec::make(SpaceId::l1);
  Weight weight = Weight::constant(2.0);
  std::vector<FiniteSeq> targets;
  unsigned generators = 0;
  std::vector<CauchyRound> rounds;

  bool algebrable() const noexcept { return generators > 0; }
  std::string_view pairing() const noexcept { return algebrable() ? TriplePairing::name : PairingOrder::name; }
  bool certified() const;
  // x = sum_r p_r, or x^{(k)} = sum_r lambda_{k, nu_r} p_r for k >= 1.
  FiniteSeq generator(unsigned k = 0) const;
  std::vector<FiniteSeq> generator_list() const;
};

/// Lazily computed Cauchy powers of the blocks p_1, ..., p_r.
class BlockPowers {
 public:
  void push(FiniteSeq p) { powers_.push_back({FiniteSeq::basis(0), std::move(p)}); }
  void pop() { powers_.pop_back(); }
  std::size_t size() const noexcept { return powers_.size(); }
  // p_i^k with i 1-based.
  const FiniteSeq& power(std::size_t i, unsigned k);
  // P^alpha = p_1^{alpha_1} * ... * p_t^{alpha_t}
  FiniteSeq product(const MultiIndex& alpha);

 private:
  std::vector<std::vector<FiniteSeq>> powers_;
};

/// Certifies D.1-D.4 (or F.1-F.4) and the separation for a round whose block
/// fields (N, eta, gamma, a, b, c, p, eps, rho, C.*) are filled in; `powers`
/// must hold p_1 .. p_{r-1}.
void certify_cauchy_round(const CauchyBundle& prefix, CauchyRound& round, BlockPowers& powers);

class CauchyBuilder {
 public:
  CauchyBuilder(SpaceSpec space, Weight weight, std::vector<FiniteSeq> targets, CauchyOptions options);

  const CauchyRound& build_next();
  const CauchyBundle& run();
  const CauchyBundle& bundle() const noexcept { return bundle_; }

 private:
  CauchyBundle bundle_;
  CauchyOptions options_;
  std::optional<LambdaMatrix> lambda_;
  BlockPowers powers_;
};

CauchyBundle build_generator_cauchy(const SpaceSpec& space, const Weight& w, const std::vector<FiniteSeq>& targets,
                                    unsigned rounds);
CauchyBundle build_algebrable_cauchy(const SpaceSpec& space, const Weight& w,
                                     const std::vector<FiniteSeq>& targets, unsigned K, unsigned rounds);

// Round metadata (m, l, nu) for the bundle's pairing.
Triple cauchy_round_indices(const CauchyBundle& bundle, round_t r);

// Recomputes every certificate from the bundle alone.
CheckResult revalidate(const CauchyBundle& bundle);

/// sum_{mu <= mu_max} sum_{t > r} card(I_{mu,t}) C_mu t^mu 2^{-t}, with
/// C_mu given for mu = 1..mu_max (C[mu-1]).
double tail_bound(unsigned mu_max, const std::vector<double>& C, round_t r);
// C_mu = (1 + mu)^s max_{|beta| = mu} |c_beta| for mu = 1..deg z.
std::vector<double> tail_constants(const AlgebraElement& z);

}  // namespace hyperforge
