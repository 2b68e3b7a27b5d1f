#include "hyperforge/building_block.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperforge/criteria.hpp"
#include "hyperforge/error.hpp"
#include "hyperforge/shift.hpp"

namespace hyperforge {

namespace {

constexpr wide_real kNegInf = -std::numeric_limits<wide_real>::infinity();

bool is_neg_inf(wide_real x) { return std::isinf(x) && x < 0; }

// log(exp(a) + exp(b))
wide_real log_add(wide_real a, wide_real b) {
  if (is_neg_inf(a)) return b;
  if (is_neg_inf(b)) return a;
  const wide_real hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

struct Target {
  index_t s = 0;
  std::vector<wide_real> log_num;  // log |v_j y_j|, -inf where y_j = 0
  std::vector<WideComplex> num;    // v_j y_j
};

Target prepare(const Weight& w, const FiniteSeq& y) {
  Target t;
  t.s = y.max_index();
  t.log_num.assign(t.s + 1, kNegInf);
  t.num.assign(t.s + 1, WideComplex{});
  for (const auto& [j, yj] : y) {
    t.num[j] = w.v(j) * yj;
    t.log_num[j] = t.num[j].log_abs();
  }
  return t;
}

// All Cauchy spaces have ||x||_q = sum |x_n| ||e_n||_q.
wide_real fast_log_norm(const SpaceSpec& space, unsigned r, const Target& tgt, wide_real log_scale_q,
                        const Weight& w, unsigned m, index_t eta, index_t gamma, wide_real log_b) {
  wide_real acc = kNegInf;
  const index_t shift = static_cast<index_t>(m - 1) * gamma;
  for (index_t j = 0; j <= tgt.s; ++j) {
    if (is_neg_inf(tgt.log_num[j])) continue;
    wide_real lc = tgt.log_num[j] + log_scale_q - w.log_abs_v(eta + j + shift);
    if (m > 1) lc -= (m - 1) * log_b;
    acc = log_add(acc, lc + log_basis_seminorm(space, r, eta + j));
  }
  if (!is_neg_inf(log_b)) acc = log_add(acc, log_b + log_basis_seminorm(space, r, gamma));
  return acc;
}

std::string describe_candidate(index_t gamma, index_t eta, wide_real c1, wide_real c3) {
  std::ostringstream os;
  os << "gamma=" << gamma << " eta=" << eta << " log C1=" << static_cast<double>(c1)
     << " log C3=" << static_cast<double>(c3);
  return os.str();
}

}  // namespace

void check_block_prerequisites(const SpaceSpec& space, const Weight& w, unsigned m, unsigned r) {
  if (space.product() != Product::cauchy) {
    throw Error(ErrorCode::inconsistent_space, "building blocks are defined for the Cauchy product");
  }
  if (space.id() == SpaceId::omega_cauchy) return;
  const MixingResult mix = check_mixing(space, w, kDefaultHorizonN, std::max(r, 1u), 1e-3);
  if (!mix.pass) {
    std::ostringstream os;
    os << "mixing not observed: value " << mix.failure_value << " at n=" << mix.failure->first
       << " q=" << mix.failure->second;
    throw Error(ErrorCode::prerequisite_missing, os.str());
  }
  try {
    property_b_witness(space, std::max(m, 2u), 2, std::max(r, 1u), 64, std::max(r, 1u));
  } catch (const Error& e) {
    throw Error(ErrorCode::prerequisite_missing, std::string("Property B: ") + e.what());
  }
}

wide_real block_log_b(const SpaceSpec& space, const Weight& w, index_t s, unsigned m, unsigned r, index_t eta,
                      index_t gamma) {
  const index_t shift = static_cast<index_t>(m - 1) * gamma;
  wide_real a = kNegInf;
  for (index_t j = 0; j <= s; ++j) {
    a = std::max(a, (log_basis_seminorm(space, r, eta + j) - w.log_abs_v(eta + j + shift)) / (m - 1));
  }
  const wide_real b1 = -log_basis_seminorm(space, r, gamma);
  const wide_real b2 = (w.log_abs_v(gamma - eta) - w.log_abs_v(static_cast<index_t>(m) * gamma) -
                        log_basis_seminorm(space, r, gamma - eta)) /
                       m;
  return (a + std::min(b1, b2)) / 2;
}

std::vector<WideComplex> block_coefficients(const Weight& w, const FiniteSeq& y, unsigned m, const WideComplex& b,
                                            index_t eta, index_t gamma) {
  const index_t s = y.max_index();
  const index_t shift = static_cast<index_t>(m - 1) * gamma;
  std::vector<WideComplex> c(s + 1);
  // m = 1: c_j = v_j y_j / v_{eta+j}; otherwise divided by m b^{m-1} as well.
  WideComplex denom_common = WideComplex::one();
  if (m > 1) denom_common = WideComplex(static_cast<double>(m)) * b.pow(m - 1);
  for (index_t j = 0; j <= s; ++j) {
    const WideComplex yj = y[j];
    if (yj.is_zero()) continue;
    c[j] = w.v(j) * yj / (denom_common * w.v(eta + j + shift));
  }
  return c;
}

FiniteSeq block_point(const std::vector<WideComplex>& c, const WideComplex& b, index_t eta, index_t gamma) {
  FiniteSeq p;
  for (std::size_t j = 0; j < c.size(); ++j) p.set(eta + j, c[j]);
  if (!b.is_zero()) p.set(gamma, b);
  return p;
}

wide_real block_c3_log_value(const SpaceSpec& space, const Weight& w, unsigned m, unsigned r, const WideComplex& b,
                             index_t eta, index_t gamma) {
  if (b.is_zero() || m < 2) return kNegInf;
  const index_t top = static_cast<index_t>(m) * gamma;
  const wide_real lb = log_basis_seminorm(space, r, gamma - eta);
  if (is_neg_inf(lb)) return kNegInf;
  return m * b.log_abs() + w.log_abs_v(top) - w.log_abs_v(gamma - eta) + lb;
}

wide_real block_c2_residual(const Weight& w, const FiniteSeq& y, const BlockSolveResult& res) {
  FiniteSeq q;
  for (std::size_t j = 0; j < res.c.size(); ++j) q.set(res.eta + j, res.c[j]);
  FiniteSeq lhs;
  if (res.m == 1) {
    lhs = q;
  } else {
    const index_t shift = static_cast<index_t>(res.m - 1) * res.gamma;
    lhs = cauchy_product(q, FiniteSeq::basis(shift, WideComplex(static_cast<double>(res.m)) * res.b.pow(res.m - 1)));
  }
  return max_coefficient_relative_difference(lhs, forward_iterate(w, y, res.a()));
}

BlockSolveResult solve_building_block(const SpaceSpec& space, const Weight& w, const FiniteSeq& y, unsigned m,
                                      unsigned r, index_t N, double eps, const BlockOptions& options) {
  if (!(eps > 0)) throw Error(ErrorCode::invalid_argument, "epsilon must be positive");
  return solve_building_block_log(space, w, y, m, r, N, std::log(static_cast<wide_real>(eps)), options);
}

BlockSolveResult solve_building_block_log(const SpaceSpec& space, const Weight& w, const FiniteSeq& y, unsigned m,
                                          unsigned r, index_t N, wide_real log_eps, const BlockOptions& options) {
  if (m < 1 || r < 1) throw Error(ErrorCode::invalid_argument, "m and r must be >= 1");
  if (!std::isfinite(log_eps)) throw Error(ErrorCode::invalid_argument, "epsilon must be positive and finite");
  if (y.empty()) throw Error(ErrorCode::invalid_argument, "target must be nonzero");
  if (space.product() != Product::cauchy) {
    throw Error(ErrorCode::inconsistent_space, "building blocks are defined for the Cauchy product");
  }
  if (options.check_prerequisites) check_block_prerequisites(space, w, m, r);

  const Target tgt = prepare(w, y);
  const index_t s = tgt.s;
  const bool omega = space.id() == SpaceId::omega_cauchy;
  const std::uint64_t budget = effective_budget(options.budget);

  BlockSolveResult res;
  res.m = m;
  res.r = r;
  res.N = N;
  res.log_eps = log_eps;
  res.eps = Certificate::decode(log_eps);
  res.omega_bypass = omega;
  {
    wide_real sum = 0;
    for (index_t j = 0; j <= s; ++j) {
      if (!is_neg_inf(tgt.log_num[j])) sum += std::exp(tgt.log_num[j]);
    }
    res.C4 = static_cast<double>(sum / m + 1);
    res.eps_tilde = Certificate::decode(2 * (log_eps - std::log(2 * static_cast<wide_real>(res.C4))));
  }

  auto finish = [&](index_t eta, index_t gamma, WideComplex b) {
    res.eta = eta;
    res.gamma = gamma;
    res.b = b;
    res.c = block_coefficients(w, y, m, b, eta, gamma);
    res.p = block_point(res.c, m == 1 ? WideComplex{} : b, eta, gamma);
    res.C1 = Certificate::strict_less(log_seminorm_upper(space, r, res.p), log_eps, "C.1: ||p||_r < eps");
    res.C3 = Certificate::strict_less(block_c3_log_value(space, w, m, r, b, eta, gamma), log_eps,
                                      "C.3: ||B^{a}(b^m e_{m gamma})||_r < eps");
    res.C2_residual = block_c2_residual(w, y, res);
  };

  wide_real best_margin = std::numeric_limits<wide_real>::infinity();
  std::string best_seen = "no candidate examined";

  if (m == 1) {
    index_t eta = std::max(N, omega ? static_cast<index_t>(r) + 1 : index_t{0});
    if (options.resume_from) eta = std::max(eta, options.resume_from->second);
    for (std::uint64_t k = 0; k < budget; ++k, ++eta) {
      ++res.candidates;
      const wide_real c1 = fast_log_norm(space, r, tgt, 0, w, 1, eta, 0, kNegInf);
      if (c1 < log_eps) {
        finish(eta, eta + 2 * s + 1, WideComplex{});
        if (res.certified()) return res;
      }
      if (c1 - log_eps < best_margin) {
        best_margin = c1 - log_eps;
        best_seen = describe_candidate(eta + 2 * s + 1, eta, c1, kNegInf);
      }
    }
  } else {
    const index_t eta0 = std::max(N, omega ? static_cast<index_t>(r) + 1 : index_t{0});
    const index_t gap = 2 * s + 1 + (omega ? static_cast<index_t>(r) : 0);
    index_t gamma = eta0 + gap;
    index_t eta = eta0;
    if (options.resume_from) {
      gamma = std::max(gamma, options.resume_from->first);
      eta = std::max(eta0, options.resume_from->second);
    }
    const wide_real log_m = std::log(static_cast<wide_real>(m));
    std::uint64_t examined = 0;
    while (examined < budget) {
      if (eta + gap > gamma) {
        ++gamma;
        eta = eta0;
        continue;
      }
      ++examined;
      ++res.candidates;
      const wide_real log_b = omega ? 0 : block_log_b(space, w, s, m, r, eta, gamma);
      const wide_real c3 = block_c3_log_value(space, w, m, r, WideComplex::polar_log(log_b, 0), eta, gamma);
      const wide_real c1 = fast_log_norm(space, r, tgt, -log_m, w, m, eta, gamma, log_b);
      if (c1 < log_eps && c3 < log_eps) {
        finish(eta, gamma, WideComplex::polar_log(log_b, 0));
        if (res.certified()) return res;
      }
      const wide_real margin = std::max(c1, c3) - log_eps;
      if (margin < best_margin) {
        best_margin = margin;
        best_seen = describe_candidate(gamma, eta, c1, c3);
      }
      ++eta;
    }
  }
  std::ostringstream os;
  os << "building block search exhausted after " << res.candidates << " candidates; closest: " << best_seen
     << " against log eps=" << static_cast<double>(log_eps);
  throw Error(ErrorCode::search_exhausted, os.str());
}

}  // namespace hyperforge
