#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperforge/certificate.hpp"
#include "hyperforge/spaces.hpp"
#include "hyperforge/weight.hpp"

namespace hyperforge {

// Finite-horizon witnesses for the hypotheses consumed by the constructions.
// They certify finitely many instances of a limit statement; they are not
// proofs of the limit itself.

inline constexpr index_t kDefaultHorizonN = 500;
inline constexpr unsigned kDefaultHorizonQ = 5;
inline constexpr unsigned kDefaultMMax = 4;
inline constexpr unsigned kDefaultBigMMax = 16;

// log ||v_n^{-1} e_n||_q
wide_real log_normalized_basis(const SpaceSpec& space, const Weight& w, unsigned q, index_t n);

struct PkOptions {
  index_t horizon_n = 3;
  unsigned horizon_q = kDefaultHorizonQ;
  double tol = 1.0;
  // When set, also require log|v_{p+n}| >= log(growth_threshold) on the horizon.
  std::optional<double> growth_threshold;
  std::uint64_t scan_limit = 200000;
};

/// Increasing indices p_k with max_{n <= horizon_n} ||v_{p_k+n}^{-1} e_{p_k+n}||_{q_k}
/// below tol_k, where q_k = min(k, horizon_q). The schedule starts at the
/// requested tolerance and halves the gap to each accepted value, so it is
/// strictly decreasing.
struct PkWitness {
  std::vector<index_t> p;
  index_t horizon_n = 0;
  unsigned horizon_q = 1;
  // Natural logs of tol_k; the tolerances themselves leave the double range
  // after a few hundred indices.
  std::vector<wide_real> log_tol_schedule;
  double base_tol = 1.0;
  std::optional<double> growth_threshold;
  // Every index below this has been examined.
  index_t scanned_to = 1;

  unsigned q_for(std::size_t k) const;  // k is 1-based
};

PkWitness empty_pk_witness(const PkOptions& options);
PkWitness find_pk_witness(const SpaceSpec& space, const Weight& w, std::size_t count,
                          const PkOptions& options = {});

/// Scans forward until the witness holds an index >= min_index (or the
/// budget runs out) and returns it.
std::optional<index_t> extend_pk_witness(const SpaceSpec& space, const Weight& w, PkWitness& witness,
                                         index_t min_index, std::uint64_t budget);

CheckResult check_pk_witness(const SpaceSpec& space, const Weight& w, const PkWitness& witness);

struct MixingResult {
  bool pass = true;
  // Per q = 1..horizon_q: first n after which every value stays below tol.
  std::vector<index_t> threshold;
  std::vector<double> value_at_threshold;
  std::optional<std::pair<index_t, unsigned>> failure;  // (n, q)
  double failure_value = 0;
};

MixingResult check_mixing(const SpaceSpec& space, const Weight& w, index_t horizon_n = kDefaultHorizonN,
                          unsigned horizon_q = kDefaultHorizonQ, double tol = 1e-3);

struct SeminormBound {
  unsigned q = 1;
  double C = 1.0;
};

struct PropertyAWitness {
  std::vector<SeminormBound> per_r;  // index r-1
  index_t n_max = kDefaultHorizonN;
};

// ||e_n||_r^2 <= C ||e_n||_q on the horizon, for r = 1..r_max.
PropertyAWitness property_a_witness(const SpaceSpec& space, unsigned r_max = kDefaultHorizonQ,
                                    index_t n_max = kDefaultHorizonN);
CheckResult check_property_a(const SpaceSpec& space, const PropertyAWitness& witness);

// ||e_n||_r^m <= C ||e_n||_q on the horizon, by repeated squaring.
SeminormBound property_a_power(const SpaceSpec& space, unsigned m, unsigned r,
                               index_t n_max = kDefaultHorizonN);
bool check_power_bound(const SpaceSpec& space, unsigned m, unsigned r, SeminormBound bound, index_t n_max);

// ||v_{p_k+n}^{-1/m} e_{p_k+n}||_r along the witness, for m <= m_max and
// r <= horizon_q: each value obeys the Property A chain and the sequence
// decays from the first to the last k.
CheckResult root_decay_check(const SpaceSpec& space, const Weight& w, const PkWitness& pk,
                             unsigned m_max = kDefaultMMax, index_t horizon = kDefaultHorizonN);

struct PropertyBCondIII {
  unsigned m = 2;
  unsigned M = 1;
  unsigned r = 1;
  unsigned t = 1;
  unsigned rho = 1;
  unsigned tau = 1;
  double C2 = 1.0;
};

struct PropertyBWitness {
  unsigned cond_i_q = 1;
  std::vector<SeminormBound> cond_ii;  // index r-1
  std::vector<PropertyBCondIII> cond_iii;
  index_t n_max = kDefaultHorizonN;
};

PropertyBWitness property_b_witness(const SpaceSpec& space, unsigned m_max = kDefaultMMax,
                                    unsigned M_max = kDefaultBigMMax, unsigned r_max = kDefaultHorizonQ,
                                    index_t n_max = kDefaultHorizonN, unsigned t_max = kDefaultHorizonQ);
// Condition (iii) for one (m, M, r, t).
PropertyBCondIII property_b_iii(const SpaceSpec& space, unsigned m, unsigned M, unsigned r, unsigned t);
CheckResult check_property_b(const SpaceSpec& space, const PropertyBWitness& witness);

}  // namespace hyperforge
