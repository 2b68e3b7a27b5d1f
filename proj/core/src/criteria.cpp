#include "hyperforge/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

constexpr wide_real kSlack = 1e-12L;

bool is_neg_inf(wide_real x) { return std::isinf(x) && x < 0; }

// a <= b in log form with a relative slack for rounding.
bool log_le(wide_real a, wide_real b) {
  if (is_neg_inf(a)) return true;
  if (is_neg_inf(b)) return false;
  return a <= b + kSlack * std::max<wide_real>(1, std::fabs(b));
}

wide_real log_of(double x) { return std::log(static_cast<wide_real>(x)); }

template <class... Args>
std::string describe(Args&&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

// Closed-form Property A constant for a single squaring step.
SeminormBound square_step(const SpaceSpec& space, unsigned r) {
  switch (space.id()) {
    case SpaceId::entire_hadamard:
    case SpaceId::entire_cauchy:
      return {r * r, 1.0};
    default:
      return {r, 1.0};
  }
}

// max over n <= h of log ||v_{p+n}^{-1} e_{p+n}||_q.
wide_real window_value(const SpaceSpec& space, const Weight& w, unsigned q, index_t p, index_t h) {
  wide_real best = -std::numeric_limits<wide_real>::infinity();
  for (index_t n = 0; n <= h; ++n) best = std::max(best, log_normalized_basis(space, w, q, p + n));
  return best;
}

bool growth_ok(const Weight& w, const std::optional<double>& threshold, index_t p, index_t h) {
  if (!threshold) return true;
  const wide_real lt = log_of(*threshold);
  for (index_t n = 0; n <= h; ++n) {
    if (w.log_abs_v(p + n) < lt) return false;
  }
  return true;
}

}  // namespace

wide_real log_normalized_basis(const SpaceSpec& space, const Weight& w, unsigned q, index_t n) {
  const wide_real b = log_basis_seminorm(space, q, n);
  if (is_neg_inf(b)) return b;
  return b - w.log_abs_v(n);
}

unsigned PkWitness::q_for(std::size_t k) const {
  return static_cast<unsigned>(std::min<std::size_t>(std::max<std::size_t>(k, 1), horizon_q));
}

PkWitness empty_pk_witness(const PkOptions& options) {
  if (!(options.tol > 0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
  if (options.horizon_q < 1) throw Error(ErrorCode::invalid_argument, "horizon_q must be >= 1");
  PkWitness pk;
  pk.horizon_n = options.horizon_n;
  pk.horizon_q = options.horizon_q;
  pk.base_tol = options.tol;
  pk.growth_threshold = options.growth_threshold;
  pk.scanned_to = 1;
  return pk;
}

std::optional<index_t> extend_pk_witness(const SpaceSpec& space, const Weight& w, PkWitness& pk,
                                         index_t min_index, std::uint64_t budget) {
  if (!pk.p.empty() && pk.p.back() >= min_index) {
    const auto it = std::lower_bound(pk.p.begin(), pk.p.end(), min_index);
    return *it;
  }
  budget = effective_budget(budget);
  for (std::uint64_t step = 0; step < budget; ++step) {
    const index_t p = pk.scanned_to++;
    const std::size_t k = pk.p.size() + 1;
    const wide_real prev = pk.log_tol_schedule.empty() ? log_of(pk.base_tol) : pk.log_tol_schedule.back();
    const wide_real s = window_value(space, w, pk.q_for(k), p, pk.horizon_n);
    if (s < prev && growth_ok(w, pk.growth_threshold, p, pk.horizon_n)) {
      // log((e^s + e^prev) / 2)
      LogSumExp mid;
      mid.add(s);
      mid.add(prev);
      pk.p.push_back(p);
      pk.log_tol_schedule.push_back(mid.value() - std::numbers::ln2_v<wide_real>);
      if (p >= min_index) return p;
    }
  }
  return std::nullopt;
}

PkWitness find_pk_witness(const SpaceSpec& space, const Weight& w, std::size_t count,
                          const PkOptions& options) {
  if (space.product() != Product::coordinatewise) {
    throw Error(ErrorCode::inconsistent_space, "hypercyclicity witnesses are used with coordinatewise products");
  }
  PkWitness pk = empty_pk_witness(options);
  std::uint64_t budget = effective_budget(options.scan_limit);
  while (pk.p.size() < count) {
    const index_t before = pk.scanned_to;
    const index_t next = pk.p.empty() ? 1 : pk.p.back() + 1;
    if (!extend_pk_witness(space, w, pk, next, budget)) {
      throw Error(ErrorCode::search_exhausted,
                  describe("no index up to ", pk.scanned_to - 1, " qualifies after ", pk.p.size(),
                           " accepted; the weight likely fails the criterion at this horizon"));
    }
    budget -= std::min<std::uint64_t>(budget, pk.scanned_to - before);
  }
  return pk;
}

CheckResult check_pk_witness(const SpaceSpec& space, const Weight& w, const PkWitness& pk) {
  CheckResult res;
  if (pk.p.size() != pk.log_tol_schedule.size()) res.fail("tolerance schedule length mismatch");
  for (std::size_t k = 0; k < pk.p.size() && res.pass; ++k) {
    if (k > 0 && pk.p[k] <= pk.p[k - 1]) res.fail(describe("indices not increasing at k=", k + 1));
    if (k > 0 && pk.log_tol_schedule[k] >= pk.log_tol_schedule[k - 1]) {
      res.fail(describe("tolerances not decreasing at k=", k + 1));
    }
    if (pk.log_tol_schedule[k] > log_of(pk.base_tol)) res.fail("tolerance above the base tolerance");
    const unsigned q = pk.q_for(k + 1);
    for (index_t n = 0; n <= pk.horizon_n; ++n) {
      const wide_real val = log_normalized_basis(space, w, q, pk.p[k] + n);
      if (!(val < pk.log_tol_schedule[k])) {
        res.fail(describe("k=", k + 1, " n=", n, " q=", q, ": value not below tolerance"));
        break;
      }
    }
    if (!growth_ok(w, pk.growth_threshold, pk.p[k], pk.horizon_n)) {
      res.fail(describe("k=", k + 1, ": weight product below growth threshold"));
    }
  }
  return res;
}

MixingResult check_mixing(const SpaceSpec& space, const Weight& w, index_t horizon_n, unsigned horizon_q,
                          double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
  MixingResult res;
  const wide_real lt = log_of(tol);
  for (unsigned q = 1; q <= horizon_q; ++q) {
    // Threshold is one past the last n whose value reaches tol.
    index_t threshold = 0;
    for (index_t n = 0; n <= horizon_n; ++n) {
      if (!(log_normalized_basis(space, w, q, n) < lt)) threshold = n + 1;
    }
    if (threshold > horizon_n) {
      res.pass = false;
      if (!res.failure) {
        res.failure = std::make_pair(horizon_n, q);
        res.failure_value = Certificate::decode(log_normalized_basis(space, w, q, horizon_n));
      }
    }
    res.threshold.push_back(threshold);
    res.value_at_threshold.push_back(
        threshold <= horizon_n ? Certificate::decode(log_normalized_basis(space, w, q, threshold))
                               : res.failure_value);
  }
  return res;
}

PropertyAWitness property_a_witness(const SpaceSpec& space, unsigned r_max, index_t n_max) {
  PropertyAWitness wit;
  wit.n_max = n_max;
  for (unsigned r = 1; r <= r_max; ++r) wit.per_r.push_back(square_step(space, r));
  const CheckResult check = check_property_a(space, wit);
  if (!check.pass) throw Error(ErrorCode::no_witness, check.detail);
  return wit;
}

CheckResult check_property_a(const SpaceSpec& space, const PropertyAWitness& wit) {
  CheckResult res;
  for (std::size_t i = 0; i < wit.per_r.size() && res.pass; ++i) {
    const unsigned r = static_cast<unsigned>(i + 1);
    if (!check_power_bound(space, 2, r, wit.per_r[i], wit.n_max)) {
      res.fail(describe("Property A fails at r=", r, " q=", wit.per_r[i].q));
    }
  }
  return res;
}

bool check_power_bound(const SpaceSpec& space, unsigned m, unsigned r, SeminormBound bound, index_t n_max) {
  const wide_real lc = log_of(bound.C);
  for (index_t n = 0; n <= n_max; ++n) {
    const wide_real lhs = m * log_basis_seminorm(space, r, n);
    const wide_real rhs = lc + log_basis_seminorm(space, bound.q, n);
    if (!log_le(lhs, rhs)) return false;
  }
  return true;
}

SeminormBound property_a_power(const SpaceSpec& space, unsigned m, unsigned r, index_t n_max) {
  if (m < 1 || r < 1) throw Error(ErrorCode::invalid_argument, "m and r must be >= 1");
  // chain[i] bounds the 2^i-th power.
  std::vector<SeminormBound> chain{{r, 1.0}};
  while ((1u << (chain.size() - 1)) < m) {
    const SeminormBound prev = chain.back();
    const SeminormBound step = square_step(space, prev.q);
    chain.push_back({step.q, prev.C * prev.C * step.C});
  }
  SeminormBound out = chain.back();
  if ((1u << (chain.size() - 1)) != m) {
    // 2^N < m < 2^{N+1}: bounded by the larger of the two neighbouring powers.
    out.C = std::max(out.C, chain[chain.size() - 2].C);
  }
  if (!check_power_bound(space, m, r, out, n_max)) {
    throw Error(ErrorCode::no_witness, describe("power bound fails for m=", m, " r=", r));
  }
  return out;
}

CheckResult root_decay_check(const SpaceSpec& space, const Weight& w, const PkWitness& pk, unsigned m_max,
                             index_t horizon) {
  CheckResult res;
  if (pk.p.empty()) {
    res.fail("empty witness");
    return res;
  }
  const index_t h = std::min(horizon, pk.horizon_n);
  for (unsigned m = 1; m <= m_max && res.pass; ++m) {
    for (unsigned r = 1; r <= pk.horizon_q && res.pass; ++r) {
      const SeminormBound pb = property_a_power(space, m, r);
      std::vector<wide_real> per_k;
      for (std::size_t k = 0; k < pk.p.size() && res.pass; ++k) {
        wide_real best = -std::numeric_limits<wide_real>::infinity();
        for (index_t n = 0; n <= h; ++n) {
          const index_t idx = pk.p[k] + n;
          const wide_real val = log_basis_seminorm(space, r, idx) - w.log_abs_v(idx) / m;
          const wide_real chain = (log_of(pb.C) + log_normalized_basis(space, w, pb.q, idx)) / m;
          if (!log_le(val, chain)) {
            res.fail(describe("m=", m, " r=", r, " k=", k + 1, " n=", n, ": chain bound violated"));
            break;
          }
          best = std::max(best, val);
        }
        per_k.push_back(best);
      }
      if (res.pass && per_k.size() > 1 && !is_neg_inf(per_k.front()) && !(per_k.back() < per_k.front())) {
        res.fail(describe("m=", m, " r=", r, ": no decay along the witness"));
      }
    }
  }
  return res;
}

PropertyBCondIII property_b_iii(const SpaceSpec& space, unsigned m, unsigned M, unsigned r, unsigned t) {
  PropertyBCondIII c{m, M, r, t, 1, 1, 1.0};
  if (space.id() == SpaceId::entire_cauchy) {
    c.rho = t;
    c.tau = r;
    c.C2 = std::pow(static_cast<double>(t), static_cast<double>(M));
  }
  return c;
}

PropertyBWitness property_b_witness(const SpaceSpec& space, unsigned m_max, unsigned M_max, unsigned r_max,
                                    index_t n_max, unsigned t_max) {
  if (space.product() != Product::cauchy) {
    throw Error(ErrorCode::inconsistent_space, "Property B concerns spaces with the Cauchy product");
  }
  if (space.id() == SpaceId::omega_cauchy) {
    throw Error(ErrorCode::no_witness,
                "omega with the Cauchy product does not satisfy condition (i) of Property B: "
                "no seminorm is positive on every e_n");
  }
  PropertyBWitness wit;
  wit.n_max = n_max;
  wit.cond_i_q = 1;
  for (unsigned r = 1; r <= r_max; ++r) {
    wit.cond_ii.push_back(space.id() == SpaceId::entire_cauchy ? SeminormBound{r, 1.0} : SeminormBound{1, 1.0});
  }
  for (unsigned m = 2; m <= m_max; ++m) {
    for (unsigned M = 1; M <= M_max; ++M) {
      for (unsigned r = 1; r <= r_max; ++r) {
        for (unsigned t = 1; t <= t_max; ++t) wit.cond_iii.push_back(property_b_iii(space, m, M, r, t));
      }
    }
  }
  const CheckResult check = check_property_b(space, wit);
  if (!check.pass) throw Error(ErrorCode::no_witness, check.detail);
  return wit;
}

CheckResult check_property_b(const SpaceSpec& space, const PropertyBWitness& wit) {
  CheckResult res;
  const index_t N = wit.n_max;
  for (index_t n = 0; n <= N; ++n) {
    if (is_neg_inf(log_basis_seminorm(space, wit.cond_i_q, n))) {
      res.fail(describe("condition (i): ||e_", n, "||_", wit.cond_i_q, " = 0"));
      return res;
    }
  }
  for (std::size_t i = 0; i < wit.cond_ii.size(); ++i) {
    const unsigned r = static_cast<unsigned>(i + 1);
    const SeminormBound b = wit.cond_ii[i];
    for (index_t n = 0; n <= N && res.pass; ++n) {
      for (index_t k = 0; k <= N; ++k) {
        const wide_real lhs = log_basis_seminorm(space, r, n) + log_basis_seminorm(space, r, k);
        const wide_real rhs = log_of(b.C) + log_basis_seminorm(space, b.q, n + k);
        if (!log_le(lhs, rhs)) {
          res.fail(describe("condition (ii): r=", r, " n=", n, " k=", k));
          break;
        }
      }
    }
    if (!res.pass) return res;
  }
  for (const PropertyBCondIII& c : wit.cond_iii) {
    for (index_t n = c.M; n <= N && res.pass; ++n) {
      for (index_t k = 0; k <= c.M; ++k) {
        const wide_real lhs = log_basis_seminorm(space, c.t, c.m * n) + log_basis_seminorm(space, c.r, n - k);
        const wide_real rhs = log_of(c.C2) + log_basis_seminorm(space, c.tau, c.m * n) / c.m +
                              log_basis_seminorm(space, c.rho, c.m * n - k);
        if (!log_le(lhs, rhs)) {
          res.fail(describe("condition (iii): m=", c.m, " M=", c.M, " r=", c.r, " t=", c.t, " n=", n, " k=", k));
          break;
        }
      }
    }
    if (!res.pass) return res;
  }
  return res;
}

}  // namespace hyperforge
