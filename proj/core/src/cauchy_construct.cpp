#include "hyperforge/cauchy_construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hyperforge/error.hpp"
#include "hyperforge/shift.hpp"

namespace hyperforge {

namespace {

constexpr wide_real kNegInf = -std::numeric_limits<wide_real>::infinity();

wide_real log_two_pow_neg(round_t r) { return -static_cast<wide_real>(r) * std::numbers::ln2_v<wide_real>; }

wide_real log_index(index_t n) { return std::log(static_cast<wide_real>(n)); }

std::string label(const CauchyRound& round) {
  std::ostringstream os;
  os << "round " << round.r << " = (" << round.m << ", " << round.l;
  if (round.nu > 0) os << ", " << round.nu;
  os << ")";
  return os.str();
}

// log(exp(a) + exp(b))
wide_real log_add(wide_real a, wide_real b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  const wide_real hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

index_t next_lower_bound(const CauchyBundle& bundle) {
  if (bundle.rounds.empty()) return 2;  // above a_0 = 1 and p_0 = e_0
  const CauchyRound& prev = bundle.rounds.back();
  index_t n = std::max(prev.p.max_index(), prev.a);
  n = std::max(n, static_cast<index_t>(prev.m) * prev.gamma);
  return n + 1;
}

}  // namespace

Triple cauchy_round_indices(const CauchyBundle& bundle, round_t r) {
  if (bundle.algebrable()) return TriplePairing::triple_of(r);
  const Pair p = PairingOrder::pair_of(r);
  return {p.m, p.l, 0};
}

bool CauchyBundle::certified() const {
  return std::all_of(rounds.begin(), rounds.end(), [](const CauchyRound& r) { return r.certified(); });
}

FiniteSeq CauchyBundle::generator(unsigned k) const {
  FiniteSeq x;
  for (const CauchyRound& round : rounds) {
    if (k == 0 || !algebrable()) {
      x += round.p;
    } else {
      const std::complex<double> lambda = round.lambda_column.at(k - 1);
      if (lambda != std::complex<double>{}) x += round.p.scaled(WideComplex(lambda));
    }
  }
  if (!rounds.empty()) x.set_truncation_horizon(next_lower_bound(*this));
  return x;
}

std::vector<FiniteSeq> CauchyBundle::generator_list() const {
  if (!algebrable()) return {generator(0)};
  std::vector<FiniteSeq> out;
  for (unsigned k = 1; k <= generators; ++k) out.push_back(generator(k));
  return out;
}

const FiniteSeq& BlockPowers::power(std::size_t i, unsigned k) {
  std::vector<FiniteSeq>& list = powers_.at(i - 1);
  while (list.size() <= k) list.push_back(cauchy_product(list.back(), list[1]));
  return list[k];
}

FiniteSeq BlockPowers::product(const MultiIndex& alpha) {
  FiniteSeq out;
  bool started = false;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    const FiniteSeq& f = power(i + 1, alpha[i]);
    out = started ? cauchy_product(out, f) : f;
    started = true;
  }
  return started ? out : FiniteSeq::basis(0);
}

void certify_cauchy_round(const CauchyBundle& prefix, CauchyRound& round, BlockPowers& powers) {
  const round_t r = round.r;
  const unsigned m = round.m;
  const unsigned q = static_cast<unsigned>(r);
  const wide_real bound = log_two_pow_neg(r);
  const std::string name = label(round);
  const bool alg = prefix.algebrable();
  const std::string tag = alg ? "F." : "D.";

  round.D1 = Certificate::strict_less(log_seminorm_upper(prefix.space, q, round.p), bound,
                                      name + " " + tag + "1: ||p_r||_r");

  // Structural: max index of P^alpha is sum_i alpha_i max_index(p_i).
  std::vector<index_t> top;
  for (const CauchyRound& prev : prefix.rounds) top.push_back(prev.p.max_index());
  top.push_back(round.p.max_index());
  round.D2 = Certificate{};
  round.D2.log_bound = log_index(round.a);
  round.D2.detail = name + " " + tag + "2: nothing to check";
  for (unsigned mu = 1; mu <= m; ++mu) {
    for (round_t t = 1; t <= r; ++t) {
      if (mu == m && t == r) {
        for (const MultiIndex& alpha : enumerate_multi_indices(mu, static_cast<unsigned>(t))) {
          if (alpha.back() == m) continue;
          index_t idx = 0;
          for (std::size_t i = 0; i < alpha.size(); ++i) idx += alpha[i] * top[i];
          round.D2.absorb(Certificate::strict_less(log_index(idx), log_index(round.a), name + " " + tag + "2"));
        }
      } else {
        for (const MultiIndex& alpha : enumerate_multi_indices(mu, static_cast<unsigned>(t))) {
          index_t idx = 0;
          for (std::size_t i = 0; i < alpha.size(); ++i) idx += alpha[i] * top[i];
          round.D2.absorb(Certificate::strict_less(log_index(idx), log_index(round.a), name + " " + tag + "2"));
        }
      }
    }
  }

  const FiniteSeq& y = prefix.targets.at(round.target_id);
  {
    FiniteSeq diff = backward_iterate(prefix.weight, cauchy_power(round.p, m), round.a);
    diff -= y;
    round.D3 = Certificate::strict_less(log_seminorm_upper(prefix.space, q, diff), bound,
                                        name + " " + tag + "3: ||T^{a_r} p_r^m - y||_r");
  }

  round.D4 = Certificate{};
  round.D4.log_bound = bound;
  round.D4.detail = name + " " + tag + "4: no earlier rounds";
  powers.push(round.p);
  unsigned mu_max = 0;
  for (const CauchyRound& prev : prefix.rounds) mu_max = std::max(mu_max, prev.m);
  for (unsigned mu = 1; mu <= mu_max; ++mu) {
    const std::vector<MultiIndex> alphas = enumerate_multi_indices(mu, static_cast<unsigned>(r));
    std::vector<FiniteSeq> products;
    products.reserve(alphas.size());
    for (const MultiIndex& alpha : alphas) products.push_back(powers.product(alpha));
    for (round_t t = 1; t < r; ++t) {
      const CauchyRound& earlier = prefix.rounds[t - 1];
      if (mu > earlier.m) continue;
      wide_real total = kNegInf;
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        const FiniteSeq moved = backward_iterate(prefix.weight, products[i], earlier.a);
        const wide_real v = log_seminorm_upper(prefix.space, q, moved);
        std::ostringstream os;
        os << name << " " << tag << "4: t=" << t << " mu=" << mu;
        if (alg) {
          round.D4.absorb(Certificate::strict_less(v, bound, os.str()));
        } else {
          total = log_add(total, std::log(static_cast<wide_real>(multinomial(mu, alphas[i]))) + v);
        }
      }
      if (!alg) {
        std::ostringstream os;
        os << name << " " << tag << "4: t=" << t << " mu=" << mu << " (multinomial sum)";
        round.D4.absorb(Certificate::strict_less(total, bound, os.str()));
      }
    }
  }
  powers.pop();

  // a_r <= m gamma_r here; m gamma_r < eta_{r+1} is checked when the next round exists.
  const index_t top_index = static_cast<index_t>(m) * round.gamma;
  round.separation = Certificate::strict_less(log_index(round.a), log_index(top_index) + 1e-18L,
                                              name + ": a_r <= m gamma_r");
  round.separation.pass = round.a <= top_index;
}

CauchyBuilder::CauchyBuilder(SpaceSpec space, Weight weight, std::vector<FiniteSeq> targets, CauchyOptions options)
    : options_(options) {
  if (space.product() != Product::cauchy) {
    throw Error(ErrorCode::inconsistent_space, "this construction needs the Cauchy product");
  }
  TargetSchedule check(targets);
  (void)check;
  bundle_.space = space;
  bundle_.weight = std::move(weight);
  bundle_.targets = std::move(targets);
  bundle_.generators = options.generators;
  if (options.generators > 0) lambda_.emplace(options.generators);
  if (options.check_prerequisites) check_block_prerequisites(bundle_.space, bundle_.weight, 2, 1);
}

const CauchyRound& CauchyBuilder::build_next() {
  const round_t r = bundle_.rounds.size() + 1;
  const Triple idx = cauchy_round_indices(bundle_, r);
  const TargetSchedule schedule(bundle_.targets);
  CauchyRound round;
  round.r = r;
  round.m = idx.m;
  round.l = idx.l;
  round.nu = idx.nu;
  round.target_id = schedule.target_id(idx.l);
  if (lambda_) {
    round.lambda_element = LambdaMatrix::element_index(idx.nu);
    round.lambda_column = lambda_->column(idx.nu);
  }
  round.N = next_lower_bound(bundle_);
  const FiniteSeq& y = bundle_.targets[round.target_id];

  wide_real log_eps = log_two_pow_neg(r);
  unsigned rho = static_cast<unsigned>(r);
  BlockOptions bo;
  bo.budget = options_.block_budget;
  bo.check_prerequisites = false;
  for (unsigned step = 0; step <= options_.tighten_budget; ++step) {
    const BlockSolveResult res = solve_building_block_log(bundle_.space, bundle_.weight, y, round.m, rho, round.N,
                                                          log_eps, bo);
    round.eta = res.eta;
    round.gamma = res.gamma;
    round.a = res.a();
    round.b = res.b;
    round.c = res.c;
    round.p = res.p;
    round.log_eps = log_eps;
    round.rho = rho;
    round.tighten_steps = step;
    round.C1 = res.C1;
    round.C3 = res.C3;
    round.C2_residual = res.C2_residual;
    certify_cauchy_round(bundle_, round, powers_);
    if (round.certified()) {
      if (!bundle_.rounds.empty()) {
        CauchyRound& prev = bundle_.rounds.back();
        const index_t top = static_cast<index_t>(prev.m) * prev.gamma;
        prev.separation = Certificate::strict_less(log_index(top), log_index(round.eta), label(prev) +
                                                   ": a_r <= m gamma_r < eta_{r+1}");
        prev.separation.pass = prev.a <= top && top < round.eta;
      }
      powers_.push(round.p);
      bundle_.rounds.push_back(std::move(round));
      return bundle_.rounds.back();
    }
    // Shrink eps by the worst observed ratio (at least halving) and raise rho.
    wide_real excess = 0;
    for (const Certificate* c : {&round.D1, &round.D3, &round.D4}) {
      if (!c->pass) excess = std::max(excess, c->log_value - c->log_bound);
    }
    log_eps -= std::max(std::numbers::ln2_v<wide_real>, excess + std::numbers::ln2_v<wide_real>);
    rho += 1;
    // The rejected candidate is skipped; the scan continues right after it.
    bo.resume_from = std::make_pair(round.gamma, round.eta + 1);
  }
  std::ostringstream os;
  os << label(round) << ": tail inequalities still fail after " << options_.tighten_budget << " tightening steps";
  throw Error(ErrorCode::search_exhausted, os.str());
}

const CauchyBundle& CauchyBuilder::run() {
  while (bundle_.rounds.size() < options_.rounds) build_next();
  return bundle_;
}

CauchyBundle build_generator_cauchy(const SpaceSpec& space, const Weight& w, const std::vector<FiniteSeq>& targets,
                                    unsigned rounds) {
  CauchyOptions o;
  o.rounds = rounds;
  CauchyBuilder builder(space, w, targets, o);
  return builder.run();
}

CauchyBundle build_algebrable_cauchy(const SpaceSpec& space, const Weight& w,
                                     const std::vector<FiniteSeq>& targets, unsigned K, unsigned rounds) {
  if (K < 1) throw Error(ErrorCode::invalid_argument, "number of generators must be >= 1");
  CauchyOptions o;
  o.rounds = rounds;
  o.generators = K;
  CauchyBuilder builder(space, w, targets, o);
  return builder.run();
}

CheckResult revalidate(const CauchyBundle& bundle) {
  CheckResult res;
  CauchyBundle prefix = bundle;
  prefix.rounds.clear();
  BlockPowers powers;
  std::optional<LambdaMatrix> lambda;
  if (bundle.algebrable()) lambda.emplace(bundle.generators);
  const TargetSchedule schedule(bundle.targets);
  for (std::size_t i = 0; i < bundle.rounds.size(); ++i) {
    const CauchyRound& stored = bundle.rounds[i];
    const round_t r = i + 1;
    std::ostringstream where;
    where << "round " << r << ": ";
    const Triple idx = cauchy_round_indices(bundle, r);
    if (stored.r != r || stored.m != idx.m || stored.l != idx.l || stored.nu != idx.nu) {
      res.fail(where.str() + "pairing mismatch");
    }
    if (stored.target_id != schedule.target_id(idx.l)) res.fail(where.str() + "target schedule mismatch");
    if (lambda) {
      const auto& col = lambda->column(idx.nu);
      for (std::size_t k = 0; k < col.size(); ++k) {
        if (k >= stored.lambda_column.size() || std::abs(col[k] - stored.lambda_column[k]) > 1e-15) {
          res.fail(where.str() + "coefficient column mismatch");
          break;
        }
      }
    }
    if (stored.N != next_lower_bound(prefix) || stored.eta < stored.N) {
      res.fail(where.str() + "window does not start above earlier supports");
    }
    const FiniteSeq& y = bundle.targets.at(stored.target_id);
    const index_t s = y.max_index();
    if (stored.gamma <= stored.eta + 2 * s) res.fail(where.str() + "gamma <= eta + 2s");
    if (stored.a != stored.eta + static_cast<index_t>(stored.m - 1) * stored.gamma) {
      res.fail(where.str() + "a_r != eta + (m-1) gamma");
    }
    // Block identity C.2 and the solver checks.
    BlockSolveResult block;
    block.m = stored.m;
    block.eta = stored.eta;
    block.gamma = stored.gamma;
    block.b = stored.b;
    block.c = stored.c;
    if (block_c2_residual(bundle.weight, y, block) > 1e-12L) res.fail(where.str() + "C.2 residual above 1e-12");
    const FiniteSeq p = block_point(stored.c, stored.m == 1 ? WideComplex{} : stored.b, stored.eta, stored.gamma);
    if (max_relative_difference(p, stored.p) > 1e-12L) res.fail(where.str() + "p differs from q + b e_gamma");
    const wide_real log_eps = stored.log_eps;
    if (!(log_seminorm_upper(bundle.space, stored.rho, stored.p) < log_eps)) {
      res.fail(where.str() + "C.1 fails");
    }
    if (stored.m > 1 && !stored.b.is_zero() &&
        !(block_c3_log_value(bundle.space, bundle.weight, stored.m, stored.rho, stored.b, stored.eta, stored.gamma) <
          log_eps)) {
      res.fail(where.str() + "C.3 fails");
    }
    CauchyRound fresh = stored;
    certify_cauchy_round(prefix, fresh, powers);
    for (const Certificate* c : {&fresh.D1, &fresh.D2, &fresh.D3, &fresh.D4}) {
      if (!c->pass) res.fail(c->detail);
    }
    if (stored.D1.pass != fresh.D1.pass || stored.D2.pass != fresh.D2.pass || stored.D3.pass != fresh.D3.pass ||
        stored.D4.pass != fresh.D4.pass || !stored.C1.pass || !stored.C3.pass || !stored.separation.pass) {
      res.fail(where.str() + "stored verdicts disagree with the recomputation");
    }
    if (i + 1 < bundle.rounds.size()) {
      const index_t top = static_cast<index_t>(stored.m) * stored.gamma;
      if (!(stored.a <= top && top < bundle.rounds[i + 1].eta)) res.fail(where.str() + "separation fails");
    }
    powers.push(stored.p);
    prefix.rounds.push_back(stored);
  }
  return res;
}

double tail_bound(unsigned mu_max, const std::vector<double>& C, round_t r) {
  if (C.size() < mu_max) throw Error(ErrorCode::invalid_argument, "one constant per degree is required");
  long double total = 0;
  for (unsigned mu = 1; mu <= mu_max; ++mu) {
    const long double cm = C[mu - 1];
    if (cm == 0) continue;
    long double prev = 0;
    for (round_t t = r + 1;; ++t) {
      const long double card = static_cast<long double>(multi_index_count(mu, static_cast<unsigned>(t)));
      const long double term = card * cm * std::pow(static_cast<long double>(t), static_cast<long double>(mu)) *
                               std::pow(2.0L, -static_cast<long double>(t));
      total += term;
      if (term < prev && term < 1e-18L) break;
      prev = term;
    }
  }
  return static_cast<double>(total);
}

std::vector<double> tail_constants(const AlgebraElement& z) {
  const unsigned s = z.generators();
  std::vector<double> out;
  for (unsigned mu = 1; mu <= z.degree(); ++mu) {
    double mx = 0;
    for (const auto& [beta, c] : z.homogeneous(mu)) mx = std::max(mx, std::abs(c));
    out.push_back(std::pow(1.0 + mu, static_cast<double>(s)) * mx);
  }
  return out;
}

}  // namespace hyperforge
