#include "hyperforge/coord_construct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperforge/error.hpp"
#include "hyperforge/shift.hpp"

namespace hyperforge {

namespace {

wide_real log_two_pow_neg(round_t r) { return -static_cast<wide_real>(r) * std::numbers::ln2_v<wide_real>; }

std::string round_label(round_t r, Pair p) {
  std::ostringstream os;
  os << "round " << r << " = (" << p.m << ", " << p.l << ")";
  return os.str();
}

wide_real window_log_value(const SpaceSpec& space, const Weight& w, unsigned q, index_t p, index_t h) {
  wide_real best = -std::numeric_limits<wide_real>::infinity();
  for (index_t n = 0; n <= h; ++n) best = std::max(best, log_normalized_basis(space, w, q, p + n));
  return best;
}

// Necessary conditions for A.1 and A.2 from single coordinates: every
// builtin coordinatewise seminorm satisfies ||x||_q >= |x_n| ||e_n||_q.
// Lets the scan skip most candidates without building blocks.
class CandidateFilter {
 public:
  CandidateFilter(const CoordBundle& bundle, const FiniteSeq& y, unsigned m, round_t r)
      : space_(bundle.space), w_(bundle.weight), m_(m), q_(static_cast<unsigned>(r)),
        d_(PairingOrder::max_degree_before(r)), bound_(log_two_pow_neg(r) + 1e-9L) {
    for (const auto& [n, c] : y) log_y_.emplace_back(n, c.log_abs());
    for (const CoordRound& prev : bundle.rounds) earlier_.push_back(prev.a);
  }

  bool might_pass(index_t a) {
    const std::size_t count = 1 + earlier_.size() * d_;
    if (!holds(last_failed_, a)) return false;
    for (std::size_t c = 0; c < count; ++c) {
      if (c == last_failed_) continue;
      if (!holds(c, a)) {
        last_failed_ = c;
        return false;
      }
    }
    return true;
  }

 private:
  // Condition 0 is A.1; condition 1 + i*d + (nu-1) is A.2 for t = i + 1.
  bool holds(std::size_t c, index_t a) const {
    if (c == 0) {
      for (const auto& [n, ly] : log_y_) {
        const wide_real lb = (ly - w_.log_abs_ratio(n, a)) / m_;
        if (lb + log_basis_seminorm(space_, q_, n + a) >= bound_) return false;
      }
      return true;
    }
    const std::size_t i = (c - 1) / d_;
    const unsigned nu = static_cast<unsigned>((c - 1) % d_) + 1;
    const index_t at = earlier_[i];
    for (const auto& [n, ly] : log_y_) {
      const index_t k = n + a;
      if (k < at) continue;
      const wide_real lb = nu * (ly - w_.log_abs_ratio(n, a)) / m_ + w_.log_abs_ratio(k - at, at);
      if (lb + log_basis_seminorm(space_, q_, k - at) >= bound_) return false;
    }
    return true;
  }

  const SpaceSpec& space_;
  const Weight& w_;
  unsigned m_;
  unsigned q_;
  unsigned d_;
  wide_real bound_;
  std::vector<std::pair<index_t, wide_real>> log_y_;
  std::vector<index_t> earlier_;
  std::size_t last_failed_ = 0;
};

}  // namespace

bool CoordBundle::certified() const {
  return std::all_of(rounds.begin(), rounds.end(), [](const CoordRound& r) { return r.certified(); });
}

FiniteSeq CoordBundle::generator(unsigned k) const {
  FiniteSeq x;
  for (const CoordRound& round : rounds) {
    if (k == 0 || round.generator == k) x += round.block;
  }
  if (!rounds.empty()) {
    const CoordRound& last = rounds.back();
    x.set_truncation_horizon(last.block.max_index() + 1);
  }
  return x;
}

std::vector<FiniteSeq> CoordBundle::generators() const {
  std::vector<FiniteSeq> out;
  for (unsigned k = 1; k <= classes; ++k) out.push_back(generator(k));
  return out;
}

CoordRound certify_round(const CoordBundle& bundle, round_t r, index_t a) {
  if (r < 1 || r > bundle.rounds.size() + 1) throw Error(ErrorCode::invalid_argument, "round out of order");
  const TargetSchedule schedule = bundle.schedule();
  const Pair p = PairingOrder::pair_of(r);
  CoordRound out;
  out.r = r;
  out.m = p.m;
  out.l = p.l;
  out.target_id = schedule.target_id(p.l);
  out.generator = schedule.class_of(p.l);
  out.a = a;
  out.block = root_power_block(bundle.weight, schedule.target(p.l), a, 1, p.m);

  const unsigned q = static_cast<unsigned>(r);
  const wide_real bound = log_two_pow_neg(r);
  out.A1 = Certificate::strict_less(log_seminorm_upper(bundle.space, q, out.block), bound,
                                    round_label(r, p) + ": block seminorm");

  out.A2 = Certificate{};
  out.A2.log_bound = bound;
  out.A2.detail = round_label(r, p) + ": no earlier rounds";
  const unsigned d = PairingOrder::max_degree_before(r);
  for (unsigned nu = 1; nu <= d; ++nu) {
    const FiniteSeq power = coordinatewise_power(out.block, nu);
    for (round_t t = 1; t < r; ++t) {
      const index_t at = bundle.rounds[t - 1].a;
      const FiniteSeq moved = backward_iterate(bundle.weight, power, at);
      std::ostringstream os;
      os << round_label(r, p) << ": T^{a_" << t << "} block^" << nu;
      out.A2.absorb(Certificate::strict_less(log_seminorm_upper(bundle.space, q, moved), bound, os.str()));
    }
  }

  if (r == 1) {
    out.A3 = Certificate::strict_less(0, std::log(static_cast<wide_real>(a) + 1), "first round");
  } else {
    const CoordRound& prev = bundle.rounds[r - 2];
    const index_t s = schedule.support_end(prev.l);
    const wide_real gap = a > prev.a ? static_cast<wide_real>(a - prev.a) : 0;
    std::ostringstream os;
    os << round_label(r, p) << ": a_r - a_{r-1} = " << (a > prev.a ? a - prev.a : 0) << " against s = " << s;
    out.A3 = Certificate::strict_less(std::log(static_cast<wide_real>(s)), std::log(gap), os.str());
  }
  return out;
}

CoordBuilder::CoordBuilder(SpaceSpec space, Weight weight, std::vector<FiniteSeq> targets, CoordOptions options)
    : options_(options), schedule_(targets, options.classes), pk_(empty_pk_witness(options.pk)) {
  if (space.product() != Product::coordinatewise) {
    throw Error(ErrorCode::inconsistent_space, "coordinatewise construction needs a coordinatewise product");
  }
  bundle_.space = space;
  bundle_.weight = std::move(weight);
  bundle_.targets = std::move(targets);
  bundle_.classes = options.classes;
  bundle_.pk_options = options.pk;
  if (options.seed) {
    const PkWitness& seed = *options.seed;
    if (seed.horizon_n != options.pk.horizon_n || seed.horizon_q != options.pk.horizon_q ||
        seed.base_tol != options.pk.tol || seed.growth_threshold != options.pk.growth_threshold) {
      throw Error(ErrorCode::invalid_argument, "seed witness was computed with different options");
    }
    const CheckResult ok = check_pk_witness(bundle_.space, bundle_.weight, seed);
    if (!ok.pass) throw Error(ErrorCode::certificate_failed, "seed witness: " + ok.detail);
    pk_ = seed;
  }
}

const CoordRound& CoordBuilder::select_next() {
  const round_t r = bundle_.rounds.size() + 1;
  const Pair p = PairingOrder::pair_of(r);
  index_t lower = 1;
  if (r > 1) {
    const CoordRound& prev = bundle_.rounds.back();
    lower = prev.a + schedule_.support_end(prev.l) + 1;
  }
  CandidateFilter filter(bundle_, schedule_.target(p.l), p.m, r);
  const std::uint64_t budget = effective_budget(options_.scan_budget);
  std::uint64_t spent = 0;
  while (spent < budget) {
    const index_t before = pk_.scanned_to;
    const std::optional<index_t> cand = extend_pk_witness(bundle_.space, bundle_.weight, pk_, lower, budget - spent);
    spent += pk_.scanned_to - before;
    if (!cand) break;
    ++spent;
    if (filter.might_pass(*cand)) {
      CoordRound round = certify_round(bundle_, r, *cand);
      if (round.certified()) {
        const auto it = std::lower_bound(pk_.p.begin(), pk_.p.end(), *cand);
        round.pk_position = static_cast<std::size_t>(it - pk_.p.begin());
        round.log_pk_tol = pk_.log_tol_schedule[round.pk_position];
        bundle_.rounds.push_back(std::move(round));
        return bundle_.rounds.back();
      }
    }
    lower = *cand + 1;
  }
  std::ostringstream os;
  os << round_label(r, p) << ": no admissible a_r up to index " << lower << " within the search budget";
  throw Error(ErrorCode::search_exhausted, os.str());
}

const CoordBundle& CoordBuilder::run() {
  while (bundle_.rounds.size() < options_.rounds) select_next();
  return bundle_;
}

CoordBundle build_generator(const SpaceSpec& space, const Weight& w, const std::vector<FiniteSeq>& targets,
                            unsigned rounds, const PkOptions& pk) {
  return build_algebrable(space, w, targets, 1, rounds, pk);
}

CoordBundle build_algebrable(const SpaceSpec& space, const Weight& w, const std::vector<FiniteSeq>& targets,
                             unsigned K, unsigned rounds, const PkOptions& pk) {
  CoordOptions options;
  options.rounds = rounds;
  options.classes = K;
  options.pk = pk;
  CoordBuilder builder(space, w, targets, options);
  return builder.run();
}

CheckResult revalidate(const CoordBundle& bundle) {
  CheckResult res;
  CoordBundle prefix = bundle;
  prefix.rounds.clear();
  const TargetSchedule schedule = bundle.schedule();
  wide_real prev_tol = std::log(static_cast<wide_real>(bundle.pk_options.tol));
  std::size_t prev_pos = 0;
  for (const CoordRound& stored : bundle.rounds) {
    const round_t r = prefix.rounds.size() + 1;
    std::ostringstream where;
    where << "round " << r << ": ";
    if (stored.r != r) res.fail(where.str() + "round number out of sequence");
    const Pair p = PairingOrder::pair_of(r);
    if (stored.m != p.m || stored.l != p.l) res.fail(where.str() + "pairing mismatch");
    if (stored.target_id != schedule.target_id(p.l) || stored.generator != schedule.class_of(p.l)) {
      res.fail(where.str() + "target schedule mismatch");
    }
    const CoordRound fresh = certify_round(prefix, r, stored.a);
    if (max_relative_difference(fresh.block, stored.block) > 1e-12L ||
        fresh.block.coeffs().size() != stored.block.coeffs().size()) {
      res.fail(where.str() + "stored block differs from the recomputed block");
    }
    if (!fresh.A1.pass) res.fail(fresh.A1.detail + " not below 2^-r");
    if (!fresh.A2.pass) res.fail(fresh.A2.detail + " not below 2^-r");
    if (!fresh.A3.pass) res.fail(fresh.A3.detail);
    if (stored.A1.pass != fresh.A1.pass || stored.A2.pass != fresh.A2.pass || stored.A3.pass != fresh.A3.pass) {
      res.fail(where.str() + "stored verdicts disagree with the recomputation");
    }
    // Witness condition at a_r with the recorded tolerance.
    const PkOptions& o = bundle.pk_options;
    const unsigned qk = static_cast<unsigned>(std::min<std::size_t>(stored.pk_position + 1, o.horizon_q));
    if (r > 1 && (stored.pk_position <= prev_pos || !(stored.log_pk_tol < prev_tol))) {
      res.fail(where.str() + "witness positions or tolerances not monotone");
    }
    if (!(stored.log_pk_tol <= std::log(static_cast<wide_real>(o.tol))) ||
        !(window_log_value(bundle.space, bundle.weight, qk, stored.a, o.horizon_n) < stored.log_pk_tol)) {
      res.fail(where.str() + "a_r does not meet the hypercyclicity witness tolerance");
    }
    prev_tol = stored.log_pk_tol;
    prev_pos = stored.pk_position;
    prefix.rounds.push_back(stored);
  }
  return res;
}

std::vector<HomogeneousPart> homogeneous_parts(const AlgebraElement& z, const std::vector<FiniteSeq>& generators) {
  if (z.generators() > generators.size()) {
    throw Error(ErrorCode::invalid_argument, "element uses more generators than available");
  }
  // Any coordinatewise space supplies the product.
  const SpaceSpec coord = SpaceSpec::make(SpaceId::c0);
  std::vector<HomogeneousPart> out;
  for (unsigned nu = 1; nu <= z.degree(); ++nu) {
    AlgebraElement part;
    for (const auto& [beta, c] : z.homogeneous(nu)) part.add_term(beta, c);
    if (part.is_zero()) continue;
    FiniteSeq value = evaluate(part, generators, coord);
    if (!value.empty()) out.push_back({nu, std::move(value)});
  }
  return out;
}

}  // namespace hyperforge
