#include "hyperforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hyperforge/error.hpp"
#include "hyperforge/io.hpp"
#include "hyperforge/lambda_matrix.hpp"
#include "hyperforge/shift.hpp"

namespace hyperforge {

namespace {

constexpr wide_real kNegInf = -std::numeric_limits<wide_real>::infinity();

wide_real log_pow2(round_t r) { return -static_cast<wide_real>(r) * std::numbers::ln2_v<wide_real>; }

wide_real log_add(wide_real a, wide_real b) {
  LogSumExp s;
  s.add(a);
  s.add(b);
  return s.value();
}

double decode(wide_real l) { return Certificate::decode(l); }

struct RowInput {
  round_t round = 0;
  index_t a = 0;
  std::optional<std::size_t> target;
  unsigned q = 1;
  unsigned mu = 1;
  wide_real log_measured = kNegInf;
  wide_real log_bound = 0;
  wide_real log_allowance = kNegInf;
  std::string note;
};

OrbitRow make_row(const RowInput& in) {
  OrbitRow row;
  row.round = in.round;
  row.a = in.a;
  row.target = in.target;
  row.q = in.q;
  row.mu = in.mu;
  row.note = in.note;
  const wide_real log_distance = log_add(in.log_measured, in.log_allowance);
  row.measured = decode(in.log_measured);
  row.allowance = decode(in.log_allowance);
  row.distance = decode(log_distance);
  row.bound = decode(in.log_bound);
  row.ratio = decode(log_distance - in.log_bound);
  if (in.log_allowance >= in.log_bound) {
    row.skipped = true;
    if (row.note.empty()) row.note = "blocks beyond the last round can reach the bound";
    return row;
  }
  row.pass = log_distance <= in.log_bound;
  return row;
}

// ||T^a u - y||_q with y omitted when target is empty.
wide_real log_orbit_distance(const SpaceSpec& space, const Weight& w, const FiniteSeq& u, index_t a,
                             const FiniteSeq* y, unsigned q) {
  FiniteSeq diff = backward_iterate(w, u, a);
  if (y != nullptr) diff -= *y;
  return log_seminorm_upper(space, q, diff);
}

unsigned max_degree_built(const std::vector<unsigned>& degrees) {
  return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
}

// Pure terms c_{nu,k} x_k^nu of a coordinatewise element; cross terms vanish.
struct PureTerm {
  unsigned degree;
  unsigned generator;
  std::complex<double> c;
};

std::vector<PureTerm> pure_terms(const AlgebraElement& z) {
  std::vector<PureTerm> out;
  for (const auto& [beta, c] : z.terms()) {
    const std::vector<unsigned> active = active_generators(beta);
    if (active.size() == 1) out.push_back({beta[active[0] - 1], active[0], c});
  }
  return out;
}

AlgebraElement scaled(const AlgebraElement& z, std::complex<double> f) {
  AlgebraElement out;
  for (const auto& [beta, c] : z.terms()) out.add_term(beta, c * f);
  return out.padded(z.generators());
}

}  // namespace

void OrbitReport::summarize() {
  const bool degenerate = summary.degenerate;
  summary = OrbitSummary{};
  summary.degenerate = degenerate;
  for (const OrbitRow& row : rounds) {
    if (row.skipped) {
      ++summary.skipped;
      continue;
    }
    ++summary.checked;
    if (!row.pass) ++summary.failed;
    summary.max_ratio = std::max(summary.max_ratio, row.ratio);
  }
  summary.pass = summary.failed == 0;
}

OrbitReport orbit_power_report(const CoordBundle& bundle, unsigned j) {
  if (j == 0) throw Error(ErrorCode::invalid_argument, "power must be >= 1");
  OrbitReport report;
  report.bundle_id = bundle_id(bundle);
  report.element = "x^" + std::to_string(j);
  const round_t R = bundle.rounds.size();
  const FiniteSeq xj = bundle.space.power(bundle.generator(0), j);
  for (const CoordRound& round : bundle.rounds) {
    if (round.m != j) continue;
    RowInput in;
    in.round = round.r;
    in.a = round.a;
    in.target = round.target_id;
    in.q = static_cast<unsigned>(round.r);
    in.mu = j;
    in.log_bound = log_pow2(round.r);
    in.log_allowance = log_pow2(R);
    in.log_measured = log_orbit_distance(bundle.space, bundle.weight, xj, round.a,
                                         &bundle.targets.at(round.target_id), in.q);
    report.rounds.push_back(make_row(in));
  }
  report.summarize();
  return report;
}

OrbitReport orbit_power_report(const CauchyBundle& bundle, unsigned j) {
  if (j == 0) throw Error(ErrorCode::invalid_argument, "power must be >= 1");
  if (bundle.algebrable()) {
    throw Error(ErrorCode::invalid_argument, "power reports need a single-generator bundle; use an element report");
  }
  OrbitReport report;
  report.bundle_id = bundle_id(bundle);
  report.element = "x^" + std::to_string(j);
  const round_t R = bundle.rounds.size();
  const FiniteSeq xj = cauchy_power(bundle.generator(0), j);
  for (const CauchyRound& round : bundle.rounds) {
    if (round.m < j) continue;
    RowInput in;
    in.round = round.r;
    in.a = round.a;
    in.q = static_cast<unsigned>(round.r);
    in.mu = j;
    in.log_allowance = log_pow2(R);
    const FiniteSeq* y = nullptr;
    if (round.m == j) {
      in.target = round.target_id;
      y = &bundle.targets.at(round.target_id);
      in.log_bound = log_pow2(round.r) + std::numbers::ln2_v<wide_real>;
    } else {
      in.log_bound = log_pow2(round.r);
      in.note = "distance to 0";
    }
    in.log_measured = log_orbit_distance(bundle.space, bundle.weight, xj, round.a, y, in.q);
    OrbitRow row = make_row(in);
    if (!y && row.skipped) row.note = "distance to 0; blocks beyond the last round can reach the bound";
    report.rounds.push_back(std::move(row));
  }
  report.summarize();
  return report;
}

OrbitReport orbit_element_report(const CoordBundle& bundle, const AlgebraElement& z) {
  z.require_nonzero();
  if (z.generators() > bundle.classes) {
    throw Error(ErrorCode::invalid_argument, "element uses more generators than the bundle has");
  }
  OrbitReport report;
  report.bundle_id = bundle_id(bundle);
  report.element = z.to_string();
  const std::vector<FiniteSeq> gens = bundle.generators();

  const std::vector<PureTerm> pure = pure_terms(z);
  if (pure.empty()) {
    // Only mixed products: the element is zero in the algebra.
    report.summary.degenerate = true;
    const FiniteSeq value = evaluate(z, gens, bundle.space);
    report.summarize();
    if (!value.empty()) {
      OrbitRow row;
      row.note = "mixed products should vanish but the evaluated element is nonzero at index " +
                 std::to_string(value.min_index());
      row.distance = value.begin()->second.abs();
      report.rounds.push_back(row);
      report.summary.failed = 1;
      report.summary.checked = 1;
      report.summary.pass = false;
    }
    return report;
  }

  // Lowest degree j and the first generator k with c_{j,k} != 0.
  const PureTerm lead = *std::min_element(pure.begin(), pure.end(), [](const PureTerm& a, const PureTerm& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.generator < b.generator;
  });
  const AlgebraElement zn = scaled(z, 1.0 / lead.c);
  wide_real others = 0;
  for (const PureTerm& t : pure) {
    if (t.degree == lead.degree && t.generator == lead.generator) continue;
    others += std::abs(t.c / lead.c);
  }
  const FiniteSeq value = evaluate(zn, gens, bundle.space);

  std::vector<unsigned> degrees;
  for (const CoordRound& round : bundle.rounds) degrees.push_back(round.m);
  const bool covered = z.degree() <= max_degree_built(degrees);
  const round_t R = bundle.rounds.size();

  for (const CoordRound& round : bundle.rounds) {
    if (round.m != lead.degree || round.generator != lead.generator) continue;
    RowInput in;
    in.round = round.r;
    in.a = round.a;
    in.target = round.target_id;
    in.q = static_cast<unsigned>(round.r);
    in.mu = lead.degree;
    in.log_bound = std::log(others + 2) + log_pow2(round.r);
    in.log_allowance = std::log(others + 1) + log_pow2(R);
    in.log_measured = log_orbit_distance(bundle.space, bundle.weight, value, round.a,
                                         &bundle.targets.at(round.target_id), in.q);
    OrbitRow row = make_row(in);
    if (!covered) {
      row.skipped = true;
      row.pass = false;
      row.note = "element degree exceeds every built round degree; later blocks are not controlled";
    }
    report.rounds.push_back(std::move(row));
  }
  report.summarize();
  return report;
}

OrbitReport orbit_element_report(const CauchyBundle& bundle, const AlgebraElement& z) {
  z.require_nonzero();
  OrbitReport report;
  report.bundle_id = bundle_id(bundle);
  report.element = z.to_string();
  const round_t R = bundle.rounds.size();
  const unsigned N = z.degree();

  if (!bundle.algebrable()) {
    if (z.generators() > 1) throw Error(ErrorCode::invalid_argument, "single-generator bundle: use x1 only");
    const AlgebraElement::Terms top = z.homogeneous(N);
    const std::complex<double> cN = top.begin()->second;
    const AlgebraElement zn = scaled(z, 1.0 / cN);
    wide_real lower = 0;
    for (unsigned mu = 1; mu < N; ++mu) {
      for (const auto& [beta, c] : z.homogeneous(mu)) lower += std::abs(c / cN);
    }
    const FiniteSeq value = evaluate(zn, {bundle.generator(0)}, bundle.space);
    for (const CauchyRound& round : bundle.rounds) {
      if (round.m != N) continue;
      RowInput in;
      in.round = round.r;
      in.a = round.a;
      in.target = round.target_id;
      in.q = static_cast<unsigned>(round.r);
      in.mu = N;
      in.log_bound = std::log(lower + 2) + log_pow2(round.r);
      in.log_allowance = std::log(lower + 1) + log_pow2(R);
      in.log_measured = log_orbit_distance(bundle.space, bundle.weight, value, round.a,
                                           &bundle.targets.at(round.target_id), in.q);
      report.rounds.push_back(make_row(in));
    }
    report.summarize();
    return report;
  }

  if (z.generators() > bundle.generators) {
    throw Error(ErrorCode::invalid_argument, "element uses more generators than the bundle has");
  }
  const AlgebraElement zk = z.padded(bundle.generators);
  const LambdaMatrix lambda(bundle.generators);
  // Throws degenerate_element when the leading form vanishes on every column.
  (void)leading_form_column(zk, lambda);

  const std::vector<double> C = tail_constants(zk);
  const wide_real tail_R = std::log(static_cast<wide_real>(tail_bound(N, C, R)));
  const FiniteSeq value = evaluate(zk, bundle.generator_list(), bundle.space);
  for (const CauchyRound& round : bundle.rounds) {
    if (round.m != N) continue;
    const std::complex<double> rho = leading_form_value(zk, round.lambda_column);
    RowInput in;
    in.round = round.r;
    in.a = round.a;
    in.target = round.target_id;
    in.q = static_cast<unsigned>(round.r);
    in.mu = N;
    std::ostringstream note;
    note.precision(6);
    note << "rho=" << rho.real() << (rho.imag() < 0 ? "" : "+") << rho.imag() << "i";
    in.note = note.str();
    if (std::abs(rho) <= kLeadingFormThreshold) {
      OrbitRow row;
      row.round = round.r;
      row.a = round.a;
      row.target = round.target_id;
      row.q = in.q;
      row.mu = N;
      row.skipped = true;
      row.note = in.note + "; leading form below threshold";
      report.rounds.push_back(std::move(row));
      continue;
    }
    const wide_real tail_r = std::log(static_cast<wide_real>(tail_bound(N, C, round.r)));
    in.log_bound = log_add(std::log(static_cast<wide_real>(std::abs(rho))) + log_pow2(round.r), tail_r);
    in.log_allowance = tail_R;
    const FiniteSeq target = bundle.targets.at(round.target_id).scaled(WideComplex(rho));
    in.log_measured = log_orbit_distance(bundle.space, bundle.weight, value, round.a, &target, in.q);
    report.rounds.push_back(make_row(in));
  }
  report.summarize();
  return report;
}

ExpansionComparison expansion_oracle(const CauchyBundle& bundle, const AlgebraElement& z, unsigned degree_cap) {
  z.require_nonzero();
  const unsigned K = std::max(1u, bundle.generators);
  if (z.generators() > K) throw Error(ErrorCode::invalid_argument, "element uses more generators than the bundle has");
  const std::size_t R = bundle.rounds.size();
  if (R == 0) throw Error(ErrorCode::invalid_argument, "bundle has no rounds");

  ExpansionComparison out;
  AlgebraElement zc;
  for (const auto& [beta, c] : z.terms()) {
    if (total_degree(beta) > degree_cap) {
      out.partial = true;
      continue;
    }
    zc.add_term(beta, c);
  }
  if (zc.is_zero()) {
    out.pass = true;
    return out;
  }
  zc = zc.padded(K);

  // Substitution with repeated Cauchy products.
  out.direct = evaluate(zc, bundle.generator_list(), bundle.space);

  // Symbolic expansion in the block variables u_1..u_R.
  using Poly = std::map<MultiIndex, std::complex<long double>>;
  auto lambda_of = [&](unsigned k, std::size_t t) -> std::complex<long double> {
    if (!bundle.algebrable()) return 1.0L;
    const auto v = bundle.rounds[t].lambda_column.at(k);
    return {v.real(), v.imag()};
  };
  Poly d;
  for (const auto& [beta, c] : zc.terms()) {
    Poly poly{{MultiIndex(R, 0), 1.0L}};
    for (unsigned k = 0; k < beta.size(); ++k) {
      for (unsigned e = 0; e < beta[k]; ++e) {
        Poly next;
        for (const auto& [alpha, coeff] : poly) {
          for (std::size_t t = 0; t < R; ++t) {
            const std::complex<long double> l = lambda_of(k, t);
            if (l == std::complex<long double>{}) continue;
            MultiIndex a = alpha;
            ++a[t];
            next[a] += coeff * l;
          }
        }
        poly = std::move(next);
      }
    }
    const std::complex<long double> cw(c.real(), c.imag());
    for (const auto& [alpha, coeff] : poly) d[alpha] += cw * coeff;
  }

  BlockPowers powers;
  for (const CauchyRound& round : bundle.rounds) powers.push(round.p);
  for (const auto& [alpha, coeff] : d) {
    if (coeff == std::complex<long double>{}) continue;
    out.coefficients[alpha] = {static_cast<double>(coeff.real()), static_cast<double>(coeff.imag())};
    out.expanded += powers.product(alpha).scaled(WideComplex(coeff));
  }
  out.relative_difference = max_relative_difference(out.direct, out.expanded);
  out.pass = out.relative_difference <= kExpansionTolerance;
  return out;
}

ZeroProductReport zero_product_report(const CoordBundle& bundle) {
  ZeroProductReport report;
  report.bundle_id = bundle_id(bundle);
  const std::vector<FiniteSeq> gens = bundle.generators();
  for (unsigned k = 0; k < gens.size(); ++k) {
    for (unsigned k2 = k + 1; k2 < gens.size(); ++k2) {
      ZeroProductPair pair;
      pair.k = k + 1;
      pair.k2 = k2 + 1;
      const FiniteSeq prod = coordinatewise_product(gens[k], gens[k2]);
      if (!prod.empty()) {
        pair.pass = false;
        pair.witness = prod.min_index();
        report.pass = false;
      }
      report.pairs.push_back(pair);
    }
  }
  return report;
}

GenerationReport non_finite_generation_report(const CauchyBundle& bundle) {
  GenerationReport report;
  report.bundle_id = bundle_id(bundle);
  const std::vector<FiniteSeq> gens = bundle.generator_list();
  for (const CauchyRound& round : bundle.rounds) {
    if (round.m < 2) continue;
    GenerationRow row;
    row.round = round.r;
    row.index = static_cast<index_t>(round.m) * round.gamma;
    row.generators_vanish =
        std::all_of(gens.begin(), gens.end(), [&](const FiniteSeq& x) { return x[row.index].is_zero(); });
    const WideComplex top = cauchy_power(round.p, round.m)[row.index];
    row.power_log_abs = static_cast<double>(top.log_abs());
    row.pass = row.generators_vanish && !top.is_zero();
    report.pass = report.pass && row.pass;
    report.rounds.push_back(row);
  }
  return report;
}

}  // namespace hyperforge
