// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hyperforge/building_block.hpp"
#include "hyperforge/cauchy_construct.hpp"
#include "hyperforge/coord_construct.hpp"
#include "hyperforge/criteria.hpp"
#include "hyperforge/element_parser.hpp"
#include "hyperforge/error.hpp"
#include "hyperforge/lambda_matrix.hpp"
#include "hyperforge/shift.hpp"
#include "hyperforge/verify.hpp"
#include "support/oracles.hpp"

namespace hf = hyperforge;

namespace {

using Clock = std::chrono::steady_clock;

class Outcome {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && pass_) first_failure_ = what;
    pass_ = pass_ && ok;
  }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }
  bool pass() const { return pass_; }
  std::string summary() const { return pass_ ? notes_ : first_failure_ + (notes_.empty() ? "" : " | " + notes_); }

 private:
  bool pass_ = true;
  std::string first_failure_;
  std::string notes_;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const hf::SpaceSpec kLp1 = hf::SpaceSpec::make(hf::SpaceId::lp, 1.0);
const hf::SpaceSpec kL1 = hf::SpaceSpec::make(hf::SpaceId::l1);
const hf::SpaceSpec kHadamard = hf::SpaceSpec::make(hf::SpaceId::entire_hadamard);
const hf::SpaceSpec kEntireCauchy = hf::SpaceSpec::make(hf::SpaceId::entire_cauchy);
const hf::Weight kTwo = hf::Weight::constant(2.0);

// Every power report j = 1..max m passes, checks at least one row, and keeps the ratio at most 1.
template <class Bundle>
void require_power_reports(Outcome& out, const Bundle& b) {
  unsigned max_m = 0;
  for (const auto& r : b.rounds) max_m = std::max(max_m, r.m);
  std::size_t checked = 0;
  double worst = 0;
  for (unsigned j = 1; j <= max_m; ++j) {
    const hf::OrbitReport rep = hf::orbit_power_report(b, j);
    out.require(rep.summary.pass, "power report j=" + std::to_string(j) + " fails");
    for (const hf::OrbitRow& row : rep.rounds) {
      if (row.skipped) continue;
      out.require(row.distance < row.bound, "round " + std::to_string(row.round) + " misses its bound");
      worst = std::max(worst, row.ratio);
    }
    checked += rep.summary.checked;
  }
  out.require(checked > 0, "no applicable rounds");
  out.require(worst <= 1.0, "ratio above 1");
  out.note(std::to_string(checked) + " orbit rows, max ratio " + fmt("%.3g", worst));
}

void require_coord_certified(Outcome& out, const hf::CoordBundle& b, std::size_t rounds) {
  out.require(b.rounds.size() == rounds, "wrong round count");
  for (const hf::CoordRound& r : b.rounds) {
    out.require(r.A1.pass && r.A2.pass && r.A3.pass, "round " + std::to_string(r.r) + " certificate fails");
  }
  out.require(hf::revalidate(b).pass, "revalidation fails");
}

void require_cauchy_certified(Outcome& out, const hf::CauchyBundle& b, std::size_t rounds) {
  out.require(b.rounds.size() == rounds, "wrong round count");
  for (std::size_t i = 0; i < b.rounds.size(); ++i) {
    const hf::CauchyRound& r = b.rounds[i];
    const std::string id = "round " + std::to_string(r.r);
    out.require(r.D1.pass && r.D2.pass && r.D3.pass && r.D4.pass, id + " D certificate fails");
    out.require(r.C1.pass && r.C3.pass && r.C2_residual <= 1e-12L, id + " block certificate fails");
    out.require(r.separation.pass, id + " separation fails");
    // Independent separation check: a_r <= m gamma_r < eta_{r+1}.
    const hf::index_t top = static_cast<hf::index_t>(r.m) * r.gamma;
    out.require(r.a <= top, id + " a_r above m gamma_r");
    if (i + 1 < b.rounds.size()) out.require(top < b.rounds[i + 1].eta, id + " overlaps the next block");
  }
  out.require(hf::revalidate(b).pass, "revalidation fails");
}

const hf::CoordBundle& rolewicz() {
  static const hf::CoordBundle b = hf::build_generator(kLp1, kTwo, hf::default_base_targets(), 12);
  return b;
}
const hf::CoordBundle& maclane_hadamard() {
  static const hf::CoordBundle b = hf::build_generator(kHadamard, hf::Weight::maclane(), hf::default_base_targets(), 10);
  return b;
}
const hf::CoordBundle& coord_algebra() {
  static const hf::CoordBundle b = hf::build_algebrable(kLp1, kTwo, hf::default_base_targets(), 3, 12);
  return b;
}
const hf::CauchyBundle& cauchy_l1() {
  static const hf::CauchyBundle b = hf::build_generator_cauchy(kL1, kTwo, hf::default_base_targets(), 8);
  return b;
}
const hf::CauchyBundle& cauchy_entire() {
  static const hf::CauchyBundle b =
      hf::build_generator_cauchy(kEntireCauchy, hf::Weight::maclane(), hf::default_base_targets(), 8);
  return b;
}
const hf::CauchyBundle& cauchy_algebra() {
  static const hf::CauchyBundle b = hf::build_algebrable_cauchy(kL1, kTwo, hf::default_base_targets(), 2, 8);
  return b;
}

Outcome rolewicz_generator() {
  Outcome out;
  const auto start = Clock::now();
  require_coord_certified(out, rolewicz(), 12);
  require_power_reports(out, rolewicz());
  const double t = seconds_since(start);
  out.require(t < 10, "runtime " + fmt("%.2f s", t) + " exceeds 10 s");
  out.note(fmt("%.2f s", t));
  return out;
}

Outcome maclane_hadamard_generator() {
  Outcome out;
  const auto start = Clock::now();
  require_coord_certified(out, maclane_hadamard(), 10);
  require_power_reports(out, maclane_hadamard());
  const double t = seconds_since(start);
  out.require(t < 30, "runtime " + fmt("%.2f s", t) + " exceeds 30 s");
  out.note(fmt("%.2f s", t));
  return out;
}

Outcome coordinatewise_algebra() {
  Outcome out;
  const hf::CoordBundle& b = coord_algebra();
  require_coord_certified(out, b, 12);
  const hf::ZeroProductReport zp = hf::zero_product_report(b);
  out.require(zp.pass && zp.pairs.size() == 3, "zero products");
  // Independent check: the pairwise supports are disjoint.
  const std::vector<hf::FiniteSeq> gens = b.generators();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (std::size_t k2 = k + 1; k2 < gens.size(); ++k2) {
      for (const auto& [n, c] : gens[k]) out.require(gens[k2][n].is_zero(), "supports overlap");
    }
  }
  const hf::OrbitReport rep = hf::orbit_element_report(b, hf::parse_algebra_element("x1^2 + 0.3*x1^3"));
  out.require(rep.summary.pass && rep.summary.checked > 0, "element report fails");
  for (const hf::OrbitRow& row : rep.rounds) {
    if (row.skipped) continue;
    const double bound = 2.3 * std::pow(2.0, -static_cast<double>(row.round));
    out.require(std::abs(row.bound - bound) <= 1e-15 && row.distance < bound,
                "round " + std::to_string(row.round) + " misses (0.3+2) 2^-t");
  }
  out.note(std::to_string(zp.pairs.size()) + " zero pairs, " + std::to_string(rep.summary.checked) +
           " element rows, max ratio " + fmt("%.3g", rep.summary.max_ratio));
  return out;
}

Outcome building_block_solver() {
  Outcome out;
  const hf::FiniteSeq y = hf::FiniteSeq::from_values({1, 1});
  const hf::Weight mac = hf::Weight::maclane();
  double worst = 0;
  for (unsigned m = 1; m <= 3; ++m) {
    const auto start = Clock::now();
    const hf::BlockSolveResult res = hf::solve_building_block(kEntireCauchy, mac, y, m, 1, 0, 0.5);
    const std::string id = "m=" + std::to_string(m);
    out.require(res.C1.pass && res.C3.pass, id + " C.1/C.3 not certified");
    out.require(res.C2_residual <= 1e-12L, id + " C.2 residual too large");
    // C.1 against the definition: the upper end of ||p||_1 is sum |p_n|.
    out.require(hf::testing::naive_seminorm(kEntireCauchy, 1, res.p) < 0.5L, id + " C.1 recomputed fails");
    if (m == 1) {
      out.require(res.c.size() >= 1 && res.c[0] == mac.v(0) * hf::WideComplex(1.0) / mac.v(res.eta),
                  "m=1 closed form differs");
    } else {
      // ||B^a(b^m e_{m gamma})||_1 = |b|^m (m gamma)! / (m gamma - a)!
      const hf::index_t top = m * res.gamma;
      const long double log_c3 = m * res.b.log_abs() + std::lgamma(static_cast<long double>(top) + 1) -
                                 std::lgamma(static_cast<long double>(top - res.a()) + 1);
      out.require(log_c3 < std::log(0.5L), id + " C.3 recomputed fails");
    }
    const double t = seconds_since(start);
    worst = std::max(worst, t);
    out.require(t < 5, id + " runtime " + fmt("%.2f s", t));
  }
  out.note("slowest degree " + fmt("%.3f s", worst));
  return out;
}

Outcome cauchy_generator() {
  Outcome out;
  const auto start = Clock::now();
  for (const hf::CauchyBundle* b : {&cauchy_l1(), &cauchy_entire()}) {
    Outcome part;
    require_cauchy_certified(part, *b, 8);
    require_power_reports(part, *b);
    out.require(part.pass(), b->space.name() + ": " + part.summary());
    out.note(b->space.name() + " " + part.summary());
  }
  out.note(fmt("%.2f s", seconds_since(start)));
  return out;
}

Outcome cauchy_algebra_criterion() {
  Outcome out;
  const hf::AlgebraElement z = hf::parse_algebra_element("x1*x2 + x1");
  const hf::LambdaMatrix lambda(2);
  const hf::LeadingColumn lead = hf::leading_form_column(z, lambda);
  out.require(std::abs(lead.rho) > hf::kLeadingFormThreshold, "no column with rho != 0");

  const hf::CauchyBundle& b = cauchy_algebra();
  require_cauchy_certified(out, b, 8);
  const hf::OrbitReport rep = hf::orbit_element_report(b, z);
  out.require(rep.summary.pass && rep.summary.checked > 0, "element report fails");
  const std::vector<double> C = hf::tail_constants(z);
  for (const hf::OrbitRow& row : rep.rounds) {
    if (row.skipped) continue;
    const hf::CauchyRound& r = b.rounds[row.round - 1];
    const double rho = std::abs(hf::leading_form_value(z, r.lambda_column));
    const double bound = rho * std::pow(2.0, -static_cast<double>(row.round)) + hf::tail_bound(2, C, row.round);
    out.require(rho > 0 && std::abs(row.bound - bound) <= 1e-15 && row.distance < bound,
                "round " + std::to_string(row.round) + " misses rho 2^-r + tail");
  }

  const hf::GenerationReport gen = hf::non_finite_generation_report(b);
  std::size_t expected = 0;
  for (const hf::CauchyRound& r : b.rounds) expected += r.m >= 2;
  out.require(gen.pass && gen.rounds.size() == expected, "non-finite generation witness fails");
  // Independent check at m gamma_r.
  const std::vector<hf::FiniteSeq> gens = b.generator_list();
  for (const hf::CauchyRound& r : b.rounds) {
    if (r.m < 2) continue;
    const hf::index_t n = static_cast<hf::index_t>(r.m) * r.gamma;
    for (const hf::FiniteSeq& g : gens) out.require(g[n].is_zero(), "generator nonzero at m gamma_r");
    out.require(!hf::cauchy_power(r.p, r.m)[n].is_zero(), "p_r^m vanishes at m gamma_r");
  }
  out.note("rho " + fmt("%.3g", std::abs(lead.rho)) + " at column " + std::to_string(lead.nu) + ", " +
           std::to_string(rep.summary.checked) + " element rows, " + std::to_string(gen.rounds.size()) +
           " generation rows");
  return out;
}

Outcome oracle_suites() {
  Outcome out;
  const auto start = Clock::now();
  constexpr int kCases = 1000;
  constexpr long double kTol = 1e-10L;
  const std::vector<hf::SpaceSpec> spaces{
      kLp1,          hf::SpaceSpec::make(hf::SpaceId::lp, 2.0),          hf::SpaceSpec::make(hf::SpaceId::c0),
      kL1,           kHadamard,                                          kEntireCauchy,
      hf::SpaceSpec::make(hf::SpaceId::omega_coord), hf::SpaceSpec::make(hf::SpaceId::omega_cauchy)};
  hf::testing::SeqGen gen(20240);
  long double worst = 0;
  for (const hf::SpaceSpec& space : spaces) {
    const bool cauchy = space.product() == hf::Product::cauchy;
    for (int i = 0; i < kCases; ++i) {
      const hf::FiniteSeq x = gen.next(), y = gen.next(), z = gen.next();
      const unsigned q = 1 + i % 4;
      const double lhs = hf::seminorm_eval(space, q, space.multiply(x, y)).upper;
      const double rhs = hf::seminorm_eval(space, q, x).upper * hf::seminorm_eval(space, q, y).upper;
      out.require(lhs <= rhs * (1 + 1e-10), space.name() + " submultiplicativity");
      const long double comm = hf::max_relative_difference(space.multiply(x, y), space.multiply(y, x));
      const long double assoc = hf::max_relative_difference(space.multiply(space.multiply(x, y), z),
                                                            space.multiply(x, space.multiply(y, z)));
      worst = std::max({worst, comm, assoc});
      out.require(comm <= kTol && assoc <= kTol, space.name() + " commutativity/associativity");
      if (cauchy) {
        const unsigned m = 2 + i % 3;
        const long double pw = hf::testing::relative_difference(
            hf::cauchy_power(x, m), hf::testing::naive_power(hf::testing::dense(x), m));
        worst = std::max(worst, pw);
        out.require(pw <= kTol, space.name() + " cauchy_power vs repeated convolution");
      }
    }
  }

  const std::vector<hf::Weight> weights{kTwo, hf::Weight::constant({0.0, 1.5}), hf::Weight::maclane()};
  long double shift_worst = 0;
  for (int i = 0; i < kCases; ++i) {
    const hf::Weight& w = weights[i % weights.size()];
    const hf::FiniteSeq x = gen.next();
    const hf::index_t a = gen.uniform(1, 20);
    const long double d =
        hf::max_relative_difference(hf::backward_iterate(w, hf::forward_iterate(w, x, a), a), x);
    shift_worst = std::max(shift_worst, d);
    out.require(d <= 1e-12L, "B^a F^a differs from the identity");
  }

  long double exp_worst = 0;
  const hf::CauchyBundle small = hf::build_algebrable_cauchy(kL1, kTwo, hf::default_base_targets(), 2, 4);
  const hf::CauchyBundle single = hf::build_generator_cauchy(kEntireCauchy, hf::Weight::maclane(),
                                                             hf::default_base_targets(), 4);
  for (int i = 0; i < kCases; ++i) {
    const bool two = i % 2 == 0;
    hf::AlgebraElement e;
    const unsigned terms = gen.uniform(1, 4);
    for (unsigned t = 0; t < terms; ++t) {
      unsigned d1 = gen.uniform(two ? 0 : 1, 3);
      const unsigned d2 = two ? gen.uniform(0, 3 - d1) : 0;
      if (d1 + d2 == 0) d1 = 1;
      e.add_term(two ? hf::MultiIndex{d1, d2} : hf::MultiIndex{d1}, gen.unit_disk());
    }
    if (e.is_zero()) continue;
    const hf::ExpansionComparison cmp = hf::expansion_oracle(two ? small : single, e);
    exp_worst = std::max(exp_worst, cmp.relative_difference);
    out.require(cmp.pass && !cmp.partial, "expansion oracle disagrees for " + e.to_string());
  }

  const double t = seconds_since(start);
  out.require(t < 60, "runtime " + fmt("%.2f s", t) + " exceeds 60 s");
  out.note("products " + fmt("%.2g", static_cast<double>(worst)) + ", shifts " +
           fmt("%.2g", static_cast<double>(shift_worst)) + ", expansion " +
           fmt("%.2g", static_cast<double>(exp_worst)) + ", " + fmt("%.2f s", t));
  return out;
}

Outcome criteria_suite() {
  Outcome out;
  for (const hf::SpaceSpec& s : {kLp1, hf::SpaceSpec::make(hf::SpaceId::lp, 3.0), hf::SpaceSpec::make(hf::SpaceId::c0),
                                 hf::SpaceSpec::make(hf::SpaceId::omega_coord)}) {
    const hf::PropertyAWitness w = hf::property_a_witness(s);
    for (unsigned r = 1; r <= w.per_r.size(); ++r) {
      out.require(w.per_r[r - 1].q == r && w.per_r[r - 1].C == 1.0, s.name() + " property A constants");
    }
    out.require(hf::check_property_a(s, w).pass, s.name() + " property A check");
  }
  const hf::PropertyAWitness h = hf::property_a_witness(kHadamard);
  for (unsigned r = 1; r <= h.per_r.size(); ++r) {
    out.require(h.per_r[r - 1].q == r * r && h.per_r[r - 1].C == 1.0, "entire_hadamard property A constants");
  }
  out.require(hf::check_property_a(kHadamard, h).pass, "entire_hadamard property A check");

  const hf::PropertyBWitness l1 = hf::property_b_witness(kL1);
  bool ones = l1.cond_i_q == 1;
  for (const auto& b : l1.cond_ii) ones = ones && b.q == 1 && b.C == 1.0;
  for (const auto& c : l1.cond_iii) ones = ones && c.rho == 1 && c.tau == 1 && c.C2 == 1.0;
  out.require(ones && hf::check_property_b(kL1, l1).pass, "l1 property B constants");
  const hf::PropertyBWitness ec = hf::property_b_witness(kEntireCauchy);
  out.require(hf::check_property_b(kEntireCauchy, ec).pass, "entire_cauchy property B check");
  const hf::PropertyBCondIII c3 = hf::property_b_iii(kEntireCauchy, 2, 3, 2, 5);
  out.require(c3.rho == 5 && c3.tau == 2 && c3.C2 == 125.0, "entire_cauchy q^n constants");

  try {
    hf::property_b_witness(hf::SpaceSpec::make(hf::SpaceId::omega_cauchy));
    out.require(false, "omega_cauchy accepted");
  } catch (const hf::Error& e) {
    out.require(e.code() == hf::ErrorCode::no_witness && std::string(e.what()).find("condition (i)") != std::string::npos,
                "omega_cauchy rejection does not cite condition (i)");
  }

  const hf::MixingResult mix_two = hf::check_mixing(kL1, kTwo, 500);
  const hf::MixingResult mix_mac = hf::check_mixing(kEntireCauchy, hf::Weight::maclane(), 500);
  out.require(mix_two.pass && mix_mac.pass, "mixing witnesses");
  hf::PkOptions pk_opts;
  pk_opts.scan_limit = 500;
  const hf::PkWitness pk_two = hf::find_pk_witness(kLp1, kTwo, 12, pk_opts);
  const hf::PkWitness pk_mac = hf::find_pk_witness(kHadamard, hf::Weight::maclane(), 12, pk_opts);
  out.require(hf::check_pk_witness(kLp1, kTwo, pk_two).pass, "const:2 hypercyclicity witness");
  out.require(hf::check_pk_witness(kHadamard, hf::Weight::maclane(), pk_mac).pass, "maclane hypercyclicity witness");
  out.require(pk_two.p.back() <= 500 && pk_mac.p.back() <= 500, "witness indices beyond 500");
  out.note("mixing thresholds " + std::to_string(mix_two.threshold.back()) + " / " +
           std::to_string(mix_mac.threshold.back()));
  return out;
}

template <class Bundle, class Scale, class Reports>
std::size_t count_undetected(const Bundle& base, Scale scale, Reports reports) {
  std::size_t missed = 0;
  for (std::size_t i = 0; i < base.rounds.size(); ++i) {
    Bundle b = base;
    scale(b.rounds[i]);
    if (hf::revalidate(b).pass && reports(b)) ++missed;
  }
  return missed;
}

Outcome negative_controls() {
  Outcome out;
  try {
    hf::PkOptions opts;
    opts.scan_limit = 5000;
    hf::find_pk_witness(kLp1, hf::Weight::constant(0.5), 3, opts);
    out.require(false, "const:1/2 produced a witness");
  } catch (const hf::Error& e) {
    out.require(e.code() == hf::ErrorCode::search_exhausted, "const:1/2 failed with the wrong error");
  }

  auto coord_scale = [](hf::CoordRound& r) { r.block = r.block.scaled(2.0); };
  auto coord_reports = [](const hf::CoordBundle& b) {
    for (unsigned j = 1; j <= 4; ++j) {
      if (!hf::orbit_power_report(b, j).summary.pass) return false;
    }
    return true;
  };
  auto cauchy_scale = [](hf::CauchyRound& r) {
    r.p = r.p.scaled(2.0);
    r.b = r.b * hf::WideComplex(2.0);
    for (hf::WideComplex& c : r.c) c = c * hf::WideComplex(2.0);
  };
  auto cauchy_reports = [](const hf::CauchyBundle& b) {
    if (b.algebrable()) return hf::orbit_element_report(b, hf::parse_algebra_element("x1*x2 + x1")).summary.pass;
    for (unsigned j = 1; j <= 4; ++j) {
      if (!hf::orbit_power_report(b, j).summary.pass) return false;
    }
    return true;
  };

  std::size_t total = 0, missed = 0;
  for (const hf::CoordBundle* b : {&rolewicz(), &maclane_hadamard(), &coord_algebra()}) {
    missed += count_undetected(*b, coord_scale, coord_reports);
    total += b->rounds.size();
  }
  for (const hf::CauchyBundle* b : {&cauchy_l1(), &cauchy_entire(), &cauchy_algebra()}) {
    missed += count_undetected(*b, cauchy_scale, cauchy_reports);
    total += b->rounds.size();
  }
  out.require(missed == 0, std::to_string(missed) + " of " + std::to_string(total) + " perturbations undetected");
  out.note(std::to_string(total) + " perturbed rounds all detected");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 coordinatewise Rolewicz generator", rolewicz_generator},
      {"2 coordinatewise MacLane on Hadamard entire functions", maclane_hadamard_generator},
      {"3 coordinatewise algebra of three generators", coordinatewise_algebra},
      {"4 building-block solver", building_block_solver},
      {"5 Cauchy generator", cauchy_generator},
      {"6 Cauchy algebra over the coefficient matrix", cauchy_algebra_criterion},
      {"7 oracle suites", oracle_suites},
      {"8 criteria witnesses", criteria_suite},
      {"9 negative controls", negative_controls},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %s: %s\n", o.pass() ? "PASS" : "FAIL", name.c_str(), o.summary().c_str());
    std::fflush(stdout);
    failures += !o.pass();
  }
  return failures == 0 ? 0 : 1;
}
