#include <cmath>

#include <gtest/gtest.h>

#include "hyperforge/element_parser.hpp"
#include "hyperforge/error.hpp"
#include "hyperforge/io.hpp"
#include "hyperforge/verify.hpp"
#include "support/oracles.hpp"

namespace hyperforge {
namespace {

const SpaceSpec kLp1 = SpaceSpec::make(SpaceId::lp, 1.0);
const SpaceSpec kL1 = SpaceSpec::make(SpaceId::l1);
const Weight kTwo = Weight::constant(2.0);

const CoordBundle& coord12() {
  static const CoordBundle b = build_generator(kLp1, kTwo, default_base_targets(), 12);
  return b;
}
const CoordBundle& coord_k3() {
  static const CoordBundle b = build_algebrable(kLp1, kTwo, default_base_targets(), 3, 12);
  return b;
}
const CauchyBundle& cauchy8() {
  static const CauchyBundle b = build_generator_cauchy(kL1, kTwo, default_base_targets(), 8);
  return b;
}
const CauchyBundle& cauchy_k2() {
  static const CauchyBundle b = build_algebrable_cauchy(kL1, kTwo, default_base_targets(), 2, 8);
  return b;
}

void expect_rows_consistent(const OrbitReport& rep) {
  for (const OrbitRow& row : rep.rounds) {
    if (row.skipped) continue;
    EXPECT_EQ(row.pass, row.distance <= row.bound) << "round " << row.round;
    EXPECT_DOUBLE_EQ(row.distance, row.measured + row.allowance);
    EXPECT_NEAR(row.ratio, row.distance / row.bound, 1e-15);
  }
}

TEST(OrbitPowerReport, CoordinatewiseBoundsHold) {
  const OrbitReport rep = orbit_power_report(coord12(), 1);
  EXPECT_TRUE(rep.summary.pass);
  EXPECT_GT(rep.summary.checked, 0u);
  EXPECT_LE(rep.summary.max_ratio, 1.0);
  expect_rows_consistent(rep);
  for (const OrbitRow& row : rep.rounds) {
    EXPECT_EQ(row.bound, std::pow(2.0, -static_cast<double>(row.round)));
    EXPECT_EQ(PairingOrder::pair_of(row.round).m, 1u);
  }
  EXPECT_EQ(rep.bundle_id, bundle_id(coord12()));
}

TEST(OrbitPowerReport, MeasuredDistanceMatchesOracle) {
  // Recompute ||T^a x - y||_1 for every row from the raw blocks.
  const CoordBundle& b = coord12();
  const OrbitReport rep = orbit_power_report(b, 1);
  const testing::Dense x = testing::dense(b.generator());
  for (const OrbitRow& row : rep.rounds) {
    testing::Dense back = testing::naive_backward(kTwo, x, row.a);
    const testing::Dense y = testing::dense(b.targets[*row.target]);
    if (back.size() < y.size()) back.resize(y.size());
    long double dist = 0;
    for (std::size_t n = 0; n < back.size(); ++n) dist += std::abs(back[n] - (n < y.size() ? y[n] : 0.0L));
    EXPECT_NEAR(static_cast<double>(dist), row.measured, 1e-12 * std::max(1.0, row.measured)) << row.round;
  }
}

TEST(OrbitPowerReport, HighPowersAndEmptyReports) {
  const OrbitReport two = orbit_power_report(coord12(), 2);
  EXPECT_TRUE(two.summary.pass);
  for (const OrbitRow& row : two.rounds) EXPECT_EQ(PairingOrder::pair_of(row.round).m, 2u);
  const OrbitReport none = orbit_power_report(coord12(), 40);
  EXPECT_TRUE(none.rounds.empty());
  EXPECT_TRUE(none.summary.pass);
}

TEST(OrbitPowerReport, CauchyBounds) {
  const OrbitReport one = orbit_power_report(cauchy8(), 1);
  EXPECT_TRUE(one.summary.pass);
  expect_rows_consistent(one);
  bool saw_zero_target = false;
  for (const OrbitRow& row : one.rounds) {
    const unsigned m = PairingOrder::pair_of(row.round).m;
    if (m == 1) {
      EXPECT_EQ(row.bound, std::pow(2.0, 1 - static_cast<double>(row.round)));
      EXPECT_TRUE(row.target.has_value());
    } else {
      EXPECT_EQ(row.bound, std::pow(2.0, -static_cast<double>(row.round)));
      EXPECT_FALSE(row.target.has_value());
      saw_zero_target = true;
    }
  }
  EXPECT_TRUE(saw_zero_target);
  EXPECT_THROW(orbit_power_report(cauchy_k2(), 1), Error);
}

TEST(OrbitPowerReport, ReproducibleAcrossSerialization) {
  const OrbitReport a = orbit_power_report(cauchy8(), 1);
  const CauchyBundle reread = cauchy_bundle_from_json(json::parse(to_json(cauchy8()).dump()));
  const OrbitReport b = orbit_power_report(reread, 1);
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(OrbitElementReport, SingleGeneratorReducesToPowerReport) {
  const OrbitReport elem = orbit_element_report(coord12(), parse_algebra_element("x1"));
  const OrbitReport pow = orbit_power_report(coord12(), 1);
  ASSERT_EQ(elem.rounds.size(), pow.rounds.size());
  for (std::size_t i = 0; i < elem.rounds.size(); ++i) {
    EXPECT_EQ(elem.rounds[i].round, pow.rounds[i].round);
    EXPECT_DOUBLE_EQ(elem.rounds[i].measured, pow.rounds[i].measured);
    EXPECT_DOUBLE_EQ(elem.rounds[i].bound, 2 * pow.rounds[i].bound);
  }
}

TEST(OrbitElementReport, CoordinatewisePolynomial) {
  const OrbitReport rep = orbit_element_report(coord_k3(), parse_algebra_element("x1^2 + 0.3*x1^3"));
  EXPECT_TRUE(rep.summary.pass);
  EXPECT_GT(rep.summary.checked, 0u);
  for (const OrbitRow& row : rep.rounds) {
    if (!row.skipped) EXPECT_NEAR(row.bound, 2.3 * std::pow(2.0, -static_cast<double>(row.round)), 1e-15);
  }
  expect_rows_consistent(rep);
}

TEST(OrbitElementReport, CrossProductIsDegenerate) {
  const OrbitReport rep = orbit_element_report(coord_k3(), parse_algebra_element("x1*x2"));
  EXPECT_TRUE(rep.summary.degenerate);
  EXPECT_TRUE(rep.summary.pass);
  EXPECT_TRUE(rep.rounds.empty());
}

TEST(OrbitElementReport, CauchyAlgebrableUsesLeadingForm) {
  const AlgebraElement z = parse_algebra_element("x1*x2 + x1");
  const OrbitReport rep = orbit_element_report(cauchy_k2(), z);
  EXPECT_TRUE(rep.summary.pass);
  EXPECT_GT(rep.summary.checked, 0u);
  expect_rows_consistent(rep);
  const auto C = tail_constants(z);
  for (const OrbitRow& row : rep.rounds) {
    const CauchyRound& r = cauchy_k2().rounds[row.round - 1];
    const double rho = std::abs(leading_form_value(z, r.lambda_column));
    EXPECT_NEAR(row.bound, rho * std::pow(2.0, -static_cast<double>(row.round)) + tail_bound(2, C, row.round),
                1e-15);
  }
}

TEST(OrbitElementReport, RejectsZeroAndOversizedElements) {
  EXPECT_THROW(orbit_element_report(coord12(), AlgebraElement{}), Error);
  EXPECT_THROW(orbit_element_report(coord12(), parse_algebra_element("x4")), Error);
}

TEST(ExpansionOracle, BinomialSquare) {
  const CauchyBundle two = build_generator_cauchy(kL1, kTwo, default_base_targets(), 2);
  const ExpansionComparison cmp = expansion_oracle(two, parse_algebra_element("x1^2"));
  EXPECT_TRUE(cmp.pass);
  EXPECT_FALSE(cmp.partial);
  // (p1 + p2)^2 = p1^2 + 2 p1 p2 + p2^2
  ASSERT_EQ(cmp.coefficients.size(), 3u);
  EXPECT_EQ(cmp.coefficients.at({2, 0}), std::complex<double>(1.0));
  EXPECT_EQ(cmp.coefficients.at({1, 1}), std::complex<double>(2.0));
  EXPECT_EQ(cmp.coefficients.at({0, 2}), std::complex<double>(1.0));
  const testing::Dense p1 = testing::dense(two.rounds[0].p), p2 = testing::dense(two.rounds[1].p);
  testing::Dense want = testing::naive_power(testing::naive_convolution(p1, {1.0L}), 2);
  const testing::Dense cross = testing::naive_convolution(p1, p2);
  const testing::Dense sq2 = testing::naive_power(p2, 2);
  want.resize(std::max({want.size(), cross.size(), sq2.size()}));
  for (std::size_t n = 0; n < cross.size(); ++n) want[n] += 2.0L * cross[n];
  for (std::size_t n = 0; n < sq2.size(); ++n) want[n] += sq2[n];
  EXPECT_LE(testing::relative_difference(cmp.direct, want), 1e-12L);
}

TEST(ExpansionOracle, RandomElementsAgree) {
  const CauchyBundle b = build_algebrable_cauchy(kL1, kTwo, default_base_targets(), 2, 4);
  testing::SeqGen gen(99);
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraElement z;
    const unsigned terms = gen.uniform(1, 4);
    for (unsigned t = 0; t < terms; ++t) {
      MultiIndex beta{gen.uniform(0, 3), gen.uniform(0, 3)};
      if (beta[0] + beta[1] == 0 || beta[0] + beta[1] > 3) beta = {1, 0};
      z.add_term(beta, gen.unit_disk());
    }
    if (z.is_zero()) continue;
    const ExpansionComparison cmp = expansion_oracle(b, z);
    EXPECT_TRUE(cmp.pass) << z.to_string() << " rel " << static_cast<double>(cmp.relative_difference);
    EXPECT_LE(cmp.relative_difference, 1e-10L);
  }
}

TEST(ExpansionOracle, TopCoefficientIsLeadingForm) {
  const AlgebraElement z = parse_algebra_element("x1*x2 + x1");
  const CauchyBundle& b = cauchy_k2();
  const ExpansionComparison cmp = expansion_oracle(b, z, 2);
  for (std::size_t i = 0; i < b.rounds.size(); ++i) {
    MultiIndex alpha(b.rounds.size(), 0);
    alpha[i] = 2;
    const std::complex<double> rho = leading_form_value(z, b.rounds[i].lambda_column);
    const auto it = cmp.coefficients.find(alpha);
    const std::complex<double> got = it == cmp.coefficients.end() ? 0.0 : it->second;
    EXPECT_NEAR(std::abs(got - rho), 0.0, 1e-12) << "block " << i + 1;
  }
}

TEST(ExpansionOracle, DegreeCapMarksPartial) {
  // Every term is above the cap, so nothing is compared.
  const ExpansionComparison cmp = expansion_oracle(cauchy8(), parse_algebra_element("x1^3"), 2);
  EXPECT_TRUE(cmp.partial);
  EXPECT_TRUE(cmp.coefficients.empty());
  const ExpansionComparison mixed = expansion_oracle(cauchy8(), parse_algebra_element("x1^3 + x1"), 2);
  EXPECT_TRUE(mixed.partial);
  EXPECT_TRUE(mixed.pass);
  EXPECT_EQ(mixed.coefficients.size(), cauchy8().rounds.size());
  EXPECT_THROW(expansion_oracle(cauchy8(), parse_algebra_element("x2")), Error);
}

TEST(ZeroProducts, ThreeGenerators) {
  const ZeroProductReport rep = zero_product_report(coord_k3());
  EXPECT_TRUE(rep.pass);
  ASSERT_EQ(rep.pairs.size(), 3u);
  for (const ZeroProductPair& p : rep.pairs) {
    EXPECT_TRUE(p.pass);
    EXPECT_FALSE(p.witness.has_value());
  }
}

TEST(ZeroProducts, SingleGeneratorIsVacuous) {
  const ZeroProductReport rep = zero_product_report(coord12());
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.pairs.empty());
}

TEST(ZeroProducts, OverlapIsReportedWithIndex) {
  CoordBundle b = coord_k3();
  // Copy a coefficient of generator 1 into a block of generator 2.
  const index_t n = b.rounds[0].block.min_index();
  for (CoordRound& r : b.rounds) {
    if (r.generator == 2) {
      r.block.set(n, WideComplex(1.0));
      break;
    }
  }
  const ZeroProductReport rep = zero_product_report(b);
  EXPECT_FALSE(rep.pass);
  bool found = false;
  for (const ZeroProductPair& p : rep.pairs) {
    if (p.k == 1 && p.k2 == 2) {
      EXPECT_FALSE(p.pass);
      ASSERT_TRUE(p.witness.has_value());
      EXPECT_EQ(*p.witness, n);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(NonFiniteGeneration, HoldsOnAlgebrableBundle) {
  const GenerationReport rep = non_finite_generation_report(cauchy_k2());
  EXPECT_TRUE(rep.pass);
  EXPECT_FALSE(rep.rounds.empty());
  for (const GenerationRow& row : rep.rounds) {
    EXPECT_TRUE(row.generators_vanish);
    EXPECT_TRUE(std::isfinite(row.power_log_abs));
  }
}

TEST(PerturbationControl, DoubledBlockFailsAReport) {
  CoordBundle b = coord12();
  b.rounds[6].block = b.rounds[6].block.scaled(2.0);
  const bool reval = revalidate(b).pass;
  const bool report = orbit_power_report(b, 1).summary.pass;
  EXPECT_FALSE(reval && report);
}

}  // namespace
}  // namespace hyperforge
