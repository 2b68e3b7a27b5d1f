// Randomized invariants. Each property runs over a fixed seed so failures
// replay; the failing case index is printed with every assertion.
#include <cmath>

#include <gtest/gtest.h>

#include "hyperforge/shift.hpp"
#include "hyperforge/spaces.hpp"
#include "support/oracles.hpp"

namespace hyperforge {
namespace {

using testing::SeqGen;

constexpr int kCases = 300;
constexpr long double kTol = 1e-12L;

std::vector<SpaceSpec> spaces() {
  return {SpaceSpec::make(SpaceId::lp, 1.0), SpaceSpec::make(SpaceId::lp, 3.0), SpaceSpec::make(SpaceId::c0),
          SpaceSpec::make(SpaceId::l1),      SpaceSpec::make(SpaceId::entire_hadamard),
          SpaceSpec::make(SpaceId::entire_cauchy)};
}

std::vector<Weight> weights() {
  return {Weight::constant(2.0), Weight::constant({0.0, 1.5}), Weight::maclane(),
          Weight::table({{2.0, 0}, {0.5, 0.5}, {3.0, 0}, {1.0, -1.0}, {4.0, 0}, {2.0, 2.0}, {1.5, 0}, {2.5, 0},
                         {1.0, 0}, {3.0, 1.0}, {2.0, 0}, {1.0, 1.0}, {2.0, -1.0}, {3.0, 0}, {2.0, 0}, {1.0, 0},
                         {2.0, 0}, {2.0, 0}, {2.0, 0}, {2.0, 0}, {2.0, 0}, {2.0, 0}, {2.0, 0}, {2.0, 0}})};
}

TEST(CauchyProductProperty, CommutativeAssociativeDistributive) {
  SeqGen gen(1001);
  for (int i = 0; i < kCases; ++i) {
    const FiniteSeq x = gen.next(), y = gen.next(), z = gen.next();
    EXPECT_LE(max_relative_difference(cauchy_product(x, y), cauchy_product(y, x)), kTol) << i;
    EXPECT_LE(max_relative_difference(cauchy_product(cauchy_product(x, y), z),
                                      cauchy_product(x, cauchy_product(y, z))),
              kTol)
        << i;
    EXPECT_LE(max_relative_difference(cauchy_product(x, y + z), cauchy_product(x, y) + cauchy_product(x, z)), kTol)
        << i;
  }
}

TEST(CauchyProductProperty, AgreesWithConvolution) {
  SeqGen gen(1002);
  for (int i = 0; i < kCases; ++i) {
    const FiniteSeq x = gen.next(), y = gen.next();
    EXPECT_LE(testing::relative_difference(cauchy_product(x, y),
                                           testing::naive_convolution(testing::dense(x), testing::dense(y))),
              kTol)
        << i;
    const unsigned m = 1 + i % 4;
    EXPECT_LE(testing::relative_difference(cauchy_power(x, m), testing::naive_power(testing::dense(x), m)), 1e-11L)
        << i << " m=" << m;
  }
}

TEST(CoordinatewiseProperty, DisjointSupportsGiveExactZero) {
  SeqGen gen(1003);
  for (int i = 0; i < kCases; ++i) {
    const FiniteSeq x = gen.next();
    FiniteSeq y;
    for (const auto& [n, c] : gen.next()) {
      if (x[n].is_zero()) y.set(n, c);
    }
    EXPECT_TRUE(coordinatewise_product(x, y).empty()) << i;
    EXPECT_LE(testing::relative_difference(coordinatewise_product(x, x),
                                           testing::naive_coordinatewise(testing::dense(x), testing::dense(x))),
              kTol)
        << i;
  }
}

TEST(ShiftProperty, BackwardUndoesForward) {
  SeqGen gen(1004);
  const std::vector<Weight> ws = weights();
  for (int i = 0; i < kCases; ++i) {
    const Weight& w = ws[i % ws.size()];
    const FiniteSeq x = gen.next(6, 10);
    const index_t a = static_cast<index_t>(gen.uniform(1, 12));
    const FiniteSeq back = backward_iterate(w, forward_iterate(w, x, a), a);
    EXPECT_LE(max_relative_difference(back, x), kTol) << i << " " << w.spec() << " a=" << a;
    EXPECT_LE(testing::relative_difference(backward_iterate(w, x, a), testing::naive_backward(w, testing::dense(x), a)),
              kTol)
        << i;
  }
}

TEST(ShiftProperty, FullPowerOfRootBlockIsTheForwardShift) {
  SeqGen gen(1005);
  const std::vector<Weight> ws = weights();
  for (int i = 0; i < kCases; ++i) {
    const Weight& w = ws[i % ws.size()];
    const FiniteSeq y = gen.next(4, 6);
    const index_t a = static_cast<index_t>(gen.uniform(1, 10));
    const unsigned m = static_cast<unsigned>(gen.uniform(1, 4));
    const FiniteSeq block = root_power_block(w, y, a, m, m);
    EXPECT_LE(max_relative_difference(block, forward_iterate(w, y, a)), 1e-11L) << i << " m=" << m;
    // The m-th coordinatewise power of the j=1 block lands on the same sequence.
    const FiniteSeq root = root_power_block(w, y, a, 1, m);
    EXPECT_LE(max_relative_difference(coordinatewise_power(root, m), block), 1e-11L) << i;
    EXPECT_LE(max_relative_difference(backward_iterate(w, block, a), y), 1e-11L) << i;
  }
}

TEST(SeminormProperty, TriangleAndHomogeneity) {
  SeqGen gen(1006);
  for (const SpaceSpec& space : spaces()) {
    for (int i = 0; i < kCases / 3; ++i) {
      const FiniteSeq x = gen.next(), y = gen.next();
      const unsigned q = static_cast<unsigned>(gen.uniform(1, 4));
      const double nx = seminorm_eval(space, q, x).upper;
      const double ny = seminorm_eval(space, q, y).upper;
      EXPECT_LE(seminorm_eval(space, q, x + y).upper, (nx + ny) * (1 + 1e-12)) << space.name() << " " << i;
      const double s = gen.uniform(1, 7) / 3.0;
      EXPECT_NEAR(seminorm_eval(space, q, x.scaled(WideComplex(s))).upper, s * nx, 1e-12 * s * nx + 1e-300)
          << space.name() << " " << i;
    }
  }
}

TEST(SeminormProperty, MonotoneInTheIndex) {
  SeqGen gen(1007);
  for (const SpaceSpec& space : spaces()) {
    if (space.id() == SpaceId::lp) continue;  // a norm, not an increasing family
    for (int i = 0; i < kCases / 3; ++i) {
      const FiniteSeq x = gen.next();
      double prev = 0;
      for (unsigned q = 1; q <= 5; ++q) {
        const double v = seminorm_eval(space, q, x).upper;
        EXPECT_GE(v, prev * (1 - 1e-12)) << space.name() << " q=" << q;
        prev = v;
      }
    }
  }
}

TEST(SeminormProperty, CauchySpacesAreSubmultiplicative) {
  SeqGen gen(1008);
  for (const SpaceSpec& space : {SpaceSpec::make(SpaceId::l1), SpaceSpec::make(SpaceId::entire_cauchy)}) {
    for (int i = 0; i < kCases / 3; ++i) {
      const FiniteSeq x = gen.next(), y = gen.next();
      const unsigned q = static_cast<unsigned>(gen.uniform(1, 4));
      EXPECT_LE(seminorm_eval(space, q, cauchy_product(x, y)).upper,
                seminorm_eval(space, q, x).upper * seminorm_eval(space, q, y).upper * (1 + 1e-12))
          << space.name() << " " << i;
    }
  }
}

TEST(SeminormProperty, CoordinatewiseSpacesAreSubmultiplicative) {
  SeqGen gen(1009);
  for (const SpaceSpec& space : {SpaceSpec::make(SpaceId::lp, 1.0), SpaceSpec::make(SpaceId::lp, 2.0),
                                 SpaceSpec::make(SpaceId::c0)}) {
    for (int i = 0; i < kCases / 3; ++i) {
      const FiniteSeq x = gen.next(), y = gen.next();
      EXPECT_LE(seminorm_eval(space, 1, coordinatewise_product(x, y)).upper,
                seminorm_eval(space, 1, x).upper * seminorm_eval(space, 1, y).upper * (1 + 1e-12))
          << space.name() << " " << i;
    }
  }
}

}  // namespace
}  // namespace hyperforge
