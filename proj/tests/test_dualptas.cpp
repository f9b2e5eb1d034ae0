#include <gtest/gtest.h>

#include "support.hpp"
#include "vqsignal/dualptas.hpp"
#include "vqsignal/objectives.hpp"
#include "vqsignal/oracle.hpp"

namespace vqsignal {
namespace {

using testing::load_fixture;

TEST(Separate, LargeConstantIsFeasible) {
  const Instance inst = load_fixture("a3.json");
  const double c = to_double(inst.inflow * inst.horizon) + 1;
  EXPECT_TRUE(separate(inst, DualPoint{c, c}).feasible());
}

TEST(Separate, ZeroViolatesAtTheMaximum) {
  const Instance inst = load_fixture("a1.json");
  const auto r = separate(inst, DualPoint{0, 0});
  ASSERT_FALSE(r.feasible());
  EXPECT_GT(r.violation->gap, 0);
  EXPECT_EQ(r.violation->gap, expected_throughput(inst, r.violation->belief));
  EXPECT_EQ(r.supremum, Rational(8, 5));
}

TEST(Separate, TangentLineOfEnvelope) {
  const Instance inst = load_fixture("a3.json");
  const auto env = concave_envelope_1d(extract_piecewise_1d(inst), inst.prior[1]);
  const double intercept = env.intercept.convert_to<double>();
  const double slope = env.slope.convert_to<double>();
  const SeparationOracle oracle(inst);
  const auto tangent = oracle.separate(DualPoint{intercept, intercept + slope});
  EXPECT_LE(to_double(tangent.supremum), 1e-9);
  const auto below = oracle.separate(DualPoint{intercept - 1e-3, intercept + slope - 1e-3});
  ASSERT_FALSE(below.feasible());
  const double x = to_double(below.violation->belief[1]);
  const double d = std::min(std::abs(x - env.left.convert_to<double>()), std::abs(x - 0.25));
  EXPECT_LT(d, 1e-6);
}

TEST(Separate, OracleIsReusable) {
  const Instance inst = load_fixture("a2.json");
  const SeparationOracle oracle(inst);
  EXPECT_GT(oracle.patch_count(), 0u);
  const auto a = oracle.separate(RationalVector{1, 1});
  const auto b = oracle.separate(RationalVector{1, 1});
  EXPECT_EQ(a.supremum, b.supremum);
}

TEST(DualRadius, TwoLinkExample) {
  EXPECT_DOUBLE_EQ(dual_radius(load_fixture("a1.json")), 90.0);
  EXPECT_GE(dual_radius_product(load_fixture("a1.json")), 90.0);
}

TEST(AdditivePtas, SingleScenario) {
  const Instance inst =
      parse_instance(R"({"capacities":["1/2","1"],"travel_times":[["1"],["2"]],"inflow":"1","horizon":"4","prior":["1"]})");
  const double opt = to_double(expected_throughput(inst, {1}));
  const auto r = solve_additive_ptas(inst, 0.01);
  EXPECT_LE(r.p, opt + 1e-9);
  EXPECT_GE(r.p, opt - 0.01 - 1e-9);
}

TEST(AdditivePtas, TwoLinkBracket) {
  const Instance inst = load_fixture("a1.json");
  const double opt = concave_envelope_1d(extract_piecewise_1d(inst), inst.prior[1]).value.convert_to<double>();
  const auto r = solve_additive_ptas(inst, 0.05);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.p, opt + 1e-6);
  EXPECT_GE(r.p, opt - 0.05 - 1e-6);
  EXPECT_LE(r.iterations, r.iteration_cap);
}

TEST(AdditivePtas, IrrationalBracket) {
  const Instance inst = load_fixture("a3.json");
  const double opt = concave_envelope_1d(extract_piecewise_1d(inst), inst.prior[1]).value.convert_to<double>();
  const auto r = solve_additive_ptas(inst, 0.02);
  EXPECT_LE(r.p, opt + 1e-6);
  EXPECT_GE(r.p, opt - 0.02 - 1e-6);
}

}  // namespace
}  // namespace vqsignal
