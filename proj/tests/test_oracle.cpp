#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "vqsignal/objectives.hpp"
#include "vqsignal/oracle.hpp"

namespace vqsignal {
namespace {

using testing::line_belief;
using testing::load_fixture;

Quadratic q(Rational a, Rational b, Rational c) { return Quadratic{std::move(a), std::move(b), std::move(c)}; }

TEST(ExtractPiecewise, IrrationalExamplePieces) {
  const auto pw = extract_piecewise_1d(load_fixture("a3.json"));
  EXPECT_EQ(pw.breakpoints, (RationalVector{0, Rational(2, 15), Rational(1, 4), Rational(2, 7), Rational(1, 3),
                                            Rational(39, 62), 1}));
  const std::vector<Quadratic> expected{
      q(Rational(-9, 2), Rational(1, 2), 4),
      q(Rational(1, 2), Rational(-1, 6), 4),
      q(Rational(23, 6), -7, Rational(11, 2)),
      q(Rational(-9, 8), Rational(-71, 24), Rational(19, 4)),
      q(Rational(18, 5), Rational(-1111, 120), Rational(253, 40)),
      q(Rational(37, 12), Rational(-101, 12), 6),
  };
  EXPECT_EQ(pw.pieces, expected);
}

TEST(ExtractPiecewise, TwoLinkExamplePieces) {
  const auto pw = extract_piecewise_1d(load_fixture("a1.json"));
  EXPECT_EQ(pw.breakpoints, (RationalVector{0, Rational(1, 5), Rational(3, 5), 1}));
  ASSERT_EQ(pw.pieces.size(), 3u);
  EXPECT_EQ(pw.pieces[0], q(Rational(5, 3), -1, Rational(4, 3)));
  EXPECT_EQ(pw.pieces[1], q(0, 1, 1));
  EXPECT_EQ(pw.pieces[2], q(Rational(10, 3), -6, 4));
  EXPECT_TRUE(pw.discontinuities().empty());
}

TEST(ExtractPiecewise, MakespanPieces) {
  const auto pw = extract_piecewise_1d(load_fixture("a2.json"), Objective::Makespan);
  EXPECT_EQ(pw.interior_breakpoints(), (RationalVector{Rational(1, 10), Rational(1, 5), Rational(2, 5), Rational(1, 2),
                                                      Rational(3, 4), Rational(7, 8)}));
  const std::vector<Quadratic> expected{
      q(0, 5, 1),
      q(-5, 6, Rational(7, 5)),
      q(-5, Rational(19, 2), Rational(7, 10)),
      q(0, 0, Rational(5, 2)),
      q(-4, Rational(2, 5), Rational(43, 10)),
      q(-4, Rational(16, 5), Rational(11, 5)),
      q(0, -4, 5),
  };
  EXPECT_EQ(pw.pieces, expected);
  EXPECT_EQ(pw.discontinuities(), (RationalVector{Rational(1, 10), Rational(2, 5), Rational(1, 2), Rational(7, 8)}));
}

TEST(ExtractPiecewise, SingleLinkIsAffine) {
  const Instance inst =
      parse_instance(R"({"capacities":["1/2"],"travel_times":[["1","3"]],"inflow":"1","horizon":"4","prior":["1/2","1/2"]})");
  const auto pw = extract_piecewise_1d(inst);
  ASSERT_EQ(pw.pieces.size(), 1u);
  // x * (1/2)(4-3) + (1-x) * (1/2)(4-1)
  EXPECT_EQ(pw.pieces[0], q(0, -1, Rational(3, 2)));
}

TEST(ExtractPiecewise, EvaluateMatchesObjective) {
  const Instance inst = load_fixture("a3.json");
  const auto pw = extract_piecewise_1d(inst);
  for (int n = 0; n <= 200; ++n) {
    const Rational x = testing::frac(n, 200);
    EXPECT_EQ(pw.evaluate(x), expected_throughput(inst, line_belief(x))) << "x=" << x;
  }
}

TEST(ConcaveEnvelope, ConcaveFunctionIsItsOwnEnvelope) {
  PiecewiseQuadratic1D pw{{0, 1}, {q(-1, 1, 0)}, {0, 0}};
  const auto env = concave_envelope_1d(pw, Rational(1, 3));
  EXPECT_NEAR(env.value.convert_to<double>(), 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(env.left.convert_to<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(env.right.convert_to<double>(), 1.0 / 3.0, 1e-12);
}

TEST(ConcaveEnvelope, IrrationalSupport) {
  const Instance inst = load_fixture("a3.json");
  const auto env = concave_envelope_1d(extract_piecewise_1d(inst), Rational(3, 20));
  using boost::multiprecision::sqrt;
  const HighPrecision mu1 = (HighPrecision(9) - sqrt(HighPrecision(42))) / 36;
  EXPECT_LT(abs(env.left - mu1), HighPrecision(1e-9));
  ASSERT_TRUE(env.exact_right);
  EXPECT_EQ(*env.exact_right, Rational(1, 4));
  EXPECT_LE(env.max_violation, HighPrecision(1e-30));
}

TEST(ConcaveEnvelope, TwoLinkChord) {
  const Instance inst = load_fixture("a1.json");
  const auto env = concave_envelope_1d(extract_piecewise_1d(inst), Rational(7, 16));
  ASSERT_TRUE(env.exact_left && env.exact_right);
  EXPECT_EQ(*env.exact_left, 0);
  EXPECT_EQ(*env.exact_right, Rational(3, 5));
  // Chord from (0, 4/3) to (3/5, 8/5) at 7/16 is 55/36.
  EXPECT_LT(abs(env.value - to_high_precision(Rational(55, 36))), HighPrecision(1e-40));
}

TEST(BruteForce, RefinementIsMonotone) {
  const Instance inst = load_fixture("a3.json");
  double previous = 0;
  for (unsigned n = 10; n <= 640; n *= 2) {
    const double v = brute_force_opt(inst, n);
    EXPECT_GE(v, previous - 1e-12);
    previous = v;
  }
}

TEST(BruteForce, AgreesWithEnvelope) {
  const Instance inst = load_fixture("a3.json");
  const auto env = concave_envelope_1d(extract_piecewise_1d(inst), inst.prior[1]);
  EXPECT_NEAR(brute_force_opt(inst, 2000), env.value.convert_to<double>(), 1e-4);
}

TEST(BruteForce, SingleScenario) {
  const Instance inst =
      parse_instance(R"({"capacities":["1/2","1"],"travel_times":[["1"],["2"]],"inflow":"1","horizon":"4","prior":["1"]})");
  EXPECT_DOUBLE_EQ(brute_force_opt(inst, 10), to_double(expected_throughput(inst, {1})));
}

}  // namespace
}  // namespace vqsignal
