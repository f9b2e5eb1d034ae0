#include <gtest/gtest.h>

#include "support.hpp"
#include "vqsignal/equilibrium.hpp"

namespace vqsignal {
namespace {

using testing::load_fixture;

const RationalVector kCapacities{Rational(1, 3), Rational(2, 3)};
const RationalVector kBlue{1, 4};

TEST(SolveDeterministic, TwoLinkRecursion) {
  const auto p = solve_deterministic(kCapacities, kBlue, 1);
  EXPECT_EQ(p.order, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p.breakpoint(0), ExtendedRational(Rational(0)));
  EXPECT_EQ(p.breakpoint(1), ExtendedRational(Rational(3, 2)));
  EXPECT_EQ(p.k, 1u);
}

TEST(SolveDeterministic, FirstLinkAbsorbsInflow) {
  const auto p = solve_deterministic({Rational(2), Rational(1)}, {Rational(3), Rational(1)}, 1);
  EXPECT_EQ(p.order, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(p.k, 0u);
  EXPECT_FALSE(p.breakpoint(0).is_finite());
}

TEST(SolveDeterministic, EqualTravelTimes) {
  const auto p = solve_deterministic(kCapacities, {Rational(2), Rational(2)}, 1);
  EXPECT_EQ(p.breakpoint(1), ExtendedRational(Rational(0)));
  EXPECT_EQ(inflow(p, 0, 0) + inflow(p, 1, 0), 1);
  EXPECT_EQ(inflow(p, 1, 0), Rational(2, 3));
}

TEST(SolveWithOrder, RejectsUnsortedOrder) {
  EXPECT_THROW(solve_with_order(kCapacities, kBlue, 1, {1, 0}), std::exception);
  const auto p = solve_with_order(kCapacities, {Rational(2), Rational(2)}, 1, {1, 0});
  EXPECT_EQ(p.order, (std::vector<std::size_t>{1, 0}));
}

TEST(Inflow, Branches) {
  const auto p = solve_deterministic(kCapacities, kBlue, 1);
  EXPECT_EQ(inflow(p, 0, 1), 1);
  EXPECT_EQ(inflow(p, 0, 2), Rational(1, 3));
  EXPECT_EQ(inflow(p, 1, 1), 0);
  EXPECT_EQ(inflow(p, 1, 2), Rational(2, 3));
}

TEST(QueueLength, GrowthAndPlateau) {
  const auto p = solve_deterministic(kCapacities, kBlue, 1);
  EXPECT_EQ(queue_length(p, 0, Rational(3, 4)), Rational(1, 2));
  EXPECT_EQ(queue_length(p, 0, Rational(3, 2)), 1);
  EXPECT_EQ(queue_length(p, 0, 100), 1);
  EXPECT_EQ(queue_length(p, 1, 1), 0);
  EXPECT_EQ(queue_length(p, 1, 10), 0);
}

TEST(ExitTime, EqualOnSupport) {
  const auto p = solve_deterministic(kCapacities, kBlue, 1);
  EXPECT_EQ(exit_time(p, 0, Rational(3, 2), kBlue), Rational(11, 2));
  EXPECT_EQ(exit_time(p, 1, Rational(3, 2), kBlue), Rational(11, 2));
  EXPECT_EQ(exit_time(p, 1, 0, kBlue), 4);
}

TEST(ExitTime, BeliefProfileWithRealizedScenario) {
  const Instance inst = load_fixture("a1.json");
  const auto p = solve_for_belief(inst, {Rational(2, 5), Rational(3, 5)});
  EXPECT_EQ(exit_time(p, 1, 0, inst.scenario_column(0)), 4);
}

TEST(SolveForBelief, DegenerateBeliefMatchesScenario) {
  const Instance inst = load_fixture("a1.json");
  const auto a = solve_for_belief(inst, unit_belief(2, 0));
  const auto b = solve_deterministic(inst.capacities, inst.scenario_column(0), inst.inflow);
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.thresholds, b.thresholds);
}

TEST(SolveForBelief, IndifferentLinksBothUsedAtOnce) {
  const Instance inst = load_fixture("a1.json");
  const auto p = solve_for_belief(inst, {Rational(2, 5), Rational(3, 5)});
  EXPECT_EQ(p.breakpoint(0), ExtendedRational(Rational(0)));
  EXPECT_EQ(p.breakpoint(1), ExtendedRational(Rational(0)));
}

TEST(SolveForBelief, RedColumnOrder) {
  const Instance inst = load_fixture("a3.json");
  EXPECT_EQ(solve_for_belief(inst, unit_belief(2, 1)).order, (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(link_order(inst, unit_belief(2, 1)), (std::vector<std::size_t>{2, 1, 0}));
}

TEST(FirstExitTimes, BreakpointPlusTravelTime) {
  const Instance inst = load_fixture("a1.json");
  const auto omega = first_exit_times(inst, unit_belief(2, 0));
  EXPECT_EQ(omega[0][0], ExtendedRational(Rational(1)));
  EXPECT_EQ(omega[1][0], ExtendedRational(Rational(11, 2)));
  EXPECT_EQ(omega[1][1], ExtendedRational(Rational(9, 2)));
}

TEST(QueueCoefficients, MatchPointwiseQueue) {
  const auto p = solve_deterministic({Rational(1, 4), Rational(1, 4), Rational(1, 3)}, {1, 2, 4}, 1);
  const auto coeffs = queue_coefficients(p);
  for (std::size_t i = 0; i < 3; ++i)
    for (int n = 0; n <= 40; ++n) {
      const Rational theta = testing::frac(n, 4);
      for (const auto& seg : coeffs[i])
        if (theta >= seg.start && ExtendedRational(theta) < seg.end)
          EXPECT_EQ(seg.slope * theta + seg.intercept, queue_length(p, i, theta));
    }
}

TEST(BreakpointForms, AgreeWithSolver) {
  const Instance inst = load_fixture("a3.json");
  const Belief mu{Rational(7, 10), Rational(3, 10)};
  const auto order = link_order(inst, mu);
  const auto forms = breakpoint_forms(inst, order);
  const auto p = solve_for_belief(inst, mu);
  for (std::size_t i = 0; i < inst.links(); ++i) {
    if (forms[i]) {
      EXPECT_EQ(ExtendedRational((*forms[i])(mu)), p.breakpoint(i));
    } else {
      EXPECT_FALSE(p.breakpoint(i).is_finite());
    }
  }
}

}  // namespace
}  // namespace vqsignal
