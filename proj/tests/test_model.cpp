#include <gtest/gtest.h>

#include "support.hpp"
#include "vqsignal/error.hpp"
#include "vqsignal/rational.hpp"

namespace vqsignal {
namespace {

using testing::load_fixture;

TEST(ParseInstance, NetworkWithTwoLinksAndTwoScenarios) {
  const Instance inst = load_fixture("a1.json");
  EXPECT_EQ(inst.links(), 2u);
  EXPECT_EQ(inst.scenarios(), 2u);
  EXPECT_EQ(inst.capacities[0], Rational(1, 3));
  EXPECT_EQ(inst.travel_times[1][0], 4);
  EXPECT_EQ(inst.prior[1], Rational(7, 16));
}

TEST(ParseInstance, PriorMustSumToOne) {
  const std::string doc =
      R"({"capacities":["1"],"travel_times":[["1","2"]],"inflow":"1","horizon":"3","prior":["1/2","1/3"]})";
  try {
    parse_instance(doc);
    FAIL() << "expected an input error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("prior does not sum to 1"), std::string::npos);
  }
}

TEST(ParseInstance, SingleLinkSingleScenario) {
  const Instance inst =
      parse_instance(R"({"capacities":["2"],"travel_times":[["1"]],"inflow":"1","horizon":"3","prior":["1"]})");
  EXPECT_EQ(inst.links(), 1u);
  EXPECT_EQ(inst.scenarios(), 1u);
}

TEST(ParseInstance, ErrorsNameTheField) {
  const std::string doc =
      R"({"capacities":["1","x"],"travel_times":[["1"],["2"]],"inflow":"1","horizon":"3","prior":["1"]})";
  try {
    parse_instance(doc);
    FAIL() << "expected an input error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("capacities[1]"), std::string::npos);
  }
  EXPECT_THROW(parse_instance(R"({"capacities":["1"]})"), InputError);
  EXPECT_THROW(parse_instance("{"), InputError);
  EXPECT_THROW(parse_instance(R"({"capacities":["0"],"travel_times":[["1"]],"inflow":"1","horizon":"3","prior":["1"]})"),
               InputError);
  EXPECT_THROW(parse_instance(R"({"capacities":["1"],"travel_times":[["-1"]],"inflow":"1","horizon":"3","prior":["1"]})"),
               InputError);
}

TEST(ExpectedTravelTimes, UnitBeliefPicksColumn) {
  const Instance inst = load_fixture("a1.json");
  EXPECT_EQ(expected_travel_times(inst, unit_belief(2, 0)), (RationalVector{1, 4}));
}

TEST(ExpectedTravelTimes, IndifferencePoint) {
  const Instance inst = load_fixture("a1.json");
  EXPECT_EQ(expected_travel_times(inst, {Rational(2, 5), Rational(3, 5)}), (RationalVector{Rational(17, 5), Rational(17, 5)}));
}

TEST(ExpectedTravelTimes, ThreeLinks) {
  const Instance inst = load_fixture("a3.json");
  EXPECT_EQ(expected_travel_times(inst, {Rational(1, 2), Rational(1, 2)}),
            (RationalVector{Rational(11, 2), Rational(5), Rational(4)}));
}

TEST(Beliefs, Validation) {
  const Instance inst = load_fixture("a1.json");
  EXPECT_NO_THROW(validate_belief(inst, parse_belief("2/5,3/5")));
  EXPECT_THROW(validate_belief(inst, parse_belief("1/2,1/3")), InputError);
  EXPECT_THROW(validate_belief(inst, parse_belief("1")), InputError);
  EXPECT_THROW(validate_belief(inst, parse_belief("3/2,-1/2")), InputError);
}

TEST(Rationals, ParseAndRender) {
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_EQ(to_string(Rational(3, 4)), "3/4");
  EXPECT_EQ(to_decimal(Rational(1, 3)), "0.333333333333");
  EXPECT_EQ(from_double(0.375), Rational(3, 8));
  EXPECT_EQ(power(Rational(1, 2), 3), Rational(1, 8));
}

TEST(Rationals, ExtendedOrdering) {
  const auto inf = ExtendedRational::infinity();
  EXPECT_FALSE(inf.is_finite());
  EXPECT_LT(ExtendedRational(Rational(10)), inf);
  EXPECT_EQ(inf, ExtendedRational::infinity());
  EXPECT_LT(ExtendedRational(Rational(1, 3)), ExtendedRational(Rational(1, 2)));
}

}  // namespace
}  // namespace vqsignal
