#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "vqsignal/arrangement.hpp"
#include "vqsignal/dualptas.hpp"
#include "vqsignal/equilibrium.hpp"
#include "vqsignal/fptas.hpp"
#include "vqsignal/io.hpp"
#include "vqsignal/objectives.hpp"
#include "vqsignal/oracle.hpp"

namespace vqsignal {
namespace {

using testing::InstanceShape;
using testing::line_belief;
using testing::load_fixture;
using testing::random_belief;
using testing::random_instance;
using testing::random_rational;

constexpr int kCases = 200;

TEST(Properties, InflowsSplitTheDemand) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 0; n < kCases; ++n) {
    const Instance inst = random_instance(rng, {.links = 1 + n % 5, .scenarios = 2});
    const auto p = solve_for_belief(inst, random_belief(rng, 2));
    for (int t = 0; t < 20; ++t) {
      const Rational theta = random_rational(rng, 0, 80, 4);
      Rational total = 0;
      for (std::size_t i = 0; i < inst.links(); ++i) {
        const Rational f = inflow(p, i, theta);
        EXPECT_GE(f, 0);
        total += f;
        EXPECT_GE(queue_length(p, i, theta), 0);
      }
      EXPECT_EQ(total, inst.inflow);
    }
  }
}

TEST(Properties, SupportLinksShareTheEarliestExit) {
  std::mt19937_64 rng(2);
  for (std::size_t n = 0; n < kCases; ++n) {
    const Instance inst = random_instance(rng, {.links = 2 + n % 4, .scenarios = 3});
    const auto p = solve_for_belief(inst, random_belief(rng, 3));
    for (int t = 0; t < 20; ++t) {
      const Rational theta = random_rational(rng, 0, 80, 4);
      Rational best = exit_time(p, 0, theta, p.effective_tt);
      for (std::size_t i = 1; i < inst.links(); ++i) best = std::min(best, exit_time(p, i, theta, p.effective_tt));
      for (std::size_t i = 0; i < inst.links(); ++i)
        if (inflow(p, i, theta) > 0) EXPECT_EQ(exit_time(p, i, theta, p.effective_tt), best);
    }
  }
}

TEST(Properties, ClosedFormThroughputMatchesIntegral) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 0; n < kCases; ++n) {
    const Instance inst = random_instance(rng, {.links = 1 + n % 5, .scenarios = 2});
    const Belief mu = random_belief(rng, 2);
    for (std::size_t s = 0; s < 2; ++s) {
      const Rational f = throughput_scenario(inst, mu, s);
      EXPECT_EQ(f, integrated_throughput(inst, mu, s));
      EXPECT_GE(f, 0);
      EXPECT_LE(f, inst.inflow * inst.horizon);
    }
  }
}

TEST(Properties, MisperceptionNeverShortensMakespan) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 0; n < 1000; ++n) {
    const Instance inst = random_instance(rng, {.links = 2 + n % 3, .scenarios = 1});
    const auto tau = inst.scenario_column(0);
    RationalVector perceived;
    for (std::size_t i = 0; i < inst.links(); ++i) perceived.push_back(random_rational(rng, 0, 10, 2));
    EXPECT_GE(makespan_with_perceived(inst.capacities, tau, inst.inflow, inst.horizon, perceived),
              makespan_with_perceived(inst.capacities, tau, inst.inflow, inst.horizon, tau));
  }
}

TEST(Properties, FullInformationMinimisesMakespan) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 0; n < 50; ++n) {
    const Instance inst = random_instance(rng, {.links = 3, .scenarios = 2});
    const Rational full = scheme_makespan(inst, full_information(inst));
    const Rational lambda = inst.prior[1];
    for (int t = 0; t < 20; ++t) {
      // Two-point split of the prior at x < lambda < y.
      const Rational x = lambda * random_rational(rng, 0, 99, 100);
      const Rational y = lambda + (1 - lambda) * random_rational(rng, 1, 100, 100);
      const Rational w = (y - lambda) / (y - x);
      SignalingScheme scheme{{{w, line_belief(x)}, {Rational(1 - w), line_belief(y)}}};
      ASSERT_FALSE(scheme_violation(inst, scheme));
      EXPECT_LE(full, scheme_makespan(inst, scheme));
    }
  }
}

TEST(Properties, PiecewiseMatchesPointwiseEvaluation) {
  std::mt19937_64 rng(6);
  for (std::size_t n = 0; n < 60; ++n) {
    const Instance inst = random_instance(rng, {.links = 1 + n % 4, .scenarios = 2});
    const auto throughput = extract_piecewise_1d(inst, Objective::Throughput);
    const auto makespan = extract_piecewise_1d(inst, Objective::Makespan);
    for (int t = 0; t < 40; ++t) {
      const Rational x = random_rational(rng, 0, 1000, 1000);
      EXPECT_EQ(throughput.evaluate(x), expected_throughput(inst, line_belief(x)));
      EXPECT_EQ(makespan.evaluate(x), expected_makespan(inst, line_belief(x)));
    }
    for (const auto& b : throughput.breakpoints) EXPECT_EQ(throughput.evaluate(b), expected_throughput(inst, line_belief(b)));
  }
}

TEST(Properties, EnvelopeDominatesAndIsConcave) {
  const Instance inst = load_fixture("a3.json");
  const auto pw = extract_piecewise_1d(inst);
  std::mt19937_64 rng(7);
  auto envelope = [&](const Rational& x) { return concave_envelope_1d(pw, x).value; };
  for (std::size_t n = 0; n < 10000; ++n) {
    const Rational x = random_rational(rng, 0, 100000, 100000);
    EXPECT_GE(envelope(x) + HighPrecision(1e-30), to_high_precision(pw.evaluate(x)));
  }
  for (std::size_t n = 0; n < 500; ++n) {
    const Rational a = random_rational(rng, 0, 1000, 1000), b = random_rational(rng, 0, 1000, 1000);
    EXPECT_GE(envelope((a + b) / 2) + HighPrecision(1e-30), (envelope(a) + envelope(b)) / 2);
  }
}

// Best two-point decomposition of lambda found by a grid followed by alternating golden-section refinement.
double dense_two_point(const PiecewiseQuadratic1D& pw, double lambda) {
  auto f = [&](double x) { return to_double(pw.evaluate(from_double(x))); };
  auto chord = [&](double a, double b) {
    if (b - a < 1e-15) return f(lambda);
    return f(a) + (f(b) - f(a)) * (lambda - a) / (b - a);
  };
  const int grid = 400;
  double best = f(lambda), ba = lambda, bb = lambda;
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) {
      const double a = lambda * i / grid, b = lambda + (1 - lambda) * j / grid;
      const double v = chord(a, b);
      if (v > best) best = v, ba = a, bb = b;
    }
  auto golden = [](auto g, double lo, double hi) {
    const double r = (std::sqrt(5.0) - 1) / 2;
    for (int k = 0; k < 100; ++k) {
      const double m1 = hi - r * (hi - lo), m2 = lo + r * (hi - lo);
      if (g(m1) < g(m2)) lo = m1; else hi = m2;
    }
    return (lo + hi) / 2;
  };
  const double step_a = lambda / grid, step_b = (1 - lambda) / grid;
  for (int round = 0; round < 20; ++round) {
    ba = golden([&](double a) { return chord(a, bb); }, std::max(0.0, ba - step_a), std::min(lambda, ba + step_a));
    bb = golden([&](double b) { return chord(ba, b); }, std::max(lambda, bb - step_b), std::min(1.0, bb + step_b));
  }
  return std::max(best, chord(ba, bb));
}

TEST(Properties, EnvelopeMatchesDenseTangencySearch) {
  for (const char* name : {"a1.json", "a3.json"}) {
    const Instance inst = load_fixture(name);
    const auto pw = extract_piecewise_1d(inst);
    for (const Rational& lambda : {Rational(3, 20), Rational(7, 16), Rational(1, 2), Rational(4, 5)}) {
      const double env = concave_envelope_1d(pw, lambda).value.convert_to<double>();
      EXPECT_NEAR(env, dense_two_point(pw, to_double(lambda)), 1e-9) << name << " at " << lambda;
    }
  }
}

TEST(Properties, SignalingNeverHurtsThroughput) {
  std::mt19937_64 rng(8);
  for (std::size_t n = 0; n < 100; ++n) {
    const Instance inst = random_instance(rng, {.links = 1 + n % 4, .scenarios = 2});
    const auto env = concave_envelope_1d(extract_piecewise_1d(inst), inst.prior[1]);
    EXPECT_GE(env.value + HighPrecision(1e-30), to_high_precision(expected_throughput(inst, inst.prior)));
  }
}

TEST(Properties, UnderEstimatorStaysBelow) {
  std::mt19937_64 rng(9);
  for (std::size_t n = 0; n < kCases; ++n) {
    const std::size_t d = 2 + n % 3;
    const Instance inst = random_instance(rng, {.links = 3, .scenarios = d});
    const Belief mu = random_belief(rng, d);
    const Rational eps(1, 2 + n % 8);
    const auto v = under_estimator(inst, mu, eps, 6);
    EXPECT_GE(v, 0);
    EXPECT_LE(v, expected_throughput(inst, mu));
  }
}

TEST(Properties, FptasSchemesAreValid) {
  std::mt19937_64 rng(10);
  for (std::size_t n = 0; n < 12; ++n) {
    const Instance inst = random_instance(rng, {.links = 2 + n % 2, .scenarios = 2});
    const auto r = solve_fptas(inst, Rational(1, 4));
    EXPECT_FALSE(scheme_violation(inst, r.scheme));
    EXPECT_EQ(r.alg, scheme_throughput(inst, r.scheme));
    const auto opt = concave_envelope_1d(extract_piecewise_1d(inst), inst.prior[1]).value;
    EXPECT_GE(to_high_precision(r.alg) + HighPrecision(1e-30), opt * HighPrecision(0.75));
    EXPECT_LE(to_high_precision(r.alg), opt + HighPrecision(1e-30));
  }
}

TEST(Properties, SeparationGapsAreExact) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(0, 6);
  for (std::size_t n = 0; n < 50; ++n) {
    const std::size_t d = 2 + n % 2;
    const Instance inst = random_instance(rng, {.links = 3, .scenarios = d});
    const SeparationOracle oracle(inst);
    for (int t = 0; t < 10; ++t) {
      DualPoint w(d);
      for (auto& x : w) x = coord(rng);
      const auto r = oracle.separate(w);
      if (r.feasible()) continue;
      RationalVector wq;
      for (double x : w) wq.push_back(from_double(x));
      EXPECT_GT(r.violation->gap, 0);
      EXPECT_EQ(r.violation->gap, expected_throughput(inst, r.violation->belief) - dot(wq, r.violation->belief));
    }
  }
}

TEST(Properties, InstanceDocumentsRoundTrip) {
  std::mt19937_64 rng(12);
  for (std::size_t n = 0; n < kCases; ++n) {
    const Instance inst = random_instance(rng, {.links = 1 + n % 5, .scenarios = 1 + n % 3});
    const std::string doc = format_instance(inst);
    EXPECT_EQ(format_instance(parse_instance(doc)), doc);
  }
}

}  // namespace
}  // namespace vqsignal
