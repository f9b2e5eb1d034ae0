#pragma once

#include <cstddef>
#include <vector>

#include "vqsignal/affine.hpp"
#include "vqsignal/equilibrium.hpp"
#include "vqsignal/instance.hpp"

namespace vqsignal {

struct ScenarioThroughput {
  std::vector<std::size_t> exit_order;  // links with finite first exit time, by exit time then index
  std::size_t contributing = 0;         // K
  RationalVector prefix_capacity;       // along exit_order
  Rational value;
};

struct ThroughputBreakdown {
  std::vector<ScenarioThroughput> scenarios;
  Rational expected;
};

struct MakespanBreakdown {
  RationalVector scenarios;
  Rational expected;
};

Rational outflow(const Instance& inst, const Belief& mu, std::size_t s, const Rational& theta);
ThroughputBreakdown throughput_breakdown(const Instance& inst, const Belief& mu);
Rational throughput_scenario(const Instance& inst, const Belief& mu, std::size_t s);
Rational expected_throughput(const Instance& inst, const Belief& mu);
// Integral of the piecewise-constant outflow over [0, T]; used to cross-check the closed form.
Rational integrated_throughput(const Instance& inst, const Belief& mu, std::size_t s);

// Per-scenario affine forms of F_s valid on the face of the arrangement containing point.
std::vector<AffineForm> throughput_forms(const Instance& inst, const Belief& point);
// Same, with the link order fixed explicitly.
std::vector<AffineForm> throughput_forms(const Instance& inst, const std::vector<std::size_t>& order,
                                         const Belief& point);

MakespanBreakdown makespan_breakdown(const Instance& inst, const Belief& mu);
Rational makespan_scenario(const Instance& inst, const Belief& mu, std::size_t s);
Rational expected_makespan(const Instance& inst, const Belief& mu);
// Equilibrium built on perceived travel times, makespan measured on true ones.
Rational makespan_with_perceived(const RationalVector& capacities, const RationalVector& true_tt,
                                 const Rational& inflow, const Rational& horizon, const RationalVector& perceived_tt);

}  // namespace vqsignal
