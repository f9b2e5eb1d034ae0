#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vqsignal/rational.hpp"

namespace vqsignal {

// Point of the probability simplex over scenarios.
using Belief = RationalVector;

// Parallel-link queuing system with stochastic travel times.
struct Instance {
  RationalVector capacities;                 // nu[i]
  std::vector<RationalVector> travel_times;  // tau[i][s]
  Rational inflow;                           // u
  Rational horizon;                          // T
  RationalVector prior;                      // lambda*[s]

  std::size_t links() const { return capacities.size(); }
  std::size_t scenarios() const { return prior.size(); }

  // Travel times of all links in one scenario.
  RationalVector scenario_column(std::size_t s) const;
  // Throws InputError on any violated invariant.
  void validate() const;
};

Instance parse_instance(std::string_view text);
std::string format_instance(const Instance& inst);

// Throws InputError unless mu is a point of the simplex with d entries.
void validate_belief(const Instance& inst, const Belief& mu);
Belief unit_belief(std::size_t d, std::size_t s);
Belief parse_belief(std::string_view text);

RationalVector expected_travel_times(const Instance& inst, const Belief& mu);

}  // namespace vqsignal
