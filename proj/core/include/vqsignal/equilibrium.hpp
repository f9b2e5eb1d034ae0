#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vqsignal/affine.hpp"
#include "vqsignal/instance.hpp"
#include "vqsignal/rational.hpp"

namespace vqsignal {

// Canonical dynamic equilibrium of a deterministic parallel-link network.
// Positions are 0-based along the order; k counts the positions whose
// cumulative capacity stays below the inflow.
struct EquilibriumProfile {
  RationalVector capacities;
  Rational inflow;
  RationalVector effective_tt;
  std::vector<std::size_t> order;          // position -> link
  std::vector<std::size_t> position;       // link -> position
  std::vector<ExtendedRational> thresholds;  // theta* per position
  RationalVector cumulative;               // cumulative capacity up to and including each position
  std::size_t k = 0;

  std::size_t links() const { return order.size(); }
  const ExtendedRational& breakpoint(std::size_t link) const { return thresholds[position.at(link)]; }
  // Positions 0..k receive flow eventually.
  std::size_t used_positions() const { return k < links() ? k + 1 : links(); }
};

// Affine queue length z = slope * theta + intercept on [start, end).
struct QueueSegment {
  Rational start;
  ExtendedRational end;
  Rational slope;
  Rational intercept;
};
using QueueCoefficients = std::vector<std::vector<QueueSegment>>;  // per link

// Ties in travel time are broken by link index.
EquilibriumProfile solve_deterministic(const RationalVector& capacities, const RationalVector& travel_times,
                                       const Rational& inflow);
// Same, with an explicit order that must sort travel_times non-decreasingly.
EquilibriumProfile solve_with_order(const RationalVector& capacities, const RationalVector& travel_times,
                                    const Rational& inflow, std::vector<std::size_t> order);

Rational inflow(const EquilibriumProfile& profile, std::size_t link, const Rational& theta);
Rational queue_length(const EquilibriumProfile& profile, std::size_t link, const Rational& theta);
Rational exit_time(const EquilibriumProfile& profile, std::size_t link, const Rational& theta,
                   const RationalVector& realized_tt);
QueueCoefficients queue_coefficients(const EquilibriumProfile& profile);

EquilibriumProfile solve_for_belief(const Instance& inst, const Belief& mu);
// omega[i][s] = theta*_i(mu) + tau[i][s].
std::vector<std::vector<ExtendedRational>> first_exit_times(const Instance& inst, const Belief& mu);

// Order of links by expected travel time at mu, ties by index.
std::vector<std::size_t> link_order(const Instance& inst, const Belief& mu);
// Linear forms of theta*_i(mu) valid on beliefs inducing the given order.
// Entries are empty for links that never receive flow under that order.
std::vector<std::optional<AffineForm>> breakpoint_forms(const Instance& inst, const std::vector<std::size_t>& order);

}  // namespace vqsignal
