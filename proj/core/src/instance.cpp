#include "vqsignal/instance.hpp"

#include <sstream>

#include "vqsignal/error.hpp"

namespace vqsignal {

RationalVector Instance::scenario_column(std::size_t s) const {
  RationalVector col;
  col.reserve(links());
  for (const auto& row : travel_times) col.push_back(row.at(s));
  return col;
}

void Instance::validate() const {
  if (capacities.empty()) throw InputError("instance needs at least one link");
  if (prior.empty()) throw InputError("instance needs at least one scenario");
  if (travel_times.size() != links())
    throw InputError("travel_times has " + std::to_string(travel_times.size()) + " rows but there are " +
                     std::to_string(links()) + " capacities");
  for (std::size_t i = 0; i < links(); ++i) {
    if (capacities[i] <= 0) throw InputError("capacity of link " + std::to_string(i + 1) + " must be positive");
    if (travel_times[i].size() != scenarios())
      throw InputError("travel_times row " + std::to_string(i + 1) + " has " + std::to_string(travel_times[i].size()) +
                       " entries but the prior has " + std::to_string(scenarios()));
    for (const auto& t : travel_times[i])
      if (t < 0) throw InputError("negative travel time on link " + std::to_string(i + 1));
  }
  if (inflow <= 0) throw InputError("inflow must be positive");
  if (horizon <= 0) throw InputError("horizon must be positive");
  for (const auto& p : prior)
    if (p < 0 || p > 1) throw InputError("prior entries must lie in [0,1]");
  if (sum(prior) != 1) throw InputError("prior does not sum to 1");
}

void validate_belief(const Instance& inst, const Belief& mu) {
  if (mu.size() != inst.scenarios())
    throw InputError("belief has " + std::to_string(mu.size()) + " entries but the instance has " +
                     std::to_string(inst.scenarios()) + " scenarios");
  for (const auto& x : mu)
    if (x < 0 || x > 1) throw InputError("belief entries must lie in [0,1]");
  if (sum(mu) != 1) throw InputError("belief does not sum to 1");
}

Belief unit_belief(std::size_t d, std::size_t s) {
  Belief e(d, Rational(0));
  e.at(s) = 1;
  return e;
}

Belief parse_belief(std::string_view text) {
  Belief mu;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    mu.push_back(parse_rational(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return mu;
}

RationalVector expected_travel_times(const Instance& inst, const Belief& mu) {
  if (mu.size() != inst.scenarios()) throw InputError("belief dimension does not match the scenario count");
  RationalVector e;
  e.reserve(inst.links());
  for (const auto& row : inst.travel_times) e.push_back(dot(mu, row));
  return e;
}

}  // namespace vqsignal
