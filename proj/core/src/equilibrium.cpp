#include "vqsignal/equilibrium.hpp"

#include <algorithm>
#include <numeric>

#include "vqsignal/error.hpp"

namespace vqsignal {

namespace {

std::vector<std::size_t> sorted_order(const RationalVector& tt) {
  std::vector<std::size_t> order(tt.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tt[a] < tt[b]; });
  return order;
}

// Last position whose threshold has been reached at theta.
std::optional<std::size_t> active_segment(const EquilibriumProfile& p, const Rational& theta) {
  std::optional<std::size_t> seg;
  for (std::size_t q = 0; q < p.links(); ++q) {
    if (!p.thresholds[q].is_finite() || p.thresholds[q].value() > theta) break;
    seg = q;
  }
  return seg;
}

}  // namespace

EquilibriumProfile solve_with_order(const RationalVector& capacities, const RationalVector& travel_times,
                                    const Rational& inflow, std::vector<std::size_t> order) {
  const std::size_t m = capacities.size();
  if (m == 0 || travel_times.size() != m || order.size() != m)
    throw InputError("equilibrium needs matching capacity, travel-time and order vectors");
  if (inflow <= 0) throw InputError("inflow must be positive");
  for (std::size_t i = 0; i < m; ++i) {
    if (capacities[i] <= 0) throw InputError("capacities must be positive");
    if (travel_times[i] < 0) throw InputError("travel times must be non-negative");
  }
  for (std::size_t q = 0; q + 1 < m; ++q)
    if (travel_times[order[q]] > travel_times[order[q + 1]]) throw InputError("order does not sort travel times");

  EquilibriumProfile p;
  p.capacities = capacities;
  p.inflow = inflow;
  p.effective_tt = travel_times;
  p.order = std::move(order);
  p.position.assign(m, 0);
  for (std::size_t q = 0; q < m; ++q) p.position.at(p.order[q]) = q;

  p.cumulative.resize(m);
  Rational acc(0);
  for (std::size_t q = 0; q < m; ++q) {
    acc += capacities[p.order[q]];
    p.cumulative[q] = acc;
  }
  p.k = 0;
  while (p.k < m && p.cumulative[p.k] < inflow) ++p.k;

  p.thresholds.assign(m, ExtendedRational::infinity());
  p.thresholds[0] = Rational(0);
  for (std::size_t q = 0; q + 1 < m && q < p.k; ++q) {
    const Rational& nb = p.cumulative[q];
    Rational gap = travel_times[p.order[q + 1]] - travel_times[p.order[q]];
    p.thresholds[q + 1] = Rational(p.thresholds[q].value() + nb / (inflow - nb) * gap);
  }
  return p;
}

EquilibriumProfile solve_deterministic(const RationalVector& capacities, const RationalVector& travel_times,
                                       const Rational& inflow) {
  return solve_with_order(capacities, travel_times, inflow, sorted_order(travel_times));
}

Rational inflow(const EquilibriumProfile& p, std::size_t link, const Rational& theta) {
  const std::size_t q = p.position.at(link);
  auto seg = active_segment(p, theta);
  if (!seg || q > *seg) return Rational(0);
  if (*seg < p.k) return p.inflow * p.capacities[link] / p.cumulative[*seg];
  // Past the last finite threshold with k < m.
  if (q < p.k) return p.capacities[link];
  return p.k == 0 ? p.inflow : Rational(p.inflow - p.cumulative[p.k - 1]);
}

Rational queue_length(const EquilibriumProfile& p, std::size_t link, const Rational& theta) {
  const std::size_t q = p.position.at(link);
  auto seg = active_segment(p, theta);
  if (!seg || q > *seg) return Rational(0);
  const Rational& nu = p.capacities[link];
  const Rational& own = p.effective_tt[link];
  if (*seg < p.k) {
    const std::size_t l = *seg;
    const Rational& nb = p.cumulative[l];
    return nu * (p.effective_tt[p.order[l]] - own + (p.inflow - nb) / nb * (theta - p.thresholds[l].value()));
  }
  if (q < p.k) return nu * (p.effective_tt[p.order[p.k]] - own);
  return Rational(0);
}

Rational exit_time(const EquilibriumProfile& p, std::size_t link, const Rational& theta,
                   const RationalVector& realized_tt) {
  return theta + queue_length(p, link, theta) / p.capacities[link] + realized_tt.at(link);
}

QueueCoefficients queue_coefficients(const EquilibriumProfile& p) {
  const std::size_t m = p.links();
  QueueCoefficients out(m);
  for (std::size_t q = 0; q < m; ++q) {
    const std::size_t link = p.order[q];
    const Rational& nu = p.capacities[link];
    const Rational& own = p.effective_tt[link];
    auto& segs = out[link];
    if (!p.thresholds[q].is_finite()) {
      segs.push_back({Rational(0), ExtendedRational::infinity(), Rational(0), Rational(0)});
      continue;
    }
    if (p.thresholds[q].value() > 0) segs.push_back({Rational(0), p.thresholds[q], Rational(0), Rational(0)});
    for (std::size_t l = q; l < p.k; ++l) {
      const Rational& start = p.thresholds[l].value();
      if (l + 1 < m && p.thresholds[l + 1] == p.thresholds[l]) continue;
      const Rational& nb = p.cumulative[l];
      Rational slope = nu * (p.inflow - nb) / nb;
      Rational intercept = nu * (p.effective_tt[p.order[l]] - own) - slope * start;
      ExtendedRational end = l + 1 < m ? p.thresholds[l + 1] : ExtendedRational::infinity();
      segs.push_back({start, end, slope, intercept});
    }
    if (p.k < m) {
      Rational plateau = q < p.k ? Rational(nu * (p.effective_tt[p.order[p.k]] - own)) : Rational(0);
      segs.push_back({p.thresholds[p.k].value(), ExtendedRational::infinity(), Rational(0), plateau});
    }
  }
  return out;
}

EquilibriumProfile solve_for_belief(const Instance& inst, const Belief& mu) {
  return solve_deterministic(inst.capacities, expected_travel_times(inst, mu), inst.inflow);
}

std::vector<std::vector<ExtendedRational>> first_exit_times(const Instance& inst, const Belief& mu) {
  const auto p = solve_for_belief(inst, mu);
  std::vector<std::vector<ExtendedRational>> omega(inst.links());
  for (std::size_t i = 0; i < inst.links(); ++i) {
    const auto& th = p.breakpoint(i);
    for (std::size_t s = 0; s < inst.scenarios(); ++s)
      omega[i].push_back(th.is_finite() ? ExtendedRational(Rational(th.value() + inst.travel_times[i][s]))
                                        : ExtendedRational::infinity());
  }
  return omega;
}

std::vector<std::size_t> link_order(const Instance& inst, const Belief& mu) {
  return sorted_order(expected_travel_times(inst, mu));
}

std::vector<std::optional<AffineForm>> breakpoint_forms(const Instance& inst, const std::vector<std::size_t>& order) {
  const std::size_t m = inst.links(), d = inst.scenarios();
  std::vector<std::optional<AffineForm>> forms(m);
  Rational acc(0);
  AffineForm current = AffineForm::zero(d);
  forms.at(order.at(0)) = current;
  for (std::size_t q = 0; q + 1 < m; ++q) {
    acc += inst.capacities[order[q]];
    if (acc >= inst.inflow) break;
    AffineForm step{RationalVector(d), Rational(0)};
    const Rational ratio = acc / (inst.inflow - acc);
    for (std::size_t s = 0; s < d; ++s)
      step.coeffs[s] = ratio * (inst.travel_times[order[q + 1]][s] - inst.travel_times[order[q]][s]);
    current += step;
    forms.at(order[q + 1]) = current;
  }
  return forms;
}

}  // namespace vqsignal
