#include "vqsignal/objectives.hpp"

#include <algorithm>
#include <numeric>

#include "vqsignal/error.hpp"

namespace vqsignal {

namespace {

struct ExitData {
  std::vector<std::size_t> order;  // sigma_s
  RationalVector omega;            // along order
};

ExitData exits(const Instance& inst, const EquilibriumProfile& p, std::size_t s) {
  ExitData e;
  for (std::size_t i = 0; i < inst.links(); ++i)
    if (p.breakpoint(i).is_finite()) e.order.push_back(i);
  auto omega_of = [&](std::size_t i) { return Rational(p.breakpoint(i).value() + inst.travel_times[i][s]); };
  std::stable_sort(e.order.begin(), e.order.end(),
                   [&](std::size_t a, std::size_t b) { return omega_of(a) < omega_of(b); });
  for (auto i : e.order) e.omega.push_back(omega_of(i));
  return e;
}

ScenarioThroughput scenario_throughput(const Instance& inst, const EquilibriumProfile& p, std::size_t s) {
  const Rational& u = inst.inflow;
  const Rational& T = inst.horizon;
  ExitData e = exits(inst, p, s);
  ScenarioThroughput out;
  out.exit_order = e.order;
  Rational acc(0);
  for (auto i : e.order) {
    acc += inst.capacities[i];
    out.prefix_capacity.push_back(acc);
  }
  std::size_t arrived = 0;
  while (arrived < e.omega.size() && e.omega[arrived] <= T) ++arrived;
  std::size_t K = 0;
  while (K < arrived && (K == 0 || out.prefix_capacity[K - 1] < u)) ++K;
  out.contributing = K;
  if (K == 0) {
    out.value = 0;
    return out;
  }
  const Rational excess = out.prefix_capacity[K - 1] - u;
  Rational value = u * T;
  if (excess < 0) value += T * excess;
  if (excess > 0) value += e.omega[K - 1] * excess;
  for (std::size_t q = 0; q < K; ++q) value -= inst.capacities[e.order[q]] * e.omega[q];
  out.value = value;
  return out;
}

Rational realized_makespan(const EquilibriumProfile& p, const Rational& T, const RationalVector& realized) {
  bool any = false;
  Rational best(0);
  for (std::size_t i = 0; i < p.links(); ++i) {
    if (inflow(p, i, T) <= 0) continue;
    Rational e = exit_time(p, i, T, realized);
    if (!any || e > best) best = e;
    any = true;
  }
  return best;
}

}  // namespace

Rational outflow(const Instance& inst, const Belief& mu, std::size_t s, const Rational& theta) {
  validate_belief(inst, mu);
  const auto p = solve_for_belief(inst, mu);
  ExitData e = exits(inst, p, s);
  Rational cap(0);
  for (std::size_t q = 0; q < e.order.size() && e.omega[q] <= theta; ++q) cap += inst.capacities[e.order[q]];
  return std::min(cap, inst.inflow);
}

ThroughputBreakdown throughput_breakdown(const Instance& inst, const Belief& mu) {
  validate_belief(inst, mu);
  const auto p = solve_for_belief(inst, mu);
  ThroughputBreakdown b;
  b.expected = 0;
  for (std::size_t s = 0; s < inst.scenarios(); ++s) {
    b.scenarios.push_back(scenario_throughput(inst, p, s));
    b.expected += mu[s] * b.scenarios.back().value;
  }
  return b;
}

Rational throughput_scenario(const Instance& inst, const Belief& mu, std::size_t s) {
  validate_belief(inst, mu);
  return scenario_throughput(inst, solve_for_belief(inst, mu), s).value;
}

Rational expected_throughput(const Instance& inst, const Belief& mu) { return throughput_breakdown(inst, mu).expected; }

Rational integrated_throughput(const Instance& inst, const Belief& mu, std::size_t s) {
  validate_belief(inst, mu);
  const auto p = solve_for_belief(inst, mu);
  ExitData e = exits(inst, p, s);
  const Rational& T = inst.horizon;
  Rational total(0), cap(0);
  for (std::size_t q = 0; q < e.order.size() && e.omega[q] < T; ++q) {
    cap += inst.capacities[e.order[q]];
    const Rational next = q + 1 < e.order.size() ? std::min(e.omega[q + 1], T) : T;
    total += std::min(cap, inst.inflow) * (next - e.omega[q]);
  }
  return total;
}

std::vector<AffineForm> throughput_forms(const Instance& inst, const Belief& point) {
  return throughput_forms(inst, link_order(inst, point), point);
}

std::vector<AffineForm> throughput_forms(const Instance& inst, const std::vector<std::size_t>& order,
                                         const Belief& point) {
  const std::size_t d = inst.scenarios();
  const auto theta = breakpoint_forms(inst, order);
  std::vector<AffineForm> out;
  for (std::size_t s = 0; s < d; ++s) {
    struct Exit {
      std::size_t link;
      AffineForm form;
      Rational value;
    };
    std::vector<Exit> ex;
    for (std::size_t i = 0; i < inst.links(); ++i) {
      if (!theta[i]) continue;
      AffineForm w = *theta[i];
      w.constant += inst.travel_times[i][s];
      Rational v = w(point);
      if (v <= inst.horizon) ex.push_back({i, std::move(w), std::move(v)});
    }
    std::stable_sort(ex.begin(), ex.end(), [](const Exit& a, const Exit& b) { return a.value < b.value; });
    AffineForm f = AffineForm::zero(d);
    Rational acc(0), prev(0);
    for (const auto& x : ex) {
      acc += inst.capacities[x.link];
      Rational c = std::min(acc, inst.inflow);
      f -= x.form * Rational(c - prev);
      prev = c;
    }
    f.constant += prev * inst.horizon;
    out.push_back(std::move(f));
  }
  return out;
}

MakespanBreakdown makespan_breakdown(const Instance& inst, const Belief& mu) {
  validate_belief(inst, mu);
  const auto p = solve_for_belief(inst, mu);
  MakespanBreakdown b;
  b.expected = 0;
  for (std::size_t s = 0; s < inst.scenarios(); ++s) {
    b.scenarios.push_back(realized_makespan(p, inst.horizon, inst.scenario_column(s)));
    b.expected += mu[s] * b.scenarios.back();
  }
  return b;
}

Rational makespan_scenario(const Instance& inst, const Belief& mu, std::size_t s) {
  validate_belief(inst, mu);
  return realized_makespan(solve_for_belief(inst, mu), inst.horizon, inst.scenario_column(s));
}

Rational expected_makespan(const Instance& inst, const Belief& mu) { return makespan_breakdown(inst, mu).expected; }

Rational makespan_with_perceived(const RationalVector& capacities, const RationalVector& true_tt,
                                 const Rational& inflow, const Rational& horizon, const RationalVector& perceived_tt) {
  if (perceived_tt.size() != capacities.size() || true_tt.size() != capacities.size())
    throw InputError("perceived and true travel times must have one entry per link");
  std::vector<std::size_t> order(capacities.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (perceived_tt[a] != perceived_tt[b]) return perceived_tt[a] < perceived_tt[b];
    return true_tt[a] < true_tt[b];
  });
  const auto p = solve_with_order(capacities, perceived_tt, inflow, std::move(order));
  return realized_makespan(p, horizon, true_tt);
}

}  // namespace vqsignal
