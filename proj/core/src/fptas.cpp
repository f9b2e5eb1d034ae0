#include "vqsignal/fptas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "vqsignal/error.hpp"
#include "vqsignal/lp.hpp"
#include "vqsignal/objectives.hpp"

namespace vqsignal {

RationalMatrix SignalingScheme::phi() const {
  const std::size_t d = signals.empty() ? 0 : signals.front().belief.size();
  RationalMatrix out(d, RationalVector(signals.size()));
  for (std::size_t j = 0; j < signals.size(); ++j)
    for (std::size_t s = 0; s < d; ++s) out[s][j] = signals[j].weight * signals[j].belief.at(s);
  return out;
}

SignalingScheme full_information(const Instance& inst) {
  SignalingScheme scheme;
  for (std::size_t s = 0; s < inst.scenarios(); ++s)
    if (inst.prior[s] > 0) scheme.signals.push_back({inst.prior[s], unit_belief(inst.scenarios(), s)});
  return scheme;
}

std::optional<std::string> scheme_violation(const Instance& inst, const SignalingScheme& scheme) {
  if (scheme.signals.empty()) return "scheme has no signals";
  Rational total(0);
  RationalVector mean(inst.scenarios(), Rational(0));
  for (std::size_t j = 0; j < scheme.signals.size(); ++j) {
    const auto& sig = scheme.signals[j];
    if (sig.weight < 0 || sig.weight > 1) return "signal " + std::to_string(j + 1) + " has weight outside [0,1]";
    try {
      validate_belief(inst, sig.belief);
    } catch (const InputError& e) {
      return "signal " + std::to_string(j + 1) + ": " + e.what();
    }
    total += sig.weight;
    for (std::size_t s = 0; s < inst.scenarios(); ++s) mean[s] += sig.weight * sig.belief[s];
  }
  if (total != 1) return "weights sum to " + to_string(total) + " instead of 1";
  if (mean != inst.prior) return "weighted beliefs do not reproduce the prior";
  const auto phi = scheme.phi();
  for (std::size_t s = 0; s < inst.scenarios(); ++s)
    if (sum(phi[s]) != inst.prior[s]) return "phi row " + std::to_string(s + 1) + " does not sum to the prior";
  return std::nullopt;
}

Rational scheme_throughput(const Instance& inst, const SignalingScheme& scheme) {
  Rational v(0);
  for (const auto& sig : scheme.signals) v += sig.weight * expected_throughput(inst, sig.belief);
  return v;
}

Rational scheme_makespan(const Instance& inst, const SignalingScheme& scheme) {
  Rational v(0);
  for (const auto& sig : scheme.signals) v += sig.weight * expected_makespan(inst, sig.belief);
  return v;
}

Rational throughput_lower_bound(const Instance& inst) {
  Rational best(0);
  for (std::size_t s = 0; s < inst.scenarios(); ++s) {
    std::size_t fastest = 0;
    for (std::size_t i = 1; i < inst.links(); ++i)
      if (inst.travel_times[i][s] < inst.travel_times[fastest][s]) fastest = i;
    const Rational slack = inst.horizon - inst.travel_times[fastest][s];
    if (slack <= 0) continue;
    Rational lb = inst.prior[s] * slack * std::min(inst.capacities[fastest], inst.inflow);
    if (lb > best) best = lb;
  }
  return best;
}

std::optional<unsigned> compute_kappa(const Instance& inst, const Rational& epsilon, const Rational& delta) {
  if (epsilon <= 0 || epsilon >= 1 || delta <= 0 || delta >= 1) throw InputError("epsilon and delta must lie in (0,1)");
  const Rational lb = throughput_lower_bound(inst);
  if (lb == 0) return std::nullopt;
  const Rational target = delta * lb;
  Rational lhs = Rational(static_cast<unsigned long>(inst.scenarios())) * inst.horizon * inst.inflow;
  const Rational ratio = 1 - epsilon;
  unsigned kappa = 0;
  do {
    lhs *= ratio;
    ++kappa;
  } while (lhs > target);
  return kappa;
}

unsigned kappa_log_bound(const Instance& inst, const Rational& epsilon, const Rational& delta) {
  const double lb = to_double(throughput_lower_bound(inst));
  const double scale = static_cast<double>(inst.scenarios()) * to_double(inst.horizon) * to_double(inst.inflow);
  const double value = std::log(to_double(delta) * lb / scale) / std::log1p(-to_double(epsilon));
  return static_cast<unsigned>(std::max(1.0, std::ceil(value)));
}

namespace {

// Grid levels (1-eps)^0 > ... > (1-eps)^(kappa-1).
RationalVector grid_levels(const Rational& epsilon, unsigned kappa) {
  RationalVector levels;
  levels.reserve(kappa);
  Rational level(1);
  for (unsigned j = 1; j <= kappa; ++j) {
    levels.push_back(level);
    level *= 1 - epsilon;
  }
  return levels;
}

Rational round_to_grid(const Rational& x, const RationalVector& levels) {
  auto it = std::lower_bound(levels.begin(), levels.end(), x, std::greater<>());
  return it == levels.end() ? Rational(0) : *it;
}

Rational under_estimate(const Instance& inst, const Belief& mu, const RationalVector& levels) {
  const auto b = throughput_breakdown(inst, mu);
  Rational v(0);
  for (std::size_t s = 0; s < inst.scenarios(); ++s) v += round_to_grid(mu[s], levels) * b.scenarios[s].value;
  return v;
}

}  // namespace

Rational h_round(const Rational& x, const Rational& epsilon, unsigned kappa) {
  return round_to_grid(x, grid_levels(epsilon, kappa));
}

Rational under_estimator(const Instance& inst, const Belief& mu, const Rational& epsilon, unsigned kappa) {
  return under_estimate(inst, mu, grid_levels(epsilon, kappa));
}

std::vector<Hyperplane> net_hyperplanes(const Instance& inst, const Rational& epsilon, unsigned kappa) {
  const std::size_t d = inst.scenarios();
  auto planes = build_H(inst);
  for (std::size_t s = 0; s < d; ++s) {
    Rational level(1);
    for (unsigned j = 1; j <= kappa; ++j) {
      planes.push_back({unit_belief(d, s), level, {HyperplaneKind::GridLevel, HyperplaneLabel::none, j - 1, s}});
      level *= 1 - epsilon;
    }
    planes.push_back({unit_belief(d, s), Rational(0), {HyperplaneKind::GridZero, HyperplaneLabel::none,
                                                       HyperplaneLabel::none, s}});
  }
  return planes;
}

NetParameters build_net(const Instance& inst, const Rational& epsilon, const Rational& delta, unsigned kappa) {
  NetParameters net{epsilon, delta, kappa, {}, {}};
  net.points = enumerate_vertices(net_hyperplanes(inst, epsilon, kappa), inst.scenarios());
  const RationalVector levels = grid_levels(epsilon, kappa);
  net.values.reserve(net.points.size());
  for (const auto& p : net.points) net.values.push_back(under_estimate(inst, p, levels));
  return net;
}

FptasResult solve_fptas(const Instance& inst, const Rational& epsilon_star) {
  if (epsilon_star <= 0 || epsilon_star >= 1) throw InputError("epsilon must lie in (0,1)");
  inst.validate();
  const std::size_t d = inst.scenarios();
  const Rational eps = epsilon_star / 2;
  FptasResult result;
  const auto kappa = compute_kappa(inst, eps, eps);
  if (!kappa) {
    result.trivial = true;
    result.scheme.signals.push_back({Rational(1), inst.prior});
    result.alg = expected_throughput(inst, inst.prior);
    result.lp_value = result.alg;
    return result;
  }
  const NetParameters net = build_net(inst, eps, eps, *kappa);
  result.kappa = *kappa;
  result.net_size = net.points.size();

  LinearProgram lp;
  lp.a.assign(d + 1, RationalVector(net.points.size()));
  for (std::size_t j = 0; j < net.points.size(); ++j) {
    for (std::size_t s = 0; s < d; ++s) lp.a[s][j] = net.points[j][s];
    lp.a[d][j] = 1;
  }
  lp.b = inst.prior;
  lp.b.push_back(Rational(1));
  lp.c = net.values;
  const LpResult sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::logic_error("net LP not optimal although the prior lies in the simplex");
  result.lp_value = sol.objective;
  result.alg = 0;
  for (std::size_t j = 0; j < net.points.size(); ++j) {
    if (sol.x[j] <= 0) continue;
    result.scheme.signals.push_back({sol.x[j], net.points[j]});
    result.alg += sol.x[j] * expected_throughput(inst, net.points[j]);
  }
  return result;
}

}  // namespace vqsignal
