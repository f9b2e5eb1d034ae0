#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vqsignal/arrangement.hpp"
#include "vqsignal/instance.hpp"
#include "vqsignal/linalg.hpp"

namespace vqsignal {

struct Signal {
  Rational weight;
  Belief belief;
};

// Convex decomposition of the prior into posterior beliefs.
struct SignalingScheme {
  std::vector<Signal> signals;

  // phi[s][j] = weight_j * belief_j[s]
  RationalMatrix phi() const;
};

SignalingScheme full_information(const Instance& inst);
// Empty when the scheme is a valid convex decomposition of the prior, else the reason.
std::optional<std::string> scheme_violation(const Instance& inst, const SignalingScheme& scheme);
Rational scheme_throughput(const Instance& inst, const SignalingScheme& scheme);
Rational scheme_makespan(const Instance& inst, const SignalingScheme& scheme);

struct NetParameters {
  Rational epsilon;
  Rational delta;
  unsigned kappa = 0;
  std::vector<Belief> points;
  RationalVector values;  // under-estimator at each point
};

// Lower bound on OPT used to size the grid; zero exactly when OPT is zero.
Rational throughput_lower_bound(const Instance& inst);
// Smallest kappa with (1-eps)^kappa d T u <= delta LB; empty when OPT is zero.
std::optional<unsigned> compute_kappa(const Instance& inst, const Rational& epsilon, const Rational& delta);
// Ceiling-of-logarithms value of kappa, an upper bound on compute_kappa.
unsigned kappa_log_bound(const Instance& inst, const Rational& epsilon, const Rational& delta);

Rational h_round(const Rational& x, const Rational& epsilon, unsigned kappa);
Rational under_estimator(const Instance& inst, const Belief& mu, const Rational& epsilon, unsigned kappa);

// H together with the grid levels mu_s = (1-eps)^(j-1) and mu_s = 0.
std::vector<Hyperplane> net_hyperplanes(const Instance& inst, const Rational& epsilon, unsigned kappa);
NetParameters build_net(const Instance& inst, const Rational& epsilon, const Rational& delta, unsigned kappa);

struct FptasResult {
  SignalingScheme scheme;
  Rational alg;       // true expected throughput of the scheme
  Rational lp_value;  // under-estimator objective
  bool trivial = false;  // OPT is zero and the prior itself is returned
  unsigned kappa = 0;
  std::size_t net_size = 0;
};

FptasResult solve_fptas(const Instance& inst, const Rational& epsilon_star);

}  // namespace vqsignal
