#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vqsignal/arrangement.hpp"
#include "vqsignal/instance.hpp"
#include "vqsignal/linalg.hpp"

namespace vqsignal {

using DualPoint = std::vector<double>;

struct Violation {
  Belief belief;
  Rational gap;  // F(belief) - w . belief > 0
};

struct SeparationResult {
  std::optional<Violation> violation;
  Rational supremum;  // sup over the simplex of F(mu) - w . mu
  Belief argmax;      // point where the supremum is attained or approached

  bool feasible() const { return !violation; }
};

// Exact separation for the dual constraints w . mu >= F(mu). The face structure
// does not depend on w, so it is built once per instance.
class SeparationOracle {
 public:
  explicit SeparationOracle(const Instance& inst);

  SeparationResult separate(const RationalVector& w) const;
  SeparationResult separate(const DualPoint& w) const;

  std::size_t patch_count() const { return patches_.size(); }
  std::size_t face_count() const;

 private:
  struct Face {
    Belief origin;
    std::vector<RationalVector> dirs;
  };
  // Region where every F_s is one fixed affine form.
  struct Patch {
    RationalMatrix forms;      // forms[s][t]: coefficient of mu_t in F_s
    RationalVector constants;  // constant of F_s
    Belief interior;
    Region closure;
    std::vector<Face> faces;
  };

  Rational patch_value(const Patch& p, const RationalVector& w, const Belief& mu) const;
  void build_1d();
  void build_general();

  const Instance& inst_;
  std::vector<Patch> patches_;
};

SeparationResult separate(const Instance& inst, const DualPoint& w);

// Radius bound on dual optima from the gap between the inflow and subset capacities.
double dual_radius(const Instance& inst);
// The larger product form of the radius bound.
double dual_radius_product(const Instance& inst);

struct DualResult {
  double p = 0;
  double best_upper = 0;   // best certified feasible objective
  double lower_bound = 0;  // ellipsoid lower bound on OPT
  double epsilon = 0;      // internal accuracy
  std::size_t iterations = 0;
  std::size_t iteration_cap = 0;
  std::size_t oracle_calls = 0;
  bool converged = false;
  DualPoint best_w;
  double max_volume_drift = 0;  // largest deviation of log-volume shrink from the textbook factor
};

DualResult solve_additive_ptas(const Instance& inst, double epsilon_star);

}  // namespace vqsignal
