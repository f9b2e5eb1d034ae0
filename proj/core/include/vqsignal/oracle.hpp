#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <optional>
#include <vector>

#include "vqsignal/instance.hpp"

namespace vqsignal {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

HighPrecision to_high_precision(const Rational& x);

struct Quadratic {
  Rational a, b, c;  // a x^2 + b x + c

  Rational operator()(const Rational& x) const { return (a * x + b) * x + c; }
  HighPrecision operator()(const HighPrecision& x) const;
  friend bool operator==(const Quadratic&, const Quadratic&) = default;
};

enum class Objective { Throughput, Makespan };

// Function of the second belief coordinate x = mu_2 on [0, 1], with mu = (1 - x, x).
struct PiecewiseQuadratic1D {
  RationalVector breakpoints;     // 0 = b_0 < ... < b_r = 1
  std::vector<Quadratic> pieces;  // piece j lives on [b_j, b_{j+1}]
  RationalVector point_values;    // function value at each breakpoint

  Rational evaluate(const Rational& x) const;
  // Interior breakpoints where the one-sided limits differ.
  RationalVector discontinuities() const;
  RationalVector interior_breakpoints() const;
};

PiecewiseQuadratic1D extract_piecewise_1d(const Instance& inst, Objective objective = Objective::Throughput);

struct EnvelopeSolution {
  HighPrecision value;
  HighPrecision left, right;  // supporting beliefs (second coordinate)
  std::optional<Rational> exact_left, exact_right;
  HighPrecision slope, intercept;
  HighPrecision weight_left;  // weight on the left support
  HighPrecision max_violation;  // largest amount the function exceeds the supporting line
};

EnvelopeSolution concave_envelope_1d(const PiecewiseQuadratic1D& pw, const Rational& lambda);

// Discrete concave envelope over a uniform grid of the simplex.
double brute_force_opt(const Instance& inst, unsigned resolution);

}  // namespace vqsignal
