#pragma once

#include "vqsignal/linalg.hpp"

namespace vqsignal {

// maximize c.x subject to A x = b, x >= 0
struct LinearProgram {
  RationalMatrix a;
  RationalVector b;
  RationalVector c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RationalVector x;
  Rational objective;
  std::size_t pivots = 0;
};

// Exact two-phase tableau simplex; largest-coefficient pricing with Bland's rule on degenerate steps.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace vqsignal
