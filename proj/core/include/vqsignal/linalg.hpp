#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vqsignal/rational.hpp"

namespace vqsignal {

using RationalMatrix = std::vector<RationalVector>;  // row-major

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(RationalMatrix& a);
std::size_t rank(RationalMatrix a);

// Solution set {particular + basis * t} of A x = b.
struct AffineSolution {
  RationalVector particular;
  std::vector<RationalVector> basis;
};
std::optional<AffineSolution> solve_affine(const RationalMatrix& a, const RationalVector& b, std::size_t columns);

}  // namespace vqsignal
