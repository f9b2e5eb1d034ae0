#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "vqsignal/affine.hpp"
#include "vqsignal/instance.hpp"

namespace vqsignal {

enum class HyperplaneKind { LinkTie, ExitTie, HorizonCrossing, GridLevel, GridZero, Custom };

struct HyperplaneLabel {
  static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  HyperplaneKind kind = HyperplaneKind::Custom;
  std::size_t i = none, j = none, s = none;
  std::string describe() const;
};

// normal . mu = offset
struct Hyperplane {
  RationalVector normal;
  Rational offset;
  HyperplaneLabel label;

  Rational evaluate(const Belief& mu) const { return dot(normal, mu) - offset; }
  // Constant on the simplex, so it either contains all of it or misses it.
  bool degenerate() const;
};

struct Cell {
  std::size_t dimension = 0;
  std::vector<int> signs;  // -1, 0, +1 per hyperplane
  std::vector<Belief> vertices;
  Belief representative;
};

// Closed subset of the simplex on which every form is non-negative.
using Region = std::vector<AffineForm>;

constexpr std::size_t kMaxExactScenarios = 4;

std::vector<Hyperplane> build_H(const Instance& inst);
// Exit-time ties and horizon crossings, affine on the H-cell containing cell_point.
std::vector<Hyperplane> build_Hstar(const Instance& inst, const Belief& cell_point);

std::vector<int> sign_vector(const std::vector<Hyperplane>& planes, const Belief& mu);
// Closure of a cell as a region.
Region cell_region(const std::vector<Hyperplane>& planes, const Cell& cell);

// k-cells of the arrangement restricted to the simplex (and to region when given).
// Simplex facets and region boundaries act as hyperplanes for the face structure.
std::vector<Cell> enumerate_cells(const std::vector<Hyperplane>& planes, std::size_t d, std::size_t k,
                                  const Region& region = {});
// Distinct 0-cells only, sorted, without sign vectors.
std::vector<Belief> enumerate_vertices(const std::vector<Hyperplane>& planes, std::size_t d, const Region& region = {});
std::vector<Cell> enumerate_all_cells(const std::vector<Hyperplane>& planes, std::size_t d, const Region& region = {});

// Upper bound on the number of k-cells of n hyperplanes in dimension dim.
mpz_class buck_bound(std::size_t n, std::size_t dim, std::size_t k);

}  // namespace vqsignal
