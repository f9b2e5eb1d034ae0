#include "vqsignal/linalg.hpp"

namespace vqsignal {

std::vector<std::size_t> row_reduce(RationalMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(RationalMatrix a) { return row_reduce(a).size(); }

std::optional<AffineSolution> solve_affine(const RationalMatrix& a, const RationalVector& b, std::size_t columns) {
  RationalMatrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    RationalVector row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots = aug.empty() ? std::vector<std::size_t>{} : row_reduce(aug);
  if (!pivots.empty() && pivots.back() == columns) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(columns, Rational(0));
  std::vector<bool> is_pivot(columns, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    sol.particular[pivots[r]] = aug[r][columns];
    is_pivot[pivots[r]] = true;
  }
  for (std::size_t f = 0; f < columns; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(columns, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug[r][f];
    sol.basis.push_back(std::move(v));
  }
  return sol;
}

}  // namespace vqsignal
