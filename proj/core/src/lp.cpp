#include "vqsignal/lp.hpp"

#include <optional>

#include "vqsignal/error.hpp"

namespace vqsignal {

namespace {

class Tableau {
 public:
  Tableau(RationalMatrix rows, RationalVector rhs, std::vector<std::size_t> basis)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  // Runs simplex iterations for the given cost vector over the allowed columns.
  // Largest reduced cost enters; after a degenerate pivot Bland's rule takes over
  // until the objective moves again, which rules out cycling.
  // Returns false when unbounded.
  bool optimize(const RationalVector& cost, std::size_t allowed_cols, std::size_t& pivots) {
    bool bland = false;
    for (;;) {
      std::optional<std::size_t> enter;
      Rational best_cost;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        Rational rc = reduced_cost(cost, j);
        if (rc <= 0 || (enter && rc <= best_cost)) continue;
        enter = j;
        best_cost = std::move(rc);
        if (bland) break;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational& a = rows_[r][*enter];
        if (a <= 0) continue;
        Rational ratio = rhs_[r] / a;
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (!leave) return false;
      bland = best == 0;
      pivot(*leave, *enter);
      ++pivots;
    }
  }

  Rational reduced_cost(const RationalVector& cost, std::size_t j) const {
    Rational z = cost[j];
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (rows_[r][j] != 0) z -= cost[basis_[r]] * rows_[r][j];
    return z;
  }

  void pivot(std::size_t r, std::size_t j) {
    const Rational inv = 1 / rows_[r][j];
    for (auto& x : rows_[r]) x *= inv;
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][j] == 0) continue;
      const Rational f = rows_[i][j];
      for (std::size_t c = 0; c < rows_[i].size(); ++c)
        if (rows_[r][c] != 0) rows_[i][c] -= f * rows_[r][c];
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = j;
  }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<long>(r));
    rhs_.erase(rhs_.begin() + static_cast<long>(r));
    basis_.erase(basis_.begin() + static_cast<long>(r));
  }

  std::size_t num_rows() const { return rows_.size(); }
  const RationalVector& row(std::size_t r) const { return rows_[r]; }
  const Rational& rhs(std::size_t r) const { return rhs_[r]; }
  std::size_t basic(std::size_t r) const { return basis_[r]; }

 private:
  RationalMatrix rows_;
  RationalVector rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.a.size();
  const std::size_t n = lp.c.size();
  if (lp.b.size() != m) throw InputError("LP right-hand side has wrong length");
  RationalMatrix rows(m);
  RationalVector rhs(m);
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (lp.a[r].size() != n) throw InputError("LP row has wrong length");
    const bool flip = lp.b[r] < 0;
    rows[r].assign(n + m, Rational(0));
    for (std::size_t j = 0; j < n; ++j) rows[r][j] = flip ? Rational(-lp.a[r][j]) : lp.a[r][j];
    rows[r][n + r] = 1;
    rhs[r] = flip ? Rational(-lp.b[r]) : lp.b[r];
    basis[r] = n + r;
  }
  Tableau tab(std::move(rows), std::move(rhs), std::move(basis));
  LpResult result;

  RationalVector phase1(n + m, Rational(0));
  for (std::size_t r = 0; r < m; ++r) phase1[n + r] = -1;
  tab.optimize(phase1, n + m, result.pivots);
  Rational infeasibility(0);
  for (std::size_t r = 0; r < tab.num_rows(); ++r)
    if (tab.basic(r) >= n) infeasibility += tab.rhs(r);
  if (infeasibility != 0) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  // Drive zero-valued artificials out of the basis; rows that cannot pivot are redundant.
  for (std::size_t r = 0; r < tab.num_rows();) {
    if (tab.basic(r) < n) {
      ++r;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n && !col; ++j)
      if (tab.row(r)[j] != 0) col = j;
    if (col) {
      tab.pivot(r, *col);
      ++result.pivots;
      ++r;
    } else {
      tab.drop_row(r);
    }
  }

  RationalVector cost(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.c[j];
  if (!tab.optimize(cost, n, result.pivots)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < tab.num_rows(); ++r) result.x[tab.basic(r)] = tab.rhs(r);
  result.objective = 0;
  for (std::size_t j = 0; j < n; ++j) result.objective += lp.c[j] * result.x[j];
  return result;
}

}  // namespace vqsignal
