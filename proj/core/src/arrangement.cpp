#include "vqsignal/arrangement.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "vqsignal/equilibrium.hpp"
#include "vqsignal/error.hpp"
#include "vqsignal/linalg.hpp"

namespace vqsignal {

namespace {

// Coordinates x = (mu_1, ..., mu_{d-1}) with mu_d = 1 - sum x.
struct XPlane {
  RationalVector n;
  Rational c;  // n . x = c
};
struct XHalf {
  RationalVector g;
  Rational h;  // g . x + h >= 0
};

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

XPlane to_x(const Hyperplane& p) {
  const std::size_t D = p.normal.size() - 1;
  XPlane x{RationalVector(D), p.offset - p.normal[D]};
  for (std::size_t s = 0; s < D; ++s) x.n[s] = p.normal[s] - p.normal[D];
  return x;
}

XHalf to_x(const AffineForm& f) {
  const std::size_t D = f.coeffs.size() - 1;
  XHalf x{RationalVector(D), f.constant + f.coeffs[D]};
  for (std::size_t s = 0; s < D; ++s) x.g[s] = f.coeffs[s] - f.coeffs[D];
  return x;
}

Belief to_belief(const RationalVector& x) {
  Belief mu(x);
  Rational rest(1);
  for (const auto& v : x) rest -= v;
  mu.push_back(rest);
  return mu;
}

std::vector<XHalf> region_halves(std::size_t d, const Region& region) {
  const std::size_t D = d - 1;
  std::vector<XHalf> halves;
  for (std::size_t s = 0; s < D; ++s) {
    XHalf h{RationalVector(D, Rational(0)), Rational(0)};
    h.g[s] = 1;
    halves.push_back(std::move(h));
  }
  halves.push_back({RationalVector(D, Rational(-1)), Rational(1)});
  for (const auto& f : region) {
    if (f.coeffs.size() != d) throw InputError("region form has wrong dimension");
    XHalf h = to_x(f);
    if (is_zero(h.g) && h.h >= 0) continue;
    halves.push_back(std::move(h));
  }
  return halves;
}

// Affine flat x = origin + sum_j t_j dirs[j].
struct Flat {
  RationalVector origin;
  std::vector<RationalVector> dirs;
};

struct Polytope {
  std::vector<RationalVector> verts;
  std::vector<std::vector<std::size_t>> tight;  // sorted constraint ids per vertex
};

class FlatSolver {
 public:
  FlatSolver(const Flat& flat, const std::vector<XHalf>& halves, const std::vector<XPlane>& planes)
      : flat_(flat), k_(flat.dirs.size()) {
    for (const auto& h : halves) {
      RationalVector g = restrict(h.g);
      Rational c = h.h + dot(h.g, flat.origin);
      if (is_zero(g)) {
        if (c < 0) empty_ = true;
        continue;
      }
      normals_.push_back(std::move(g));
      half_const_.push_back(std::move(c));
    }
    num_halves_ = normals_.size();
    for (const auto& p : planes) {
      RationalVector n = restrict(p.n);
      if (is_zero(n)) continue;
      plane_rhs_.push_back(p.c - dot(p.n, flat.origin));
      normals_.push_back(std::move(n));
    }
  }

  std::vector<Polytope> cells() {
    std::vector<Polytope> out;
    if (empty_) return out;
    if (k_ == 0) {
      out.push_back(Polytope{{RationalVector{}}, {{}}});
      return out;
    }
    auto start = initial();
    if (!start) return out;
    out.push_back(std::move(*start));
    for (std::size_t p = num_halves_; p < normals_.size(); ++p) {
      std::vector<Polytope> next;
      next.reserve(out.size() + 4);
      for (auto& poly : out) clip(std::move(poly), p, next);
      out = std::move(next);
    }
    return out;
  }

  RationalVector lift(const RationalVector& t) const {
    RationalVector x = flat_.origin;
    for (std::size_t j = 0; j < k_; ++j)
      for (std::size_t s = 0; s < x.size(); ++s) x[s] += t[j] * flat_.dirs[j][s];
    return x;
  }

 private:
  RationalVector restrict(const RationalVector& n) const {
    RationalVector r(k_);
    for (std::size_t j = 0; j < k_; ++j) r[j] = dot(n, flat_.dirs[j]);
    return r;
  }

  Rational value(std::size_t id, const RationalVector& t) const {
    if (id < num_halves_) return dot(normals_[id], t) + half_const_[id];
    return dot(normals_[id], t) - plane_rhs_[id - num_halves_];
  }

  std::optional<Polytope> initial() const {
    Polytope poly;
    std::vector<std::size_t> idx(k_);
    const std::size_t r = num_halves_;
    if (r < k_) return std::nullopt;
    std::vector<char> pick(r, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k_), 1);
    do {
      RationalMatrix a;
      RationalVector b;
      for (std::size_t i = 0; i < r; ++i)
        if (pick[i]) {
          a.push_back(normals_[i]);
          b.push_back(-half_const_[i]);
        }
      auto sol = solve_affine(a, b, k_);
      if (!sol || !sol->basis.empty()) continue;
      const RationalVector& t = sol->particular;
      bool inside = true;
      for (std::size_t i = 0; i < r && inside; ++i) inside = value(i, t) >= 0;
      if (!inside || std::find(poly.verts.begin(), poly.verts.end(), t) != poly.verts.end()) continue;
      std::vector<std::size_t> tight;
      for (std::size_t i = 0; i < r; ++i)
        if (value(i, t) == 0) tight.push_back(i);
      poly.verts.push_back(t);
      poly.tight.push_back(std::move(tight));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (poly.verts.size() <= k_) return std::nullopt;
    RationalMatrix diffs;
    for (std::size_t v = 1; v < poly.verts.size(); ++v) {
      RationalVector dv(k_);
      for (std::size_t j = 0; j < k_; ++j) dv[j] = poly.verts[v][j] - poly.verts[0][j];
      diffs.push_back(std::move(dv));
    }
    if (rank(diffs) < k_) return std::nullopt;
    return poly;
  }

  bool is_edge(const Polytope& poly, std::size_t a, std::size_t b) const {
    std::vector<std::size_t> common;
    std::set_intersection(poly.tight[a].begin(), poly.tight[a].end(), poly.tight[b].begin(), poly.tight[b].end(),
                          std::back_inserter(common));
    if (k_ == 1) return true;
    if (common.size() + 1 < k_) return false;
    RationalMatrix rows;
    for (auto id : common) rows.push_back(normals_[id]);
    return rank(rows) == k_ - 1;
  }

  void clip(Polytope poly, std::size_t p, std::vector<Polytope>& out) const {
    std::vector<int> side(poly.verts.size());
    std::vector<Rational> vals(poly.verts.size());
    bool pos = false, neg = false;
    for (std::size_t v = 0; v < poly.verts.size(); ++v) {
      vals[v] = value(p, poly.verts[v]);
      side[v] = sgn(vals[v]);
      pos |= side[v] > 0;
      neg |= side[v] < 0;
    }
    auto add_tight = [p](std::vector<std::size_t>& t) {
      t.insert(std::upper_bound(t.begin(), t.end(), p), p);
    };
    if (!(pos && neg)) {
      for (std::size_t v = 0; v < poly.verts.size(); ++v)
        if (side[v] == 0) add_tight(poly.tight[v]);
      out.push_back(std::move(poly));
      return;
    }
    Polytope upper, lower;
    for (std::size_t v = 0; v < poly.verts.size(); ++v) {
      auto tight = poly.tight[v];
      if (side[v] == 0) add_tight(tight);
      if (side[v] >= 0) {
        upper.verts.push_back(poly.verts[v]);
        upper.tight.push_back(tight);
      }
      if (side[v] <= 0) {
        lower.verts.push_back(poly.verts[v]);
        lower.tight.push_back(tight);
      }
    }
    for (std::size_t a = 0; a < poly.verts.size(); ++a)
      for (std::size_t b = a + 1; b < poly.verts.size(); ++b) {
        if (side[a] * side[b] >= 0 || !is_edge(poly, a, b)) continue;
        const Rational lam = vals[a] / (vals[a] - vals[b]);
        RationalVector t(k_);
        for (std::size_t j = 0; j < k_; ++j) t[j] = poly.verts[a][j] + lam * (poly.verts[b][j] - poly.verts[a][j]);
        std::vector<std::size_t> tight;
        std::set_intersection(poly.tight[a].begin(), poly.tight[a].end(), poly.tight[b].begin(),
                              poly.tight[b].end(), std::back_inserter(tight));
        add_tight(tight);
        upper.verts.push_back(t);
        upper.tight.push_back(tight);
        lower.verts.push_back(std::move(t));
        lower.tight.push_back(std::move(tight));
      }
    out.push_back(std::move(upper));
    out.push_back(std::move(lower));
  }

  const Flat& flat_;
  std::size_t k_;
  bool empty_ = false;
  std::vector<RationalVector> normals_;
  RationalVector half_const_;
  RationalVector plane_rhs_;
  std::size_t num_halves_ = 0;
};

RationalVector centroid(const std::vector<RationalVector>& pts) {
  RationalVector c(pts.front().size(), Rational(0));
  for (const auto& p : pts)
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += p[j];
  for (auto& x : c) x /= static_cast<unsigned long>(pts.size());
  return c;
}

Cell make_cell(const std::vector<Hyperplane>& planes, std::size_t dim, const std::vector<RationalVector>& xverts,
               const RationalVector& xrep, bool with_signs) {
  Cell cell;
  cell.dimension = dim;
  for (const auto& v : xverts) cell.vertices.push_back(to_belief(v));
  cell.representative = to_belief(xrep);
  if (with_signs) cell.signs = sign_vector(planes, cell.representative);
  return cell;
}

std::string flat_key(RationalMatrix aug) {
  row_reduce(aug);
  std::ostringstream os;
  for (const auto& row : aug) {
    if (is_zero(row)) continue;
    for (const auto& x : row) os << x.get_str() << ',';
    os << ';';
  }
  return os.str();
}

// One-dimensional simplex: sort the crossing points.
std::vector<Cell> cells_1d(const std::vector<Hyperplane>& planes, std::size_t k, const std::vector<XHalf>& halves,
                           bool with_signs) {
  std::optional<Rational> lo, hi;
  for (const auto& h : halves) {
    if (h.g[0] == 0) {
      if (h.h < 0) return {};
      continue;
    }
    Rational b = -h.h / h.g[0];
    if (h.g[0] > 0) {
      if (!lo || b > *lo) lo = b;
    } else if (!hi || b < *hi) {
      hi = b;
    }
  }
  if (*lo > *hi) return {};
  std::vector<Rational> pts{*lo, *hi};
  for (const auto& p : planes) {
    XPlane x = to_x(p);
    if (x.n[0] == 0) continue;
    Rational b = x.c / x.n[0];
    if (b > *lo && b < *hi) pts.push_back(b);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Cell> out;
  if (k == 0) {
    for (const auto& p : pts) out.push_back(make_cell(planes, 0, {{p}}, {p}, with_signs));
  } else {
    for (std::size_t q = 0; q + 1 < pts.size(); ++q)
      out.push_back(make_cell(planes, 1, {{pts[q]}, {pts[q + 1]}}, {(pts[q] + pts[q + 1]) / 2}, with_signs));
  }
  return out;
}

}  // namespace

std::string HyperplaneLabel::describe() const {
  auto idx = [](std::size_t v) { return std::to_string(v + 1); };
  switch (kind) {
    case HyperplaneKind::LinkTie:
      return "H(" + idx(i) + "," + idx(j) + ")";
    case HyperplaneKind::ExitTie:
      return "H(" + idx(i) + "," + idx(j) + ";s=" + idx(s) + ")";
    case HyperplaneKind::HorizonCrossing:
      return "H(" + idx(i) + ";s=" + idx(s) + ";T)";
    case HyperplaneKind::GridLevel:
      return "L(s=" + idx(s) + ",j=" + idx(j) + ")";
    case HyperplaneKind::GridZero:
      return "L(s=" + idx(s) + ",0)";
    case HyperplaneKind::Custom:
      break;
  }
  return "custom";
}

bool Hyperplane::degenerate() const {
  if (normal.empty()) return true;
  return std::all_of(normal.begin(), normal.end(), [&](const Rational& a) { return a == normal.front(); });
}

std::vector<Hyperplane> build_H(const Instance& inst) {
  std::vector<Hyperplane> out;
  for (std::size_t i = 0; i < inst.links(); ++i)
    for (std::size_t j = i + 1; j < inst.links(); ++j) {
      Hyperplane h;
      for (std::size_t s = 0; s < inst.scenarios(); ++s)
        h.normal.push_back(inst.travel_times[i][s] - inst.travel_times[j][s]);
      h.offset = 0;
      h.label = {HyperplaneKind::LinkTie, i, j, HyperplaneLabel::none};
      out.push_back(std::move(h));
    }
  return out;
}

std::vector<Hyperplane> build_Hstar(const Instance& inst, const Belief& cell_point) {
  const std::size_t m = inst.links(), d = inst.scenarios();
  const auto theta = breakpoint_forms(inst, link_order(inst, cell_point));
  std::vector<Hyperplane> out;
  auto unsatisfiable = [&](HyperplaneLabel label) {
    return Hyperplane{RationalVector(d, Rational(0)), Rational(1), label};
  };
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        HyperplaneLabel label{HyperplaneKind::ExitTie, i, j, s};
        if (!theta[i] || !theta[j]) {
          out.push_back(unsatisfiable(label));
          continue;
        }
        Hyperplane h;
        for (std::size_t t = 0; t < d; ++t) h.normal.push_back(theta[i]->coeffs[t] - theta[j]->coeffs[t]);
        h.offset = inst.travel_times[j][s] - inst.travel_times[i][s];
        h.label = label;
        out.push_back(std::move(h));
      }
    for (std::size_t i = 0; i < m; ++i) {
      HyperplaneLabel label{HyperplaneKind::HorizonCrossing, i, HyperplaneLabel::none, s};
      if (!theta[i]) {
        out.push_back(unsatisfiable(label));
        continue;
      }
      out.push_back(Hyperplane{theta[i]->coeffs, inst.horizon - inst.travel_times[i][s], label});
    }
  }
  return out;
}

std::vector<int> sign_vector(const std::vector<Hyperplane>& planes, const Belief& mu) {
  std::vector<int> signs;
  signs.reserve(planes.size());
  for (const auto& p : planes) signs.push_back(sgn(p.evaluate(mu)));
  return signs;
}

Region cell_region(const std::vector<Hyperplane>& planes, const Cell& cell) {
  Region region;
  for (std::size_t h = 0; h < planes.size(); ++h) {
    if (planes[h].degenerate()) continue;
    AffineForm f{planes[h].normal, Rational(-planes[h].offset)};
    if (cell.signs[h] >= 0) region.push_back(f);
    if (cell.signs[h] <= 0) region.push_back(f * Rational(-1));
  }
  return region;
}

namespace {

std::vector<Cell> enumerate_impl(const std::vector<Hyperplane>& planes, std::size_t d, std::size_t k,
                                 const Region& region, bool with_signs) {
  if (d == 0) throw InputError("arrangement needs at least one scenario");
  if (d > kMaxExactScenarios)
    throw UnsupportedDimension("exact cell enumeration supports at most " + std::to_string(kMaxExactScenarios) +
                               " scenarios, got " + std::to_string(d));
  if (k >= d) throw InputError("cell dimension must be below the scenario count");
  for (const auto& p : planes)
    if (p.normal.size() != d) throw InputError("hyperplane dimension does not match the scenario count");
  const std::size_t D = d - 1;
  if (D == 0) {
    for (const auto& f : region)
      if (f(Belief{Rational(1)}) < 0) return {};
    return {make_cell(planes, 0, {RationalVector{}}, RationalVector{}, with_signs)};
  }
  const auto halves = region_halves(d, region);
  if (D == 1) return cells_1d(planes, k, halves, with_signs);

  std::vector<XPlane> xplanes;
  for (const auto& p : planes)
    if (!p.degenerate()) xplanes.push_back(to_x(p));
  std::vector<XPlane> all = xplanes;
  for (const auto& h : halves) all.push_back({h.g, -h.h});

  std::vector<Flat> flats;
  if (k == D) {
    Flat f{RationalVector(D, Rational(0)), {}};
    for (std::size_t j = 0; j < D; ++j) {
      RationalVector e(D, Rational(0));
      e[j] = 1;
      f.dirs.push_back(std::move(e));
    }
    flats.push_back(std::move(f));
  } else {
    const std::size_t pick_count = D - k;
    std::set<std::string> seen;
    std::vector<char> pick(all.size(), 0);
    if (all.size() >= pick_count) {
      std::fill(pick.begin(), pick.begin() + static_cast<long>(pick_count), 1);
      do {
        RationalMatrix a, aug;
        RationalVector b;
        for (std::size_t i = 0; i < all.size(); ++i)
          if (pick[i]) {
            a.push_back(all[i].n);
            b.push_back(all[i].c);
            RationalVector row = all[i].n;
            row.push_back(all[i].c);
            aug.push_back(std::move(row));
          }
        auto sol = solve_affine(a, b, D);
        if (!sol || sol->basis.size() != k) continue;
        if (!seen.insert(flat_key(std::move(aug))).second) continue;
        flats.push_back(Flat{sol->particular, sol->basis});
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  }

  std::vector<Cell> out;
  for (const auto& flat : flats) {
    FlatSolver solver(flat, halves, xplanes);
    for (const auto& poly : solver.cells()) {
      std::vector<RationalVector> xverts;
      for (const auto& t : poly.verts) xverts.push_back(solver.lift(t));
      out.push_back(make_cell(planes, k, xverts, solver.lift(centroid(poly.verts)), with_signs));
    }
  }
  return out;
}

}  // namespace

std::vector<Cell> enumerate_cells(const std::vector<Hyperplane>& planes, std::size_t d, std::size_t k,
                                  const Region& region) {
  return enumerate_impl(planes, d, k, region, true);
}

std::vector<Belief> enumerate_vertices(const std::vector<Hyperplane>& planes, std::size_t d, const Region& region) {
  std::vector<Belief> out;
  for (auto& cell : enumerate_impl(planes, d, 0, region, false)) out.push_back(std::move(cell.representative));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Cell> enumerate_all_cells(const std::vector<Hyperplane>& planes, std::size_t d, const Region& region) {
  std::vector<Cell> out;
  for (std::size_t k = 0; k < d; ++k) {
    auto cells = enumerate_cells(planes, d, k, region);
    out.insert(out.end(), std::make_move_iterator(cells.begin()), std::make_move_iterator(cells.end()));
  }
  return out;
}

mpz_class buck_bound(std::size_t n, std::size_t dim, std::size_t k) {
  auto choose = [](long a, long b) -> mpz_class {
    if (a < 0 || b < 0 || b > a) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
  };
  const long nn = static_cast<long>(n), dd = static_cast<long>(dim), kk = static_cast<long>(k);
  mpz_class inner = 0;
  for (long i = 0; i <= kk; ++i) inner += choose(nn - dd + kk, i);
  return choose(nn, dd - kk) * inner;
}

}  // namespace vqsignal
