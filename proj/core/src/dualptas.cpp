#include "vqsignal/dualptas.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "vqsignal/equilibrium.hpp"
#include "vqsignal/error.hpp"
#include "vqsignal/objectives.hpp"

namespace vqsignal {

namespace {

Belief belief_at(const Rational& x) { return Belief{Rational(1 - x), x}; }

void sort_unique(RationalVector& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void add_crossings(const std::vector<Hyperplane>& planes, const Rational& lo, const Rational& hi,
                   RationalVector& out) {
  for (const auto& p : planes) {
    const Rational slope = p.normal[1] - p.normal[0];
    if (slope == 0) continue;
    Rational x = (p.offset - p.normal[0]) / slope;
    if (x > lo && x < hi) out.push_back(std::move(x));
  }
}

bool inside(const Region& region, const Belief& mu) {
  for (const auto& x : mu)
    if (x < 0) return false;
  return std::all_of(region.begin(), region.end(), [&](const AffineForm& f) { return f(mu) >= 0; });
}

// f is a face of s when every sign of f is zero or agrees with s.
bool is_face_of(const std::vector<int>& f, const std::vector<int>& s) {
  for (std::size_t h = 0; h < f.size(); ++h)
    if (f[h] != 0 && f[h] != s[h]) return false;
  return true;
}

std::vector<RationalVector> span_basis(const std::vector<Belief>& verts) {
  RationalMatrix diffs;
  for (std::size_t v = 1; v < verts.size(); ++v) {
    RationalVector dv(verts[v].size());
    for (std::size_t s = 0; s < dv.size(); ++s) dv[s] = verts[v][s] - verts[0][s];
    diffs.push_back(std::move(dv));
  }
  if (diffs.empty()) return {};
  row_reduce(diffs);
  std::vector<RationalVector> basis;
  for (auto& row : diffs)
    if (std::any_of(row.begin(), row.end(), [](const Rational& x) { return x != 0; })) basis.push_back(row);
  return basis;
}

}  // namespace

SeparationOracle::SeparationOracle(const Instance& inst) : inst_(inst) {
  inst.validate();
  if (inst.scenarios() > kMaxExactScenarios)
    throw UnsupportedDimension("separation supports at most " + std::to_string(kMaxExactScenarios) + " scenarios");
  if (inst.scenarios() <= 2)
    build_1d();
  else
    build_general();
}

std::size_t SeparationOracle::face_count() const {
  std::size_t n = 0;
  for (const auto& p : patches_) n += p.faces.size();
  return n;
}

void SeparationOracle::build_1d() {
  const std::size_t d = inst_.scenarios();
  auto make_patch = [&](const Belief& interior, std::vector<Face> faces, Region closure) {
    Patch p;
    const auto forms = throughput_forms(inst_, interior);
    for (const auto& f : forms) {
      p.forms.push_back(f.coeffs);
      p.constants.push_back(f.constant);
    }
    p.interior = interior;
    p.faces = std::move(faces);
    p.closure = std::move(closure);
    patches_.push_back(std::move(p));
  };
  if (d == 1) {
    make_patch(Belief{Rational(1)}, {Face{Belief{Rational(1)}, {}}}, {});
    return;
  }
  RationalVector h_points{Rational(0), Rational(1)};
  add_crossings(build_H(inst_), Rational(0), Rational(1), h_points);
  sort_unique(h_points);
  RationalVector cuts = h_points;
  for (std::size_t q = 0; q + 1 < h_points.size(); ++q)
    add_crossings(build_Hstar(inst_, belief_at((h_points[q] + h_points[q + 1]) / 2)), h_points[q], h_points[q + 1],
                  cuts);
  sort_unique(cuts);
  for (std::size_t q = 0; q + 1 < cuts.size(); ++q) {
    const Rational &lo = cuts[q], &hi = cuts[q + 1];
    const Belief a = belief_at(lo), b = belief_at(hi);
    std::vector<Face> faces{{a, {}}, {b, {}}, {a, {RationalVector{Rational(lo - hi), Rational(hi - lo)}}}};
    // lo <= mu_2 <= hi
    Region closure{AffineForm{{Rational(0), Rational(1)}, Rational(-lo)}, AffineForm{{Rational(0), Rational(-1)}, hi}};
    make_patch(belief_at((lo + hi) / 2), std::move(faces), std::move(closure));
  }
}

void SeparationOracle::build_general() {
  const std::size_t d = inst_.scenarios();
  const auto H = build_H(inst_);
  for (const auto& cell : enumerate_cells(H, d, d - 1)) {
    const Region region = cell_region(H, cell);
    const auto Hstar = build_Hstar(inst_, cell.representative);
    const auto faces = enumerate_all_cells(Hstar, d, region);
    for (const auto& sub : faces) {
      if (sub.dimension != d - 1) continue;
      Patch p;
      for (const auto& f : throughput_forms(inst_, sub.representative)) {
        p.forms.push_back(f.coeffs);
        p.constants.push_back(f.constant);
      }
      p.interior = sub.representative;
      p.closure = region;
      for (const auto& r : cell_region(Hstar, sub)) p.closure.push_back(r);
      for (const auto& f : faces)
        if (is_face_of(f.signs, sub.signs)) p.faces.push_back(Face{f.vertices.front(), span_basis(f.vertices)});
      patches_.push_back(std::move(p));
    }
  }
}

Rational SeparationOracle::patch_value(const Patch& p, const RationalVector& w, const Belief& mu) const {
  Rational v(0);
  for (std::size_t s = 0; s < mu.size(); ++s) v += mu[s] * (dot(p.forms[s], mu) + p.constants[s] - w[s]);
  return v;
}

SeparationResult SeparationOracle::separate(const DualPoint& w) const {
  RationalVector exact;
  for (double x : w) exact.push_back(from_double(x));
  return separate(exact);
}

SeparationResult SeparationOracle::separate(const RationalVector& w) const {
  const std::size_t d = inst_.scenarios();
  if (w.size() != d) throw InputError("dual point has wrong dimension");
  const Patch* best_patch = nullptr;
  SeparationResult result;
  for (const auto& p : patches_) {
    // g(mu) = mu^T M mu + c^T mu with M[s][t] = forms[s][t].
    RationalMatrix sym(d, RationalVector(d));
    RationalVector c(d);
    for (std::size_t s = 0; s < d; ++s) {
      c[s] = p.constants[s] - w[s];
      for (std::size_t t = 0; t < d; ++t) sym[s][t] = p.forms[s][t] + p.forms[t][s];
    }
    for (const auto& f : p.faces) {
      Belief mu = f.origin;
      const std::size_t k = f.dirs.size();
      if (k > 0) {
        RationalVector grad0(d);
        for (std::size_t s = 0; s < d; ++s) grad0[s] = dot(sym[s], f.origin) + c[s];
        RationalMatrix a(k, RationalVector(k));
        RationalVector rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
          RationalVector sd(d);
          for (std::size_t s = 0; s < d; ++s) sd[s] = dot(sym[s], f.dirs[i]);
          for (std::size_t j = 0; j < k; ++j) a[j][i] = dot(f.dirs[j], sd);
          rhs[i] = -dot(f.dirs[i], grad0);
        }
        auto sol = solve_affine(a, rhs, k);
        if (!sol) continue;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t s = 0; s < d; ++s) mu[s] += sol->particular[i] * f.dirs[i][s];
        if (!inside(p.closure, mu)) continue;
      }
      Rational v = patch_value(p, w, mu);
      if (!best_patch || v > result.supremum) {
        result.supremum = std::move(v);
        result.argmax = std::move(mu);
        best_patch = &p;
      }
    }
  }
  if (!best_patch || result.supremum <= 0) return result;

  Rational gap = expected_throughput(inst_, result.argmax) - dot(w, result.argmax);
  Belief point = result.argmax;
  if (gap <= 0) {
    // The supremum is a one-sided limit; step into the patch where it is attained.
    Rational best_value(0);
    Belief step(d);
    Rational t(1, 2);
    for (int j = 0; j < 128; ++j, t /= 2) {
      for (std::size_t s = 0; s < d; ++s) step[s] = result.argmax[s] + t * (best_patch->interior[s] - result.argmax[s]);
      Rational v = patch_value(*best_patch, w, step);
      if (v > best_value) {
        best_value = v;
        point = step;
      }
    }
    gap = expected_throughput(inst_, point) - dot(w, point);
    if (gap <= 0) throw std::logic_error("separation could not certify a violating belief");
  }
  result.violation = Violation{std::move(point), std::move(gap)};
  return result;
}

SeparationResult separate(const Instance& inst, const DualPoint& w) { return SeparationOracle(inst).separate(w); }

namespace {

Rational capacity_gap(const Instance& inst) {
  const std::size_t m = inst.links();
  std::optional<Rational> best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    Rational total(0);
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t{1} << i)) total += inst.capacities[i];
    Rational gap = abs(inst.inflow - total);
    if (gap != 0 && (!best || gap < *best)) best = gap;
  }
  return *best;
}

Rational max_travel_time(const Instance& inst) {
  Rational best(0);
  for (const auto& row : inst.travel_times)
    for (const auto& t : row) best = std::max(best, t);
  return best;
}

double round_up(const Rational& x) { return std::nextafter(to_double(x), std::numeric_limits<double>::infinity()); }

}  // namespace

double dual_radius(const Instance& inst) {
  if (inst.links() > 30) throw InputError("radius bound enumerates link subsets; too many links");
  const Rational nu_star = sum(inst.capacities);
  const Rational scale(static_cast<unsigned long>(inst.scenarios() * (inst.links() + 1)));
  return round_up(scale * max_travel_time(inst) * nu_star * nu_star / capacity_gap(inst));
}

double dual_radius_product(const Instance& inst) {
  const Rational scale(static_cast<unsigned long>(inst.scenarios() * (inst.links() + 1)));
  return round_up(scale * scale * max_travel_time(inst) * sum(inst.capacities));
}

DualResult solve_additive_ptas(const Instance& inst, double epsilon_star) {
  if (!(epsilon_star > 0)) throw InputError("epsilon must be positive");
  const SeparationOracle oracle(inst);
  const std::size_t d = inst.scenarios();
  const double R = std::max({dual_radius(inst), dual_radius_product(inst), 1.0});
  DualResult out;
  out.epsilon = epsilon_star / static_cast<double>(d + 2);
  const double eps = out.epsilon;
  out.iteration_cap = static_cast<std::size_t>(16.0 * d * d * std::log(R * d / eps)) + 64;
  out.best_upper = std::numeric_limits<double>::infinity();
  Eigen::VectorXd lambda(d);
  for (std::size_t s = 0; s < d; ++s) lambda[s] = to_double(inst.prior[s]);

  auto record_feasible = [&](const Eigen::VectorXd& c) {
    const double value = lambda.dot(c);
    if (value < out.best_upper) {
      out.best_upper = value;
      out.best_w.assign(c.data(), c.data() + d);
    }
  };

  if (d == 1) {
    double lo = -R, hi = R;
    out.lower_bound = lo;
    while (out.iterations < out.iteration_cap) {
      ++out.iterations;
      Eigen::VectorXd c(1);
      c[0] = (lo + hi) / 2;
      ++out.oracle_calls;
      if (oracle.separate(DualPoint{c[0]}).feasible()) {
        record_feasible(c);
        hi = c[0];
      } else {
        lo = c[0];
      }
      out.lower_bound = lo;
      if (out.best_upper - out.lower_bound <= eps) {
        out.converged = true;
        break;
      }
    }
    out.p = out.best_upper - eps;
    return out;
  }

  const double n = static_cast<double>(d);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(d, d) * (R * R * n);
  const double expected_log_shrink = 0.5 * (n * std::log(n * n / (n * n - 1)) + std::log((n - 1) / (n + 1)));
  double log_det = std::log(P.determinant());
  out.lower_bound = -std::numeric_limits<double>::infinity();

  while (out.iterations < out.iteration_cap) {
    ++out.iterations;
    Eigen::VectorXd g(d);
    std::size_t outside = d;
    for (std::size_t s = 0; s < d; ++s)
      if (std::abs(c[s]) > R) outside = s;
    if (outside < d) {
      g = Eigen::VectorXd::Zero(d);
      g[outside] = c[outside] > 0 ? 1.0 : -1.0;
    } else {
      ++out.oracle_calls;
      const auto res = oracle.separate(DualPoint(c.data(), c.data() + d));
      if (res.violation) {
        for (std::size_t s = 0; s < d; ++s) g[s] = -to_double(res.violation->belief[s]);
      } else {
        record_feasible(c);
        g = lambda;
      }
    }
    const double lam_width = std::sqrt(std::max(0.0, lambda.dot(P * lambda)));
    out.lower_bound = std::max(out.lower_bound, lambda.dot(c) - lam_width);
    if (out.best_upper - out.lower_bound <= eps) {
      out.converged = true;
      break;
    }
    const double gpg = g.dot(P * g);
    if (!(gpg > 0)) break;
    const Eigen::VectorXd b = P * g / std::sqrt(gpg);
    c -= b / (n + 1);
    P = (n * n / (n * n - 1)) * (P - (2.0 / (n + 1)) * b * b.transpose());
    P = 0.5 * (P + P.transpose());
    const double next_log_det = std::log(P.determinant());
    out.max_volume_drift = std::max(out.max_volume_drift, std::abs(0.5 * (next_log_det - log_det) - expected_log_shrink));
    log_det = next_log_det;
  }
  out.p = out.best_upper - eps;
  return out;
}

}  // namespace vqsignal
