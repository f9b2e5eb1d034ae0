#include "vqsignal/oracle.hpp"

#include <algorithm>

#include "vqsignal/arrangement.hpp"
#include "vqsignal/equilibrium.hpp"
#include "vqsignal/error.hpp"
#include "vqsignal/lp.hpp"
#include "vqsignal/objectives.hpp"

namespace vqsignal {

HighPrecision to_high_precision(const Rational& x) {
  HighPrecision n(x.get_num().get_str()), d(x.get_den().get_str());
  return n / d;
}

HighPrecision Quadratic::operator()(const HighPrecision& x) const {
  return (to_high_precision(a) * x + to_high_precision(b)) * x + to_high_precision(c);
}

Rational PiecewiseQuadratic1D::evaluate(const Rational& x) const {
  if (x < breakpoints.front() || x > breakpoints.back()) throw InputError("point outside the piecewise domain");
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
  if (*it == x) return point_values[static_cast<std::size_t>(it - breakpoints.begin())];
  return pieces[static_cast<std::size_t>(it - breakpoints.begin()) - 1](x);
}

RationalVector PiecewiseQuadratic1D::discontinuities() const {
  RationalVector out;
  for (std::size_t j = 1; j + 1 < breakpoints.size(); ++j)
    if (pieces[j - 1](breakpoints[j]) != pieces[j](breakpoints[j])) out.push_back(breakpoints[j]);
  return out;
}

RationalVector PiecewiseQuadratic1D::interior_breakpoints() const {
  return RationalVector(breakpoints.begin() + 1, breakpoints.end() - 1);
}

namespace {

Belief belief_at(const Rational& x) { return Belief{Rational(1 - x), x}; }

Rational objective_value(const Instance& inst, const Rational& x, Objective objective) {
  return objective == Objective::Throughput ? expected_throughput(inst, belief_at(x))
                                            : expected_makespan(inst, belief_at(x));
}

void add_crossings(const std::vector<Hyperplane>& planes, const Rational& lo, const Rational& hi,
                   RationalVector& out) {
  for (const auto& p : planes) {
    // (1 - x) n0 + x n1 = offset
    const Rational slope = p.normal[1] - p.normal[0];
    if (slope == 0) continue;
    Rational x = (p.offset - p.normal[0]) / slope;
    if (x > lo && x < hi) out.push_back(std::move(x));
  }
}

void sort_unique(RationalVector& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Realized exit times at the horizon of every supported link, per scenario.
std::vector<std::vector<std::pair<std::size_t, Rational>>> horizon_exits(const Instance& inst, const Rational& x) {
  const auto p = solve_for_belief(inst, belief_at(x));
  std::vector<std::vector<std::pair<std::size_t, Rational>>> out(inst.scenarios());
  for (std::size_t s = 0; s < inst.scenarios(); ++s) {
    const auto col = inst.scenario_column(s);
    for (std::size_t i = 0; i < inst.links(); ++i)
      if (inflow(p, i, inst.horizon) > 0) out[s].emplace_back(i, exit_time(p, i, inst.horizon, col));
  }
  return out;
}

// Points where two affine exit-time curves swap inside (lo, hi).
void add_exit_swaps(const Instance& inst, const Rational& lo, const Rational& hi, RationalVector& out) {
  const Rational x1 = lo + (hi - lo) / 3, x2 = lo + 2 * (hi - lo) / 3;
  const auto e1 = horizon_exits(inst, x1), e2 = horizon_exits(inst, x2);
  for (std::size_t s = 0; s < inst.scenarios(); ++s) {
    if (e1[s].size() != e2[s].size()) continue;
    for (std::size_t a = 0; a < e1[s].size(); ++a)
      for (std::size_t b = a + 1; b < e1[s].size(); ++b) {
        const Rational d1 = e1[s][a].second - e1[s][b].second, d2 = e2[s][a].second - e2[s][b].second;
        if (d1 == d2) continue;
        Rational x = x1 + d1 / (d1 - d2) * (x2 - x1);
        if (x > lo && x < hi) out.push_back(std::move(x));
      }
  }
}

Quadratic fit(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1, const Rational& x2,
              const Rational& y2) {
  const Rational d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
  Quadratic q;
  q.a = (d12 - d01) / (x2 - x0);
  q.b = d01 - q.a * (x0 + x1);
  q.c = y0 - (q.a * x0 + q.b) * x0;
  return q;
}

}  // namespace

PiecewiseQuadratic1D extract_piecewise_1d(const Instance& inst, Objective objective) {
  inst.validate();
  if (inst.scenarios() != 2) throw InputError("piecewise extraction needs exactly two scenarios");
  RationalVector h_points{Rational(0), Rational(1)};
  add_crossings(build_H(inst), Rational(0), Rational(1), h_points);
  sort_unique(h_points);

  RationalVector candidates = h_points;
  for (std::size_t q = 0; q + 1 < h_points.size(); ++q) {
    const Rational &lo = h_points[q], &hi = h_points[q + 1];
    const Belief mid = belief_at((lo + hi) / 2);
    add_crossings(build_Hstar(inst, mid), lo, hi, candidates);
    if (objective == Objective::Makespan) {
      const auto theta = breakpoint_forms(inst, link_order(inst, mid));
      std::vector<Hyperplane> support;
      for (const auto& f : theta)
        if (f) support.push_back({f->coeffs, inst.horizon, {}});
      add_crossings(support, lo, hi, candidates);
    }
  }
  sort_unique(candidates);
  if (objective == Objective::Makespan) {
    RationalVector swaps;
    for (std::size_t q = 0; q + 1 < candidates.size(); ++q)
      add_exit_swaps(inst, candidates[q], candidates[q + 1], swaps);
    candidates.insert(candidates.end(), swaps.begin(), swaps.end());
    sort_unique(candidates);
  }

  PiecewiseQuadratic1D pw;
  for (std::size_t q = 0; q + 1 < candidates.size(); ++q) {
    const Rational &lo = candidates[q], &hi = candidates[q + 1];
    const Rational w = hi - lo;
    const Rational x0 = lo + w / 4, x1 = lo + w / 2, x2 = lo + 3 * w / 4, xc = lo + w / 3;
    const Quadratic piece = fit(x0, objective_value(inst, x0, objective), x1, objective_value(inst, x1, objective),
                                x2, objective_value(inst, x2, objective));
    if (piece(xc) != objective_value(inst, xc, objective))
      throw std::logic_error("objective is not quadratic between consecutive candidate breakpoints");
    const Rational at_lo = objective_value(inst, lo, objective);
    const bool merge = !pw.pieces.empty() && pw.pieces.back() == piece && piece(lo) == at_lo;
    if (merge) continue;
    pw.breakpoints.push_back(lo);
    pw.point_values.push_back(at_lo);
    pw.pieces.push_back(piece);
  }
  pw.breakpoints.push_back(candidates.back());
  pw.point_values.push_back(objective_value(inst, candidates.back(), objective));
  return pw;
}

namespace {

struct Element {
  bool arc = false;
  std::size_t piece = 0;
  Rational x, y;  // for points
};

struct Probe {
  HighPrecision value, x;
  std::size_t element;
};

class Envelope {
 public:
  explicit Envelope(const PiecewiseQuadratic1D& pw) : pw_(pw) {
    for (std::size_t j = 0; j < pw.pieces.size(); ++j) {
      const auto& q = pw.pieces[j];
      add_point(pw.breakpoints[j], q(pw.breakpoints[j]));
      add_point(pw.breakpoints[j + 1], q(pw.breakpoints[j + 1]));
      add_point(pw.breakpoints[j], pw.point_values[j]);
      if (q.a < 0) elements_.push_back({true, j, Rational(0), Rational(0)});
    }
    add_point(pw.breakpoints.back(), pw.point_values.back());
  }

  const std::vector<Element>& elements() const { return elements_; }

  // Best value of y - w x for one element; nullopt when an arc peaks outside its piece.
  std::optional<Probe> probe(std::size_t e, const HighPrecision& w) const {
    const Element& el = elements_[e];
    if (!el.arc) {
      HighPrecision x = to_high_precision(el.x);
      return Probe{to_high_precision(el.y) - w * x, x, e};
    }
    const Quadratic& q = pw_.pieces[el.piece];
    HighPrecision x = (w - to_high_precision(q.b)) / (2 * to_high_precision(q.a));
    if (x <= to_high_precision(pw_.breakpoints[el.piece]) || x >= to_high_precision(pw_.breakpoints[el.piece + 1]))
      return std::nullopt;
    return Probe{q(x) - w * x, x, e};
  }

  std::vector<Probe> all(const HighPrecision& w) const {
    std::vector<Probe> out;
    for (std::size_t e = 0; e < elements_.size(); ++e)
      if (auto p = probe(e, w)) out.push_back(*p);
    return out;
  }

 private:
  void add_point(const Rational& x, const Rational& y) {
    for (const auto& el : elements_)
      if (!el.arc && el.x == x && el.y == y) return;
    elements_.push_back({false, 0, x, y});
  }

  const PiecewiseQuadratic1D& pw_;
  std::vector<Element> elements_;
};

HighPrecision closest(const std::vector<HighPrecision>& roots, const HighPrecision& target) {
  HighPrecision best = roots.front();
  for (const auto& r : roots)
    if (abs(r - target) < abs(best - target)) best = r;
  return best;
}

std::vector<HighPrecision> quadratic_roots(const HighPrecision& a, const HighPrecision& b, const HighPrecision& c) {
  if (a == 0) return {-c / b};
  HighPrecision disc = b * b - 4 * a * c;
  if (disc < 0) disc = 0;
  const HighPrecision r = sqrt(disc);
  return {(-b - r) / (2 * a), (-b + r) / (2 * a)};
}

}  // namespace

EnvelopeSolution concave_envelope_1d(const PiecewiseQuadratic1D& pw, const Rational& lambda) {
  if (lambda < pw.breakpoints.front() || lambda > pw.breakpoints.back())
    throw InputError("lambda outside the function domain");
  Envelope env(pw);
  const auto& elements = env.elements();
  EnvelopeSolution sol;

  // Slope bracket from derivative magnitudes and point spreads.
  HighPrecision bound = 1, ymax = 0, min_gap = 1;
  for (std::size_t j = 0; j < pw.pieces.size(); ++j) {
    const auto& q = pw.pieces[j];
    for (const auto& x : {pw.breakpoints[j], pw.breakpoints[j + 1]})
      bound = std::max<HighPrecision>(bound, abs(to_high_precision(2 * q.a * x + q.b)));
    min_gap = std::min<HighPrecision>(min_gap, to_high_precision(pw.breakpoints[j + 1] - pw.breakpoints[j]));
  }
  for (const auto& el : elements)
    if (!el.arc) ymax = std::max<HighPrecision>(ymax, abs(to_high_precision(el.y)));
  bound += 2 * ymax / min_gap + 1;

  const HighPrecision lam = to_high_precision(lambda);
  HighPrecision lo = -bound, hi = bound;
  for (int it = 0; it < 400 && hi - lo > HighPrecision("1e-45") * bound; ++it) {
    const HighPrecision w = (lo + hi) / 2;
    const auto probes = env.all(w);
    const auto best = std::max_element(probes.begin(), probes.end(),
                                       [](const Probe& a, const Probe& b) { return a.value < b.value; });
    if (best->x > lam)
      lo = w;
    else
      hi = w;
  }
  const HighPrecision w = (lo + hi) / 2;
  auto probes = env.all(w);
  HighPrecision top = probes.front().value;
  for (const auto& p : probes) top = std::max(top, p.value);
  const HighPrecision tol = HighPrecision("1e-30") * (1 + abs(top));
  std::optional<Probe> left, right;
  for (const auto& p : probes) {
    if (p.value < top - tol) continue;
    if (p.x <= lam + tol && (!left || p.x > left->x)) left = p;
    if (p.x >= lam - tol && (!right || p.x < right->x)) right = p;
  }
  if (!left) left = right;
  if (!right) right = left;

  const Element& le = elements[left->element];
  const Element& re = elements[right->element];
  HighPrecision slope = w;
  if (abs(left->x - right->x) <= tol || left->element == right->element) {
    // Envelope touches the function at lambda.
    const Element& el = abs(left->x - lam) <= abs(right->x - lam) ? le : re;
    sol.left = sol.right = lam;
    if (!el.arc) {
      sol.exact_left = sol.exact_right = el.x;
      sol.value = to_high_precision(el.y);
    } else {
      sol.exact_left = sol.exact_right = lambda;
      sol.value = pw.pieces[el.piece](lam);
      const auto& q = pw.pieces[el.piece];
      slope = 2 * to_high_precision(q.a) * lam + to_high_precision(q.b);
    }
  } else if (!le.arc && !re.arc) {
    sol.exact_left = le.x;
    sol.exact_right = re.x;
    sol.left = to_high_precision(le.x);
    sol.right = to_high_precision(re.x);
    slope = to_high_precision((re.y - le.y) / (re.x - le.x));
  } else if (le.arc != re.arc) {
    const Element& pt = le.arc ? re : le;
    const Element& arc = le.arc ? le : re;
    const Quadratic& q = pw.pieces[arc.piece];
    const HighPrecision xp = to_high_precision(pt.x), yp = to_high_precision(pt.y);
    const HighPrecision a = to_high_precision(q.a), b = to_high_precision(q.b), c = to_high_precision(q.c);
    const HighPrecision root = sqrt(std::max<HighPrecision>(0, xp * xp + (b * xp + c - yp) / a));
    const HighPrecision numeric = le.arc ? left->x : right->x;
    const HighPrecision t = closest({xp - root, xp + root}, numeric);
    slope = 2 * a * t + b;
    if (le.arc) {
      sol.left = t;
      sol.right = xp;
      sol.exact_right = pt.x;
    } else {
      sol.left = xp;
      sol.right = t;
      sol.exact_left = pt.x;
    }
  } else {
    const Quadratic &qi = pw.pieces[le.piece], &qj = pw.pieces[re.piece];
    const Rational ia = 1 / (4 * qi.a), ja = 1 / (4 * qj.a);
    const Rational c2 = ja - ia, c1 = 2 * qi.b * ia - 2 * qj.b * ja,
                   c0 = qj.b * qj.b * ja - qi.b * qi.b * ia + qi.c - qj.c;
    slope = closest(quadratic_roots(to_high_precision(c2), to_high_precision(c1), to_high_precision(c0)), w);
    sol.left = (slope - to_high_precision(qi.b)) / (2 * to_high_precision(qi.a));
    sol.right = (slope - to_high_precision(qj.b)) / (2 * to_high_precision(qj.a));
  }

  auto height = [&](const Element& el, const HighPrecision& x) {
    return el.arc ? pw.pieces[el.piece](x) : to_high_precision(el.y);
  };
  if (sol.left != sol.right) {
    const HighPrecision yl = height(le, sol.left), yr = height(re, sol.right);
    sol.weight_left = (sol.right - lam) / (sol.right - sol.left);
    sol.value = sol.weight_left * yl + (1 - sol.weight_left) * yr;
    sol.slope = (yr - yl) / (sol.right - sol.left);
    sol.intercept = yl - sol.slope * sol.left;
  } else {
    sol.weight_left = 1;
    sol.slope = slope;
    sol.intercept = sol.value - slope * lam;
  }

  sol.max_violation = 0;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const Element& el = elements[e];
    HighPrecision excess;
    if (el.arc) {
      const auto p = env.probe(e, sol.slope);
      if (!p) continue;
      excess = p->value - sol.intercept;
    } else {
      excess = to_high_precision(el.y) - sol.slope * to_high_precision(el.x) - sol.intercept;
    }
    sol.max_violation = std::max(sol.max_violation, excess);
  }
  return sol;
}

double brute_force_opt(const Instance& inst, unsigned resolution) {
  inst.validate();
  if (resolution == 0 || resolution > 2000) throw InputError("grid resolution must lie in [1, 2000]");
  const std::size_t d = inst.scenarios();
  if (d == 1) return to_double(expected_throughput(inst, Belief{Rational(1)}));
  const Rational n(resolution);
  if (d == 2) {
    // Upper hull of the sampled graph evaluated at the prior.
    std::vector<std::pair<Rational, Rational>> hull;
    for (unsigned i = 0; i <= resolution; ++i) {
      const Rational x = Rational(i) / n;
      Rational y = expected_throughput(inst, belief_at(x));
      while (hull.size() >= 2) {
        const auto& [x1, y1] = hull[hull.size() - 2];
        const auto& [x2, y2] = hull.back();
        if ((y2 - y1) * (x - x1) <= (y - y1) * (x2 - x1))
          hull.pop_back();
        else
          break;
      }
      hull.emplace_back(x, std::move(y));
    }
    const Rational& lam = inst.prior[1];
    for (std::size_t q = 0; q + 1 < hull.size(); ++q) {
      const auto& [x1, y1] = hull[q];
      const auto& [x2, y2] = hull[q + 1];
      if (lam >= x1 && lam <= x2) return to_double(y1 + (y2 - y1) * (lam - x1) / (x2 - x1));
    }
    return to_double(hull.back().second);
  }
  if (d > 3) throw UnsupportedDimension("brute force supports at most three scenarios");
  LinearProgram lp;
  lp.a.assign(d + 1, RationalVector{});
  for (unsigned a = 0; a <= resolution; ++a)
    for (unsigned b = 0; a + b <= resolution; ++b) {
      const Belief mu{Rational(a) / n, Rational(b) / n, Rational(resolution - a - b) / n};
      for (std::size_t s = 0; s < d; ++s) lp.a[s].push_back(mu[s]);
      lp.a[d].push_back(Rational(1));
      lp.c.push_back(expected_throughput(inst, mu));
    }
  lp.b = inst.prior;
  lp.b.push_back(Rational(1));
  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw std::logic_error("grid LP not optimal");
  return to_double(sol.objective);
}

}  // namespace vqsignal
