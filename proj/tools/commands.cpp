#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "vqsignal/dualptas.hpp"
#include "vqsignal/equilibrium.hpp"
#include "vqsignal/error.hpp"
#include "vqsignal/io.hpp"
#include "vqsignal/objectives.hpp"

namespace vqsignal::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string both(const Rational& x) { return to_string(x) + " (" + to_decimal(x) + ")"; }

std::string join(const RationalVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

Belief random_simplex_point(std::size_t d, const std::vector<bool>& support, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> weight(0, 20);
  for (;;) {
    RationalVector raw(d, Rational(0));
    Rational total(0);
    for (std::size_t s = 0; s < d; ++s)
      if (support[s]) {
        raw[s] = weight(rng);
        total += raw[s];
      }
    if (total == 0) continue;
    for (auto& x : raw) x /= total;
    return raw;
  }
}

void print_profile(const EquilibriumProfile& p, std::ostream& out) {
  out << "order:";
  for (auto i : p.order) out << ' ' << i + 1;
  out << "\nbreakpoints:";
  for (auto i : p.order) out << ' ' << to_string(p.breakpoint(i));
  out << "\nk: " << p.k << '\n';
}

int cmd_evaluate(const std::string& path, const std::string& belief_text, const std::string& objective,
                 std::ostream& out) {
  const Instance inst = load_instance(path);
  const Belief mu = parse_belief(belief_text);
  validate_belief(inst, mu);
  print_profile(solve_for_belief(inst, mu), out);
  if (objective == "throughput") {
    const auto b = throughput_breakdown(inst, mu);
    for (std::size_t s = 0; s < inst.scenarios(); ++s)
      out << "scenario " << s + 1 << ": " << both(b.scenarios[s].value) << " contributing "
          << b.scenarios[s].contributing << '\n';
    out << "throughput: " << both(b.expected) << '\n';
  } else {
    const auto b = makespan_breakdown(inst, mu);
    for (std::size_t s = 0; s < inst.scenarios(); ++s) out << "scenario " << s + 1 << ": " << both(b.scenarios[s]) << '\n';
    out << "makespan: " << both(b.expected) << '\n';
  }
  return kOk;
}

int cmd_fptas(const std::string& path, const std::string& eps, const std::string& out_path, bool verify,
              std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(path);
  const auto result = solve_fptas(inst, parse_rational(eps));
  const std::string doc = format_scheme(inst, result.scheme);
  if (out_path.empty()) {
    out << doc;
  } else {
    std::ofstream f(out_path);
    if (!f) throw InputError("cannot write '" + out_path + "'");
    f << doc;
  }
  out << "kappa: " << result.kappa << "\nnet size: " << result.net_size << "\nsignals: " << result.scheme.signals.size()
      << "\nlp value: " << both(result.lp_value) << "\nALG: " << both(result.alg) << '\n';
  if (result.trivial) out << "OPT is zero; returning the prior as the only signal\n";
  if (verify) {
    const auto reread = parse_scheme(out_path.empty() ? doc : read_file(out_path));
    if (auto why = scheme_violation(inst, reread)) {
      err << "scheme verification failed: " << *why << '\n';
      return kPropertyViolation;
    }
    out << "verified: weights sum to 1 and reproduce the prior exactly\n";
  }
  return kOk;
}

int cmd_dual(const std::string& path, double eps, std::ostream& out) {
  const Instance inst = load_instance(path);
  const auto r = solve_additive_ptas(inst, eps);
  out << std::setprecision(12) << "p: " << r.p << "\nbest feasible objective: " << r.best_upper
      << "\nlower bound: " << r.lower_bound << "\niterations: " << r.iterations << " of " << r.iteration_cap
      << "\noracle calls: " << r.oracle_calls << "\nconverged: " << (r.converged ? "yes" : "no") << '\n';
  if (!r.converged) out << "bracket not certified within the iteration budget\n";
  return kOk;
}

int cmd_makespan_check(const std::string& path, std::size_t trials, std::uint64_t seed, std::ostream& out,
                       std::ostream& err) {
  const Instance inst = load_instance(path);
  if (trials == 0) throw InputError("trials must be at least 1");
  const auto r = makespan_check(inst, trials, seed);
  out << "full information: " << both(r.full_information) << "\nbest sampled: " << both(r.best_sampled)
      << "\ntrials: " << r.trials << "\ncounterexamples: " << r.counterexamples << '\n';
  if (r.counterexamples > 0) {
    err << "found schemes with lower expected makespan than full information\n";
    return kPropertyViolation;
  }
  return kOk;
}

int cmd_verify(const std::string& instance_path, const std::string& scheme_path, std::ostream& out,
               std::ostream& err) {
  const Instance inst = load_instance(instance_path);
  const SignalingScheme scheme = parse_scheme(read_file(scheme_path));
  if (auto why = scheme_violation(inst, scheme)) {
    err << "invalid scheme: " << *why << '\n';
    return kPropertyViolation;
  }
  out << "valid scheme with " << scheme.signals.size() << " signals\nthroughput: "
      << both(scheme_throughput(inst, scheme)) << '\n';
  return kOk;
}

}  // namespace

Instance load_instance(const std::string& path) {
  try {
    return parse_instance(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

SignalingScheme random_scheme(const Instance& inst, std::mt19937_64& rng) {
  const std::size_t d = inst.scenarios();
  std::vector<bool> support(d);
  for (std::size_t s = 0; s < d; ++s) support[s] = inst.prior[s] > 0;
  std::uniform_int_distribution<std::size_t> count(1, d + 2);
  std::uniform_int_distribution<int> weight(1, 20);
  const std::size_t r = count(rng);
  std::vector<Belief> rho;
  RationalVector beta;
  Rational total(0);
  for (std::size_t j = 0; j < r; ++j) {
    rho.push_back(random_simplex_point(d, support, rng));
    beta.push_back(Rational(weight(rng)));
    total += beta.back();
  }
  Belief centre(d, Rational(0));
  for (std::size_t j = 0; j < r; ++j) {
    beta[j] /= total;
    for (std::size_t s = 0; s < d; ++s) centre[s] += beta[j] * rho[j][s];
  }
  // Largest step keeping every prior + t (rho_j - centre) in the simplex.
  std::optional<Rational> t_max;
  for (const auto& p : rho)
    for (std::size_t s = 0; s < d; ++s) {
      const Rational dir = p[s] - centre[s];
      if (dir >= 0) continue;
      Rational t = inst.prior[s] / -dir;
      if (!t_max || t < *t_max) t_max = t;
    }
  const Rational t = t_max ? Rational(*t_max * weight(rng) / 20) : Rational(0);
  SignalingScheme scheme;
  for (std::size_t j = 0; j < r; ++j) {
    Belief mu(d);
    for (std::size_t s = 0; s < d; ++s) mu[s] = inst.prior[s] + t * (rho[j][s] - centre[s]);
    scheme.signals.push_back({beta[j], std::move(mu)});
  }
  return scheme;
}

MakespanCheckReport makespan_check(const Instance& inst, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MakespanCheckReport report;
  report.full_information = scheme_makespan(inst, full_information(inst));
  report.trials = trials;
  for (std::size_t n = 0; n < trials; ++n) {
    const auto scheme = random_scheme(inst, rng);
    if (auto why = scheme_violation(inst, scheme)) throw std::logic_error("random scheme invalid: " + *why);
    const Rational value = scheme_makespan(inst, scheme);
    if (n == 0 || value < report.best_sampled) report.best_sampled = value;
    if (value < report.full_information) ++report.counterexamples;
  }
  return report;
}

void write_sweep(const Instance& inst, Objective objective, unsigned samples, Emit emit, std::ostream& out) {
  if (inst.scenarios() != 2) throw InputError("sweeps need exactly two scenarios");
  if (samples == 0) throw InputError("samples must be at least 1");
  const auto pw = extract_piecewise_1d(inst, objective);
  RationalVector xs;
  for (unsigned i = 0; i <= samples; ++i) xs.push_back(Rational(i) / Rational(samples));
  const auto interior = pw.interior_breakpoints();
  xs.insert(xs.end(), interior.begin(), interior.end());
  std::sort(xs.begin(), xs.end(), [](const Rational& a, const Rational& b) { return a > b; });
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const auto is_breakpoint = [&](const Rational& x) {
    return std::find(interior.begin(), interior.end(), x) != interior.end();
  };
  const std::string name = objective == Objective::Throughput ? "throughput" : "makespan";

  struct Row {
    Belief mu;
    Rational value;
    RationalVector scenarios;
  };
  std::vector<Row> rows;
  for (const auto& x : xs) {
    Row row{Belief{Rational(1 - x), x}, Rational(0), {}};
    if (objective == Objective::Throughput) {
      const auto b = throughput_breakdown(inst, row.mu);
      row.value = b.expected;
      for (const auto& s : b.scenarios) row.scenarios.push_back(s.value);
    } else {
      const auto b = makespan_breakdown(inst, row.mu);
      row.value = b.expected;
      row.scenarios = b.scenarios;
    }
    rows.push_back(std::move(row));
  }

  if (emit == Emit::Csv) {
    out << "# instance-hash: " << instance_hash(inst) << "\n# objective: " << name << "\n# samples: " << samples
        << "\n# breakpoints: " << join(interior) << "\n# discontinuities: " << join(pw.discontinuities()) << '\n';
    out << "mu_1,mu_2,value,value_decimal,scenario_1,scenario_2,breakpoint\n";
    for (const auto& r : rows)
      out << to_string(r.mu[0]) << ',' << to_string(r.mu[1]) << ',' << to_string(r.value) << ','
          << to_decimal(r.value) << ',' << to_string(r.scenarios[0]) << ',' << to_string(r.scenarios[1]) << ','
          << (is_breakpoint(r.mu[1]) ? 1 : 0) << '\n';
    return;
  }

  const double width = 640, height = 400, margin = 40;
  double lo = to_double(rows.front().value), hi = lo;
  for (const auto& r : rows) {
    lo = std::min(lo, to_double(r.value));
    hi = std::max(hi, to_double(r.value));
  }
  if (hi == lo) hi = lo + 1;
  auto px = [&](const Rational& x) { return margin + to_double(x) * (width - 2 * margin); };
  auto py = [&](const Rational& y) { return height - margin - (to_double(y) - lo) / (hi - lo) * (height - 2 * margin); };
  out << std::setprecision(12) << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n<!-- instance-hash: " << instance_hash(inst) << " objective: " << name
      << " samples: " << samples << " -->\n<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) out << px(it->mu[1]) << ',' << py(it->value) << ' ';
  out << "\"/>\n";
  for (const auto& r : rows)
    if (is_breakpoint(r.mu[1]))
      out << "<circle cx=\"" << px(r.mu[1]) << "\" cy=\"" << py(r.value) << "\" r=\"3\" fill=\"red\"/>\n";
  out << "</svg>\n";
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Public signaling for parallel-link fluid queues"};
  app.require_subcommand(1);

  std::string instance, belief, objective = "throughput", eps = "1/10", out_path, scheme_path, emit = "csv";
  unsigned samples = 100;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  bool verify = false;

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate an objective at a belief");
  evaluate->add_option("instance", instance)->required();
  evaluate->add_option("--belief", belief, "Comma-separated rationals")->required();
  evaluate->add_option("--objective", objective)->check(CLI::IsMember({"throughput", "makespan"}));

  auto* sweep = app.add_subcommand("sweep", "Sample an objective over the belief segment");
  sweep->add_option("instance", instance)->required();
  sweep->add_option("--objective", objective)->check(CLI::IsMember({"throughput", "makespan"}));
  sweep->add_option("--samples", samples);
  sweep->add_option("--emit", emit)->check(CLI::IsMember({"csv", "svg"}));
  sweep->add_option("--out", out_path);

  auto* fptas = app.add_subcommand("fptas", "Multiplicative approximation of the optimal scheme");
  fptas->add_option("instance", instance)->required();
  fptas->add_option("--eps", eps, "Rational accuracy in (0,1)");
  fptas->add_option("--out", out_path, "Scheme output file");
  fptas->add_flag("--verify", verify, "Re-read and check the emitted scheme");

  auto* dual = app.add_subcommand("dual", "Additive approximation of the optimal value");
  dual->add_option("instance", instance)->required();
  dual->add_option("--eps", eps);

  auto* mcheck = app.add_subcommand("makespan-check", "Compare random schemes with full information");
  mcheck->add_option("instance", instance)->required();
  mcheck->add_option("--samples", trials, "Number of random schemes");
  mcheck->add_option("--seed", seed);

  auto* verify_cmd = app.add_subcommand("verify-scheme", "Check a scheme against an instance");
  verify_cmd->add_option("instance", instance)->required();
  verify_cmd->add_option("scheme", scheme_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const Objective obj = objective == "makespan" ? Objective::Makespan : Objective::Throughput;
    if (*evaluate) return cmd_evaluate(instance, belief, objective, out);
    if (*sweep) {
      const Instance inst = load_instance(instance);
      const Emit e = emit == "svg" ? Emit::Svg : Emit::Csv;
      if (out_path.empty()) {
        write_sweep(inst, obj, samples, e, out);
      } else {
        std::ofstream f(out_path);
        if (!f) throw InputError("cannot write '" + out_path + "'");
        write_sweep(inst, obj, samples, e, f);
      }
      return kOk;
    }
    if (*fptas) return cmd_fptas(instance, eps, out_path, verify, out, err);
    if (*dual) {
      const double e = to_double(parse_rational(eps));
      return cmd_dual(instance, e, out);
    }
    if (*mcheck) return cmd_makespan_check(instance, trials, seed, out, err);
    if (*verify_cmd) return cmd_verify(instance, scheme_path, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const UnsupportedDimension& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace vqsignal::cli
