#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "vqsignal/instance.hpp"

namespace vqsignal::testing {

inline std::string fixture_path(const std::string& name) { return std::string(VQSIGNAL_DATA_DIR) + "/" + name; }

inline Instance load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

// Two-integer construction does not reduce, so every computed fraction goes through here.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Rational p/den with p uniform in [lo, hi].
inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> pick(lo, hi);
  return frac(pick(rng), den);
}

// Point of the simplex with every entry a multiple of 1/den.
inline Belief random_belief(std::mt19937_64& rng, std::size_t d, long den = 20, bool interior = false) {
  std::uniform_int_distribution<long> pick(interior ? 1 : 0, den);
  for (;;) {
    std::vector<long> raw(d);
    long total = 0;
    for (auto& x : raw) total += x = pick(rng);
    if (total == 0) continue;
    Belief mu(d);
    for (std::size_t s = 0; s < d; ++s) mu[s] = frac(raw[s], total);
    return mu;
  }
}

struct InstanceShape {
  std::size_t links = 3;
  std::size_t scenarios = 2;
  long tt_max = 10;       // travel times are multiples of 1/2 up to tt_max / 2
  long horizon_max = 12;  // horizon is a multiple of 1/2 up to horizon_max / 2
};

// Small random instance with unit inflow; capacities are multiples of 1/6.
inline Instance random_instance(std::mt19937_64& rng, const InstanceShape& shape) {
  Instance inst;
  inst.inflow = 1;
  for (std::size_t i = 0; i < shape.links; ++i) {
    inst.capacities.push_back(random_rational(rng, 1, 6, 6));
    RationalVector column;
    for (std::size_t s = 0; s < shape.scenarios; ++s) column.push_back(random_rational(rng, 0, shape.tt_max, 2));
    inst.travel_times.push_back(column);
  }
  inst.horizon = random_rational(rng, 1, shape.horizon_max, 2);
  inst.prior = random_belief(rng, shape.scenarios, 20, true);
  inst.validate();
  return inst;
}

inline Belief line_belief(const Rational& x) { return Belief{Rational(1 - x), x}; }

}  // namespace vqsignal::testing
