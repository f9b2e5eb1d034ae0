#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>

#include "vqsignal/fptas.hpp"
#include "vqsignal/instance.hpp"
#include "vqsignal/oracle.hpp"

namespace vqsignal::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kPropertyViolation = 2 };

enum class Emit { Csv, Svg };

// Random convex decomposition of the prior with exact rational entries.
SignalingScheme random_scheme(const Instance& inst, std::mt19937_64& rng);

struct MakespanCheckReport {
  Rational full_information;
  Rational best_sampled;
  std::size_t trials = 0;
  std::size_t counterexamples = 0;
};
MakespanCheckReport makespan_check(const Instance& inst, std::size_t trials, std::uint64_t seed);

void write_sweep(const Instance& inst, Objective objective, unsigned samples, Emit emit, std::ostream& out);

Instance load_instance(const std::string& path);

// Parses argv and dispatches a subcommand; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace vqsignal::cli
