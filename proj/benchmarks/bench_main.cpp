#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "vqsignal/dualptas.hpp"
#include "vqsignal/fptas.hpp"
#include "vqsignal/objectives.hpp"
#include "vqsignal/oracle.hpp"

namespace {

using namespace vqsignal;

Instance fixture(const char* name) {
  std::ifstream in(std::string(VQSIGNAL_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void BM_ExpectedThroughput(benchmark::State& state) {
  const Instance inst = fixture("a3.json");
  const Belief mu{Rational(7, 10), Rational(3, 10)};
  for (auto _ : state) benchmark::DoNotOptimize(expected_throughput(inst, mu));
}
BENCHMARK(BM_ExpectedThroughput);

void BM_ExtractPiecewise(benchmark::State& state) {
  const Instance inst = fixture("a3.json");
  for (auto _ : state) benchmark::DoNotOptimize(extract_piecewise_1d(inst));
}
BENCHMARK(BM_ExtractPiecewise)->Unit(benchmark::kMillisecond);

void BM_ConcaveEnvelope(benchmark::State& state) {
  const Instance inst = fixture("a3.json");
  const auto pw = extract_piecewise_1d(inst);
  for (auto _ : state) benchmark::DoNotOptimize(concave_envelope_1d(pw, inst.prior[1]));
}
BENCHMARK(BM_ConcaveEnvelope)->Unit(benchmark::kMillisecond);

// Runtime against net size: the argument is 1/eps.
void BM_FptasNetSize(benchmark::State& state) {
  const Instance inst = fixture("a3.json");
  const Rational eps(1, state.range(0));
  std::size_t net = 0;
  for (auto _ : state) {
    const auto r = solve_fptas(inst, eps);
    net = r.net_size;
    benchmark::DoNotOptimize(r.alg);
  }
  state.counters["net_size"] = static_cast<double>(net);
}
BENCHMARK(BM_FptasNetSize)->Arg(5)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_SeparationOracleBuild(benchmark::State& state) {
  const Instance inst = fixture("a3.json");
  for (auto _ : state) benchmark::DoNotOptimize(SeparationOracle(inst).patch_count());
}
BENCHMARK(BM_SeparationOracleBuild)->Unit(benchmark::kMillisecond);

void BM_Separate(benchmark::State& state) {
  const Instance inst = fixture("a3.json");
  const SeparationOracle oracle(inst);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coord(3, 6);
  for (auto _ : state) {
    const DualPoint w{coord(rng), coord(rng)};
    benchmark::DoNotOptimize(oracle.separate(w).supremum);
  }
}
BENCHMARK(BM_Separate)->Unit(benchmark::kMicrosecond);

void BM_AdditivePtas(benchmark::State& state) {
  const Instance inst = fixture("a1.json");
  for (auto _ : state) benchmark::DoNotOptimize(solve_additive_ptas(inst, 0.05).p);
}
BENCHMARK(BM_AdditivePtas)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
