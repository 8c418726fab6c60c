// Serial reference vs OpenMP kernels.
//   ./build/bench/bench_kernels --benchmark_filter=Matrix

#include <benchmark/benchmark.h>

#include <random>

#include "formtree/clustering.hpp"
#include "formtree/evaluation.hpp"
#include "formtree/synth.hpp"

namespace {

std::vector<formtree::BoundingBox> boxes(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> pos(0, 2000), ext(10, 120);
  std::vector<formtree::BoundingBox> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({pos(rng), pos(rng), ext(rng), ext(rng)});
  return out;
}

std::vector<formtree::EvalCase> cases(std::size_t n) {
  std::vector<formtree::EvalCase> out;
  for (std::size_t i = 0; i < n; ++i) {
    formtree::SynthSpec spec;
    spec.seed = i;
    spec.nesting_depth = 2;
    auto g = formtree::generate(spec);
    out.push_back({"c" + std::to_string(i), std::move(g.layout), std::move(g.gold), "synthetic", false});
  }
  return out;
}

void BM_DistanceMatrixSerial(benchmark::State& state) {
  const auto b = boxes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(formtree::distance_matrix_serial(b, {}));
  state.SetComplexityN(state.range(0));
}

void BM_DistanceMatrixParallel(benchmark::State& state) {
  const auto b = boxes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(formtree::distance_matrix(b, formtree::GeometryConfig{}));
  state.SetComplexityN(state.range(0));
}

void BM_EvaluateCorpusSerial(benchmark::State& state) {
  const auto c = cases(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(formtree::evaluate_corpus_serial(c));
}

void BM_EvaluateCorpusParallel(benchmark::State& state) {
  const auto c = cases(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(formtree::evaluate_corpus(c));
}

}  // namespace

BENCHMARK(BM_DistanceMatrixSerial)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_DistanceMatrixParallel)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_EvaluateCorpusSerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateCorpusParallel)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
