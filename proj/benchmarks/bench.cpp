#include <benchmark/benchmark.h>

#include <bratteli/io.hpp>

using namespace bratteli;

namespace {

Diagram load(const std::string& name) { return load_diagram(std::string(FIXTURE_DIR) + "/" + name + ".json"); }

void BM_TelescopeUniform(benchmark::State& state) {
  const Diagram d = load("summable_offdiagonal");
  for (auto _ : state) benchmark::DoNotOptimize(telescope_uniform(d, 1, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TelescopeUniform)->Arg(2)->Arg(5);

void BM_AnalyzePerfection(benchmark::State& state) {
  const Diagram d = load("stationary_example_a");
  const Ordering w = load_ordering(d, std::string(FIXTURE_DIR) + "/stationary_example_a.ordering.json");
  for (auto _ : state) benchmark::DoNotOptimize(analyze_perfection(d, w, 10));
}
BENCHMARK(BM_AnalyzePerfection);

void BM_SynthesizeRankSix(benchmark::State& state) {
  const Diagram d = load("3_max_min_in_rank_6");
  const auto [sk, sigma] = skeleton_from_json(d, read_json_file(std::string(FIXTURE_DIR) + "/3_max_min_in_rank_6.skeleton.json"));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_order(d, sk, sigma, 10));
}
BENCHMARK(BM_SynthesizeRankSix);

void BM_EnumerateSevenVertices(benchmark::State& state) {
  const Diagram d = load("corollary_1");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_skeletons(d, 3));
}
BENCHMARK(BM_EnumerateSevenVertices)->Unit(benchmark::kMillisecond);

void BM_ExactG(benchmark::State& state) {
  const Diagram d = load("d_max_min_paths_d3");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_G_distribution(d, 1, n));
}
BENCHMARK(BM_ExactG)->DenseRange(2, 8, 2);

void BM_MonteCarloG(benchmark::State& state) {
  const Diagram d = load("looped_example");
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_G(d, 1, 6, 1, state.range(0), 3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloG)->Arg(1000)->Arg(10000);

void BM_EstimateGenericJ(benchmark::State& state) {
  const Diagram d = load("firstexample");
  for (auto _ : state) benchmark::DoNotOptimize(estimate_generic_j(d, 40, 100, 5, 1));
}
BENCHMARK(BM_EstimateGenericJ)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
