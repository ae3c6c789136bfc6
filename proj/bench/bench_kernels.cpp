#include <benchmark/benchmark.h>

#include "icregion/channel.hpp"
#include "icregion/fm.hpp"
#include "icregion/kernels.hpp"

using namespace icr;

namespace {

SweepConfig sweep_config(std::size_t n) {
  SweepConfig cfg;
  cfg.family = Family::HOD;
  cfg.samples = n;
  cfg.seed = 5;
  cfg.channel = builtin_channel("xor-interference");
  return cfg;
}

std::vector<CodingSpec> spec_list(std::size_t n) {
  const auto cfg = sweep_config(n);
  std::vector<CodingSpec> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_spec(cfg, i));
  return out;
}

struct GridCase {
  std::vector<IntRow> split, projected;
};

GridCase grid_case() {
  const std::map<std::string, std::int64_t> v = {
      {"a1", 6},  {"b1", 4},  {"c1", 3},  {"d1", 10}, {"e1", 9},  {"f1", 7},  {"g1", 13},
      {"a2", 5},  {"b2", 5},  {"c2", 2},  {"d2", 10}, {"e2", 7},  {"f2", 7},  {"g2", 12}};
  const auto quad = named_system("HK-quad");
  const auto proj = project(quad, split_variables(), rate_split(),
                            {structural_relations(Family::HK), Pruning::Full});
  return {integer_rows(quad, split_variables(), v), integer_rows(proj.system, {"R1", "R2"}, v)};
}

template <auto Fn>
void BM_sample_polygons(benchmark::State& state) {
  const auto cfg = sweep_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void BM_spec_reports(benchmark::State& state) {
  const auto specs = spec_list(static_cast<std::size_t>(state.range(0)));
  const auto ch = builtin_channel("xor-interference");
  for (auto _ : state) benchmark::DoNotOptimize(Fn(specs, ch, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void BM_grid_compare(benchmark::State& state) {
  const auto g = grid_case();
  for (auto _ : state) benchmark::DoNotOptimize(Fn(g.split, g.projected, state.range(0)));
}

}  // namespace

BENCHMARK(BM_sample_polygons<par::sample_polygons>)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_polygons<ref::sample_polygons>)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_spec_reports<par::spec_reports>)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_spec_reports<ref::spec_reports>)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_compare<par::grid_compare>)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_compare<ref::grid_compare>)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
