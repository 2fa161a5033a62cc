// Kernel timings on one 224x224 synthetic pair at the default settings.
// The neighborhood contrast runs both the serial reference and the
// parallel kernel; set OMP_NUM_THREADS to vary the latter.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "smo/contrast.hpp"
#include "smo/features.hpp"
#include "smo/pipeline.hpp"
#include "smo/reference.hpp"
#include "smo/slic.hpp"
#include "smo/synth.hpp"

namespace {

using namespace smo;

struct Scene {
  PipelineConfig config;
  ImagePair pair;
  SuperpixelLabeling lb, la;
  SuperpixelFeatureSet fb, fa;
};

const Scene& scene() {
  static const Scene s = [] {
    Scene s;
    s.pair = generate_synthetic_pair(1, SynthSpec{});
    s.lb = segment_slic(s.pair.before, s.config.slic);
    s.la = segment_slic(s.pair.after, s.config.slic);
    s.fb = pool_superpixel_features(builtin_feature_field(s.pair.before, s.config.builtin_window), s.lb);
    s.fa = pool_superpixel_features(builtin_feature_field(s.pair.after, s.config.builtin_window), s.la);
    return s;
  }();
  return s;
}

void BM_Slic(benchmark::State& state) {
  const auto& s = scene();
  for (auto _ : state) benchmark::DoNotOptimize(segment_slic(s.pair.before, s.config.slic));
}

void BM_BuiltinFeatures(benchmark::State& state) {
  const auto& s = scene();
  for (auto _ : state) benchmark::DoNotOptimize(builtin_feature_field(s.pair.before, s.config.builtin_window));
}

void BM_NeighborhoodReference(benchmark::State& state) {
  const auto& s = scene();
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::neighborhood_contrast(s.fb, s.fa, s.lb, s.la, solve_lap));
}

void BM_NeighborhoodParallel(benchmark::State& state) {
  const auto& s = scene();
  for (auto _ : state)
    benchmark::DoNotOptimize(neighborhood_contrast(s.fb, s.fa, s.lb.adjacency, s.la.adjacency, s.lb.boundary));
}

void BM_RunPair(benchmark::State& state) {
  const auto& s = scene();
  for (auto _ : state) benchmark::DoNotOptimize(run_pair(s.config, s.pair));
}

void BM_AlphaSweep(benchmark::State& state) {
  const auto dir = std::filesystem::temp_directory_path() / "smo_bench_sweep";
  std::filesystem::remove_all(dir);
  const PipelineConfig config;
  const auto records = write_synthetic_dataset(dir, static_cast<int>(state.range(0)), 1, SynthSpec{});
  const auto cache = build_dataset_cache(config, records, {});
  for (auto _ : state) benchmark::DoNotOptimize(sweep_alpha(config, cache, default_alpha_grid()));
  std::filesystem::remove_all(dir);
}

BENCHMARK(BM_Slic)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuiltinFeatures)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NeighborhoodReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NeighborhoodParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RunPair)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AlphaSweep)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
