#include <benchmark/benchmark.h>

#include "sdr/rearrange.hpp"
#include "sdr/specfun.hpp"
#include "sdr/transform.hpp"
#include "sdr/trials.hpp"
#include "sdr/verify.hpp"

using namespace sdr;

namespace {

GridFunction trial(int d, std::size_t n) {
  TrialFamily fam = default_family(Generator::random_step, d, 1, 1);
  fam.n = n;
  return make_trial(fam, 0);
}

GridFunction smooth(int d, std::size_t n) {
  TrialFamily fam = default_family(Generator::gaussian_mix, d, 1, 1);
  fam.n = n;
  return make_trial(fam, 0);
}

}  // namespace

static void BM_Rearrange1D(benchmark::State& state) {
  const GridFunction f = trial(1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_rearrange(f));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rearrange1D)->RangeMultiplier(4)->Range(256, 65536);

static void BM_Rearrange2D(benchmark::State& state) {
  const GridFunction f = trial(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_rearrange(f));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Rearrange2D)->RangeMultiplier(2)->Range(32, 256);

static void BM_ForwardTransform2D(benchmark::State& state) {
  const GridFunction f = trial(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(forward_transform(f));
}
BENCHMARK(BM_ForwardTransform2D)->RangeMultiplier(2)->Range(32, 256);

static void BM_BesselJ(benchmark::State& state) {
  const double order = static_cast<double>(state.range(0)) / 2.0;
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j(order, x));
    x = x < 49.0 ? x + 0.731 : 0.37;
  }
}
BENCHMARK(BM_BesselJ)->DenseRange(0, 5);

static void BM_WaveAreas(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(wave_areas(1.5, 20));
}
BENCHMARK(BM_WaveAreas)->Unit(benchmark::kMillisecond);

static void BM_Montgomery(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const GridFunction f = trial(d, d == 1 ? 256 : 64);
  const Grid lattice = frequency_lattice(f.grid);
  const GridFunction sigma = make_box_union(lattice, 0.25 / f.grid.h, 1, 0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(verify_montgomery(f, sigma));
}
BENCHMARK(BM_Montgomery)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

static void BM_Lieb(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const GridFunction f = smooth(d, d == 1 ? 256 : 64);
  for (auto _ : state) benchmark::DoNotOptimize(verify_lieb(f, 1.0));
}
BENCHMARK(BM_Lieb)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

static void BM_SchrodingerEvolve(benchmark::State& state) {
  const GridFunction f = smooth(1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(schrodinger_evolve(f, 2.0));
}
BENCHMARK(BM_SchrodingerEvolve)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK_MAIN();
