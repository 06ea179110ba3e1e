#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "twobc/twobc.hpp"

namespace {

using namespace twobc;

void BM_HistoryDistribution(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  Rng rng(1);
  std::vector<HistorySlot> slots;
  for (std::size_t j = 0; j < k; ++j) slots.push_back(HistorySlot::from_basis(j, random_unitary(dim, rng)));
  std::vector<UnitaryOperator> intervals;
  for (std::size_t j = 0; j + 1 < k; ++j) intervals.push_back(random_unitary(dim, rng));
  const auto rho_p = DensityOperator::pure(random_state(dim, rng));
  const auto rho_m = DensityOperator::pure(random_state(dim, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(history_distribution(rho_p, slots, intervals, rho_m));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(std::pow(dim, k)));
}
BENCHMARK(BM_HistoryDistribution)->Args({2, 3})->Args({3, 4})->Args({4, 4})->Args({4, 6});

void BM_MziDistribution(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mzi_distribution(1.0471975511965976, 0.7853981633974483));
}
BENCHMARK(BM_MziDistribution);

void BM_BornRecovery(benchmark::State& state) {
  const std::vector<Complex> mu{std::sqrt(0.3), std::sqrt(0.7)};
  const auto runs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(born_recovery_experiment(mu, runs, 42));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BornRecovery)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SpectralDecompose(benchmark::State& state) {
  Rng rng(3);
  const auto rho = random_density(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decompose(rho));
}
BENCHMARK(BM_SpectralDecompose)->RangeMultiplier(2)->Range(2, 64);

void BM_PartialTrace(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const SubsystemLayout layout({d, d, d});
  Rng rng(4);
  const ComplexOperator rho(random_density(layout.total(), rng).matrix());
  const std::vector<std::size_t> keep{0, 2};
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, layout, keep));
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(3)->Arg(4);

void BM_ClassifySubsystems(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SubsystemLayout layout(std::vector<std::size_t>(n, 2));
  const auto bs = beam_splitter(0.7853981633974483);
  FactoredSchedule schedule(4);
  for (auto& interval : schedule) {
    for (std::size_t s = 0; s < n; ++s) interval.ops.push_back({{s}, bs});
  }
  std::vector<UnitaryOperator> bases(n, UnitaryOperator::identity(2));
  for (auto _ : state) benchmark::DoNotOptimize(classify_subsystems(schedule, layout, bases, 2));
}
BENCHMARK(BM_ClassifySubsystems)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
