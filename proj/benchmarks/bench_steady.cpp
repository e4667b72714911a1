#include <benchmark/benchmark.h>

#include "thermoent/dynamics.hpp"
#include "thermoent/entfilter.hpp"
#include "thermoent/experiments.hpp"

using namespace thermoent;

namespace {

const BathSpec kHot{Temperature::infinite(), 1e-4};
const BathSpec kCold{Temperature::zero(), 1e-2};

void BM_QutritResetSteadyState(benchmark::State& state) {
  const Liouvillian l = reset_liouvillian(MachineSpec::qutrit(1.0, 1e-3, 1e-3, 1e-3), kHot, kCold);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(l));
}
BENCHMARK(BM_QutritResetSteadyState);

void BM_QuditResetSteadyState(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Liouvillian l = reset_liouvillian(MachineSpec::uniform_qudit(d, 1e-3), kHot, kCold);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(l));
}
BENCHMARK(BM_QuditResetSteadyState)->DenseRange(2, 5);

void BM_LindbladQutritSteadyState(benchmark::State& state) {
  const Liouvillian l = lindblad_qutrit_liouvillian({}, Temperature::finite(0.28), Temperature::finite(0.034));
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(l));
}
BENCHMARK(BM_LindbladQutritSteadyState);

void BM_FilterAndNegativity(benchmark::State& state) {
  const MachineSpec m = MachineSpec::qutrit(1.0, 1e-3, 1e-3, 1e-3);
  const SteadyState s = steady_state(reset_liouvillian(m, kHot, kCold));
  for (auto _ : state) {
    const FilterOutcome f = apply_filter(s.rho, m.shape(), FilterSpec::qutrit());
    benchmark::DoNotOptimize(negativity(f.state, f.shape));
  }
}
BENCHMARK(BM_FilterAndNegativity);

}  // namespace

BENCHMARK_MAIN();
