#include <benchmark/benchmark.h>

#include "medent/action.hpp"
#include "medent/entanglement.hpp"
#include "medent/lorentz.hpp"
#include "medent/retardation.hpp"
#include "medent/scenarios.hpp"

using namespace medent;

namespace {

BMVParams natural_params() {
  BMVParams p;
  p.A = 1.0;
  p.d = 1.0;
  p.delta_x = 0.3;
  p.T = 2.0;
  p.t_hold = 0.5;
  p.ramp_fraction = 0.25;
  return p;
}

void BM_RetardedTime(benchmark::State& state) {
  const Worldline w({Segment::hermite(-20, 0, {0, 0, 0}, {0.1, 0, 0}, {1, 0.5, 0}, {0, 0.2, 0}),
                     Segment::hermite(0, 20, {1, 0.5, 0}, {0, 0.2, 0}, {2, 0, 0}, {0, 0, 0})},
                    1.0);
  double t = 5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(retarded_time(w, {10, 0, 0}, t, 1.0, 1e-12));
    t += 1e-6;
  }
}
BENCHMARK(BM_RetardedTime);

void BM_IntegrandExact(benchmark::State& state) {
  const auto s = build_bmv(natural_params(), PhysicalConstants::natural());
  const auto sigma = SpinConfiguration::from_label("ud");
  double t = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrand_exact(s, sigma, 0, 1, t));
    t += 1e-7;
  }
}
BENCHMARK(BM_IntegrandExact);

void BM_PhaseTable(benchmark::State& state) {
  const auto model = static_cast<ActionModel>(state.range(0));
  const auto s = build_bmv(natural_params(), PhysicalConstants::natural());
  ActionSettings set;
  set.tol = 1e-10;
  set.parallel = false;
  for (auto _ : state) benchmark::DoNotOptimize(phase_table(s, model, set));
  state.SetLabel(to_string(model));
}
BENCHMARK(BM_PhaseTable)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_BoostedPhase(benchmark::State& state) {
  const auto s = build_bmv(natural_params(), PhysicalConstants::natural());
  const LorentzBoost boost({0.2, 0, 0}, 1.0);
  ActionSettings set;
  set.tol = 1e-10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(boosted_phase(s, SpinConfiguration::from_label("ud"), boost, ActionModel::exact, set));
  }
}
BENCHMARK(BM_BoostedPhase)->Unit(benchmark::kMillisecond);

void BM_Negativity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  PhaseTable t;
  t.particles = n;
  for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) t.entries.push_back({0.37 * double(i * i), 0.0});
  const auto psi = evolve(SpinState::uniform(n), t);
  for (auto _ : state) benchmark::DoNotOptimize(negativity(psi));
}
BENCHMARK(BM_Negativity)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
