#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "dvflow/constitutive.hpp"
#include "dvflow/diagnostics.hpp"
#include "dvflow/dynamics.hpp"
#include "dvflow/integrator.hpp"
#include "dvflow/spatial.hpp"

namespace {

using namespace dvflow;

FluidState smooth_state(const Grid& g) {
  FluidState s;
  for (double x : g.points()) {
    s.rho.push_back(1.0 + 0.3 * std::cos(2.0 * std::numbers::pi * x));
    s.u.push_back(0.2 * std::sin(2.0 * std::numbers::pi * x));
  }
  return s;
}

const ConstitutiveLaw kLaw = ConstitutiveLaw::make(1.0, 2.0, 0.05, 1.0);

Scheme scheme_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Scheme::spectral : Scheme::fd4;
}

void BM_Deriv(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), scheme_of(state));
  const FluidState s = smooth_state(g);
  for (auto _ : state) benchmark::DoNotOptimize(deriv(s.rho, g, 2));
}

void BM_Rhs(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), scheme_of(state));
  const FluidState s = smooth_state(g);
  for (auto _ : state) benchmark::DoNotOptimize(rhs(s, kLaw, g, {}, 0.0));
}

void BM_Step(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), scheme_of(state));
  const FluidState s = smooth_state(g);
  const double dt = select_dt(s, kLaw, g, StepControl{});
  for (auto _ : state) benchmark::DoNotOptimize(step(s, kLaw, g, {}, dt));
}

void BM_Record(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), scheme_of(state));
  const FluidState s = smooth_state(g);
  for (auto _ : state) benchmark::DoNotOptimize(record(s, kLaw, g, {}, 0.0));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int scheme : {0, 1}) {
    for (int n : {64, 128, 256, 512}) b->Args({n, scheme});
  }
}

}  // namespace

BENCHMARK(BM_Deriv)->Apply(sizes);
BENCHMARK(BM_Rhs)->Apply(sizes);
BENCHMARK(BM_Step)->Apply(sizes);
BENCHMARK(BM_Record)->Apply(sizes);
BENCHMARK_MAIN();
