// Serial reference against the OpenMP observation kernel over a few families.

#include <benchmark/benchmark.h>

#include "stab/stabilab.hpp"

using namespace stab;

namespace {

const Domain Z = Domain::integers();

struct Workload {
  Family family;
  FunctorSpec functor;
  Ideal depth_ideal;
};

Workload integer_ext() {
  FpModule m = FpModule::from_decomposition(Z, 2, {Elem(8), Elem(12)});
  return {QuotientPowers{m, Ideal(Elem(6))},
          make_ext1(FpModule::from_decomposition(Z, 1, {Elem(4), Elem(6)})), Ideal(Elem(3))};
}

Workload integer_oscillating() {
  OscillatingFunctor f;
  f.sets.emplace(Elem(2), ExponentSet::even());
  f.sets.emplace(Elem(3), ExponentSet{{}, {{1, 3}}});
  return {QuotientPowers{FpModule::from_decomposition(Z, 2, {Elem(9)}), Ideal(Elem(6))}, f, Ideal(Elem(2))};
}

Workload poly_tor() {
  Domain dom = Domain::poly_mod(3);
  Elem x = dom.variable(), one = dom.one();
  FpModule m = FpModule::from_decomposition(dom, 2, {x * x + one});
  return {Layers{m, Ideal(x * (x + one))}, make_tor1(FpModule::from_decomposition(dom, 1, {x * x})), Ideal(x)};
}

Workload pick(int which) {
  switch (which) {
    case 0: return integer_ext();
    case 1: return integer_oscillating();
    default: return poly_tor();
  }
}

void BM_ObserveSerial(benchmark::State& state) {
  Workload w = pick(static_cast<int>(state.range(0)));
  unsigned horizon = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(observe_serial(w.family, w.functor, horizon, w.depth_ideal));
  state.SetItemsProcessed(state.iterations() * horizon);
}

void BM_ObserveParallel(benchmark::State& state) {
  Workload w = pick(static_cast<int>(state.range(0)));
  unsigned horizon = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(observe_parallel(w.family, w.functor, horizon, w.depth_ideal));
  state.SetItemsProcessed(state.iterations() * horizon);
  state.counters["threads"] = scan_threads();
}

void workloads(benchmark::internal::Benchmark* b) {
  b->ArgNames({"workload", "horizon"});
  for (int w = 0; w < 3; ++w)
    for (int h : {25, 50, 100}) b->Args({w, h});
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_ObserveSerial)->Apply(workloads);
BENCHMARK(BM_ObserveParallel)->Apply(workloads);

BENCHMARK_MAIN();
