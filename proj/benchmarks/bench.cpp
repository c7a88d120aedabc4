#include <benchmark/benchmark.h>

#include "triloc/gate_finder.hpp"
#include "triloc/invariants.hpp"
#include "triloc/povm_engine.hpp"
#include "triloc/rng.hpp"
#include "triloc/state.hpp"

using namespace triloc;

namespace {

PureState3Q fixture(Ensemble e, std::uint64_t seed) {
    Rng rng(seed);
    return random_state(rng, e);
}

void BM_FastInvariants(benchmark::State& state) {
    const PureState3Q s = fixture(Ensemble::complex_haar, 1);
    for (auto _ : state) benchmark::DoNotOptimize(compute_invariants(s));
}
BENCHMARK(BM_FastInvariants);

void BM_BruteForceInvariants(benchmark::State& state) {
    const PureState3Q s = fixture(Ensemble::complex_haar, 1);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_invariants(s));
}
BENCHMARK(BM_BruteForceInvariants);

void BM_GateFinderReal(benchmark::State& state) {
    const PureState3Q s = fixture(Ensemble::ghz_class_real, 2);
    for (auto _ : state) benchmark::DoNotOptimize(find_gate_unitary_real(s, Party::A));
}
BENCHMARK(BM_GateFinderReal);

void BM_GateFinderComplex(benchmark::State& state) {
    const PureState3Q s = fixture(Ensemble::ghz_class_complex, 3);
    for (auto _ : state) benchmark::DoNotOptimize(find_gate_unitary_complex(s, Party::A));
}
BENCHMARK(BM_GateFinderComplex);

void BM_ResultantScan(benchmark::State& state) {
    const PureState3Q s = fixture(Ensemble::ghz_class_complex, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(resultant_scan(s, Party::A, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ResultantScan)->Arg(64)->Arg(256)->Arg(1024);

void BM_DeterministicPovm(benchmark::State& state) {
    const PureState3Q s = fixture(Ensemble::ghz_class_real, 5);
    for (auto _ : state) benchmark::DoNotOptimize(make_deterministic_povm(s, Party::A, 2.0));
}
BENCHMARK(BM_DeterministicPovm);

}  // namespace

BENCHMARK_MAIN();
