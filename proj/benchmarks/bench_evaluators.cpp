#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>
#include <vector>

#include "daub/dyadic.hpp"
#include "daub/evaluators.hpp"

using namespace daub;

namespace {

// Evaluators at the default refinement, built once per (precision, p).
template <class Target>
const ScalingEvaluator<Target>& cached(int p) {
    static std::map<int, std::unique_ptr<ScalingEvaluator<Target>>> cache;
    auto& slot = cache[p];
    if (!slot) slot = std::make_unique<ScalingEvaluator<Target>>(make_scaling<Target>(p));
    return *slot;
}

template <class Target>
std::vector<Target> abscissas(int p) {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> u(0, 2.0 * p - 1);
    std::vector<Target> xs(4096);
    for (auto& x : xs) x = static_cast<Target>(u(rng));
    return xs;
}

template <class Target>
void BM_phi(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const auto& phi = cached<Target>(p);
    const auto xs = abscissas<Target>(p);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi(xs[i++ & 4095]));
    }
    state.counters["j"] = phi.refinement();
}

template <class Target>
void BM_phi_prime(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const auto& phi = cached<Target>(p);
    const auto xs = abscissas<Target>(p);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi.prime(xs[i++ & 4095]));
    }
}

void BM_build_grid(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_scaling_grid<DoubleWord>(p, 12, 0));
    }
}

void orders(benchmark::internal::Benchmark* b) {
    for (int p = 2; p <= 19; ++p) b->Arg(p);
}

void differentiable_orders(benchmark::internal::Benchmark* b) {
    for (int p = 3; p <= 19; ++p) b->Arg(p);
}

}  // namespace

BENCHMARK(BM_phi<float>)->Apply(orders);
BENCHMARK(BM_phi<double>)->Apply(orders);
BENCHMARK(BM_phi_prime<double>)->Apply(differentiable_orders);
BENCHMARK(BM_build_grid)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
