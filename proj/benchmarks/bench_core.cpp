#include <benchmark/benchmark.h>

#include "cqfit/duality.hpp"
#include "cqfit/hom.hpp"
#include "cqfit/pac/scenarios.hpp"
#include "cqfit/product.hpp"
#include "cqfit/text.hpp"

using namespace cqfit;

namespace {

// Complete graph on n values with a self-loop-free edge relation.
Example clique(int n, const std::string& prefix) {
    std::string text;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                text += "R(" + prefix + std::to_string(i) + "," + prefix + std::to_string(j) + ")\n";
            }
        }
    }
    return parse_example(text + "#answer " + prefix + "0");
}

void BM_HomCliqueIntoSmaller(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Example big = clique(n, "a");
    const Example small = clique(n - 1, "b");
    for (auto _ : state) {
        benchmark::DoNotOptimize(hom_exists(big, small));
    }
}
BENCHMARK(BM_HomCliqueIntoSmaller)->DenseRange(4, 6);

void BM_HomTheorem4DualCheck(benchmark::State& state) {
    const auto scenario = pac::build_theorem4_scenario(static_cast<int>(state.range(0)));
    const Example target = scenario.target_path.to_example();
    for (auto _ : state) {
        for (const auto& dual : scenario.duals) {
            benchmark::DoNotOptimize(hom_exists(target, dual));
        }
    }
}
BENCHMARK(BM_HomTheorem4DualCheck)->Arg(4)->Arg(8);

void BM_PathDual(benchmark::State& state) {
    const auto scenario = pac::build_theorem4_scenario(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_path_dual(scenario.family_paths.back(), scenario.target_path));
    }
}
BENCHMARK(BM_PathDual)->Arg(4)->Arg(8)->Arg(12);

void BM_Product(benchmark::State& state) {
    const auto scenario = pac::build_theorem5_scenario(static_cast<int>(state.range(0)));
    const Example& a = scenario.positives.front();
    const Example& b = scenario.positives.back();
    for (auto _ : state) {
        benchmark::DoNotOptimize(product_example(a, b));
    }
}
BENCHMARK(BM_Product)->Arg(4)->Arg(8);

void BM_HomIntoImplicitProduct(benchmark::State& state) {
    const auto scenario = pac::build_theorem5_scenario(10);
    const auto product = product_many({scenario.positives.begin(), scenario.positives.begin() + state.range(0)});
    const Example probe = scenario.subset_paths.front().to_example();
    for (auto _ : state) {
        benchmark::DoNotOptimize(hom_into_product(probe, product));
    }
}
BENCHMARK(BM_HomIntoImplicitProduct)->Arg(2)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
