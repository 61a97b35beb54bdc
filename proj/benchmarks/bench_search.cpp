#include <benchmark/benchmark.h>

#include "dquad/search.hpp"
#include "dquad/tuples.hpp"

namespace {

void FindQuadruples(benchmark::State& state) {
    const long bound = state.range(0);
    for (auto _ : state) {
        auto records = dquad::find_quadruples(7, bound);
        benchmark::DoNotOptimize(records);
    }
    state.SetComplexityN(bound);
}
BENCHMARK(FindQuadruples)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

// Large |n| keeps the square-value windows narrow; the scan is then
// output-sensitive rather than quadratic in the bound.
void FindQuadruplesLargeN(benchmark::State& state) {
    for (auto _ : state) {
        auto records = dquad::find_quadruples(1312164, state.range(0));
        benchmark::DoNotOptimize(records);
    }
}
BENCHMARK(FindQuadruplesLargeN)->Arg(500)->Arg(2000)->Arg(8000);

void VerifySextuple(benchmark::State& state) {
    std::vector<dquad::Int> elements{99, 315, 9920, 32768, 44460, 19534284};
    dquad::Int n = 2985984;
    for (auto _ : state) {
        auto result = dquad::verify(elements, n);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(VerifySextuple);

void AuditLowerBound(benchmark::State& state) {
    for (auto _ : state) {
        auto report = dquad::audit_lower_bound(state.range(0));
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(AuditLowerBound)->Arg(1000)->Arg(10000);

}  // namespace
