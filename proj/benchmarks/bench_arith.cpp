#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include "dquad/arith.hpp"
#include "dquad/families.hpp"
#include "dquad/poly.hpp"

namespace {

// The square test dominates search time; the residue prefilter is the knob.
void SquareTestI64(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::vector<std::int64_t> values(4096);
    for (auto& v : values) {
        std::int64_t r = static_cast<std::int64_t>(rng() % 2000000);
        v = (rng() & 1) ? r * r : static_cast<std::int64_t>(rng() % (r * r + 1));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dquad::is_square_i64(values[i & 4095]));
        ++i;
    }
}
BENCHMARK(SquareTestI64);

void SquareTestMpz(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::vector<dquad::Int> values;
    for (int i = 0; i < 512; ++i) {
        dquad::Int r(static_cast<long>(rng() % 2000000));
        dquad::Int v = r * r;
        if (rng() & 1) v += 1 + static_cast<long>(rng() % 97);
        values.push_back(std::move(v));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dquad::is_perfect_square(values[i & 511]));
        ++i;
    }
}
BENCHMARK(SquareTestMpz);

void PolySqrtDegree20(benchmark::State& state) {
    const dquad::Poly& n = dquad::family_lookup("nine_twenty").n_poly;
    const auto& fam = dquad::family_lookup("nine_twenty");
    dquad::Poly product = fam.elements[0] * fam.elements[2] + n;
    for (auto _ : state) {
        auto root = dquad::poly_sqrt(product);
        benchmark::DoNotOptimize(root);
    }
}
BENCHMARK(PolySqrtDegree20);

void FamilyProveAll(benchmark::State& state) {
    for (auto _ : state) {
        for (const auto& fam : dquad::family_registry()) {
            auto proof = dquad::family_prove(fam);
            benchmark::DoNotOptimize(proof);
        }
    }
}
BENCHMARK(FamilyProveAll);

}  // namespace
