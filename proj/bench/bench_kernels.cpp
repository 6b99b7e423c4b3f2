#include <random>

#include <benchmark/benchmark.h>

#include "uc/exactalg/ring.hpp"

using namespace uc::exactalg;

namespace {

// Dense elements of F_p[a,b,c]/(a^d, b^d, c^d).
struct Fixture {
    PresPtr pres;
    RingElem x, y;

    Fixture(std::uint32_t p, std::uint32_t d, double density) {
        pres = Presentation::Builder{BaseField(p)}.add_nilpotent("a", d).add_nilpotent("b", d).add_nilpotent("c", d).build();
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<std::uint32_t> coef(1, p - 1);
        std::bernoulli_distribution keep(density);
        auto make = [&] {
            auto coords = RingElem(pres).monomial_coordinates();
            for (auto &c : coords)
                if (keep(rng)) c = FieldElem(p, coef(rng));
            return RingElem::from_coordinates(pres, coords);
        };
        x = make();
        y = make();
    }
};

void BM_DenseSerial(benchmark::State &st) {
    Fixture f(7, static_cast<std::uint32_t>(st.range(0)), 0.5);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::mul_dense_serial(*f.pres, f.x.terms(), f.y.terms()));
    st.counters["terms"] = static_cast<double>(f.x.size());
}

void BM_DenseParallel(benchmark::State &st) {
    Fixture f(7, static_cast<std::uint32_t>(st.range(0)), 0.5);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::mul_dense_parallel(*f.pres, f.x.terms(), f.y.terms()));
    st.counters["terms"] = static_cast<double>(f.x.size());
}

void BM_Sparse(benchmark::State &st) {
    Fixture f(7, static_cast<std::uint32_t>(st.range(0)), 0.5);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::mul_sparse(*f.pres, f.x.terms(), f.y.terms()));
}

} // namespace

BENCHMARK(BM_DenseSerial)->Arg(8)->Arg(16)->Arg(25)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DenseParallel)->Arg(8)->Arg(16)->Arg(25)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Sparse)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
