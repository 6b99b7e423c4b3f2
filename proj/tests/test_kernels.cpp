#include <doctest.h>

#include <omp.h>

#include "support.hpp"

using namespace uc::exactalg;
using test::kSeed;

namespace {

RingElem dense_random(const PresPtr &pres, std::mt19937_64 &rng, double density) {
    std::uint32_t p = pres->characteristic();
    auto coords = RingElem(pres).monomial_coordinates();
    std::bernoulli_distribution keep(density);
    for (auto &c : coords)
        if (keep(rng)) c = FieldElem(p, static_cast<std::int64_t>(rng() % p));
    return RingElem::from_coordinates(pres, coords);
}

PresPtr cube(std::uint32_t p, std::uint32_t d) {
    return Presentation::Builder{BaseField(p)}.add_nilpotent("a", d).add_nilpotent("b", d).add_nilpotent("c", d).build();
}

} // namespace

TEST_CASE("dense kernels agree with the sparse reference") {
    std::mt19937_64 rng(kSeed);
    for (std::uint32_t p : {2U, 7U, 65521U, 4294967291U}) {
        for (std::uint32_t d : {2U, 5U, 9U}) {
            auto pres = cube(p, d);
            for (int t = 0; t < 4; ++t) {
                auto x = dense_random(pres, rng, 0.6), y = dense_random(pres, rng, 0.6);
                REQUIRE(kernels::dense_applicable(*pres, x, y));
                auto s = kernels::mul_sparse(*pres, x.terms(), y.terms());
                auto ds = kernels::mul_dense_serial(*pres, x.terms(), y.terms());
                auto dp = kernels::mul_dense_parallel(*pres, x.terms(), y.terms());
                CHECK(RingElem::from_terms(pres, ds) == RingElem::from_terms(pres, s));
                CHECK(RingElem::from_terms(pres, dp) == RingElem::from_terms(pres, s));
            }
        }
    }
}

TEST_CASE("parallel path above the threshold") {
    std::mt19937_64 rng(kSeed + 1);
    auto pres = cube(4294967291U, 16);
    auto x = dense_random(pres, rng, 0.9), y = dense_random(pres, rng, 0.9);
    REQUIRE(x.size() * y.size() >= kernels::kParallelThreshold);
    auto serial = RingElem::from_terms(pres, kernels::mul_dense_serial(*pres, x.terms(), y.terms()));
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        auto par = RingElem::from_terms(pres, kernels::mul_dense_parallel(*pres, x.terms(), y.terms()));
        CHECK(par == serial);
    }
    CHECK(x * y == serial);
}

TEST_CASE("dense kernel applicability") {
    auto withtail = Presentation::Builder{BaseField(3)}.add_nilpotent("a", 3).add_relation("b", 3, "a + 1").build();
    auto a = RingElem::var(withtail, 0);
    CHECK_FALSE(kernels::dense_applicable(*withtail, a, a));
    auto params = Presentation::Builder{BaseField(3, {"t"})}.add_nilpotent("a", 3).build();
    auto at = RingElem::var(params, 0) * RingElem::param(params, "t");
    CHECK_FALSE(kernels::dense_applicable(*params, at, at));
    auto plain = cube(3, 3);
    auto x = RingElem::var(plain, 0) + RingElem(plain, 1);
    CHECK(kernels::dense_applicable(*plain, x, x));
    // Truncation: a^2 * a^2 vanishes in a^3 = 0.
    auto a2 = RingElem::var(plain, 0).pow(2);
    CHECK(kernels::mul_dense_serial(*plain, a2.terms(), a2.terms()).empty());
}
