#include <doctest.h>

#include <random>

#include "uc/errors.hpp"
#include "uc/exactalg/parse.hpp"
#include "uc/twistforms/twistforms.hpp"

using namespace uc;
using namespace uc::twistforms;
using exactalg::parse_field;

namespace {

constexpr std::uint64_t kSeed = 20240611;

AdditivePoly additive(const BaseField &K, std::vector<std::string> coeffs) {
    AdditivePoly a{K, {}};
    for (const auto &c : coeffs) a.coeffs.push_back(parse_field(K, c));
    return a;
}

// (X o C)(u) = X(C(u)): coefficient k is sum x_i c_j^(p^i) over i + j = k.
AdditivePoly compose(const AdditivePoly &X, const AdditivePoly &C) {
    AdditivePoly r{X.base, {}};
    std::uint32_t p = X.base.characteristic();
    r.coeffs.assign(X.coeffs.size() + C.coeffs.size(), exactalg::FieldElem(p, 0));
    for (std::size_t i = 0; i < X.coeffs.size(); ++i)
        for (std::size_t j = 0; j < C.coeffs.size(); ++j) {
            auto cj = C.coeffs[j];
            for (std::size_t k = 0; k < i; ++k) cj = cj.frobenius();
            r.coeffs[i + j] = r.coeffs[i + j] + X.coeffs[i] * cj;
        }
    return r;
}

bool is_u(const UPoly &g) { return g.degree() == 1 && g.coeffs[0].is_zero() && g.coeffs[1].is_one(); }

} // namespace

TEST_CASE("gcd criterion") {
    for (std::uint32_t p : {2U, 3U, 5U}) {
        auto f1 = russell_form(p, 1);
        CHECK(is_u(additive_gcd(f1.phi, f1.psi)));
        CHECK(is_ga_twist(f1.phi, f1.psi));
        BaseField K(p, {"alpha"});
        auto up = additive(K, {"0", "1"});
        CHECK(additive_gcd(up, up).to_string() == "u^" + std::to_string(p));
        CHECK(is_ga_twist(additive(K, {"1"}), additive(K, {"0"})));
        // Psi = v^p - v^(p^2) = (v - v^p)^p shares the kernel of Frobenius.
        CHECK_FALSE(is_ga_twist(up, additive(K, {"0", "1", "-1"})));
        CHECK(additive_gcd(up, additive(K, {"0", "1", "-1"})).degree() == static_cast<int>(p));
        CHECK_THROWS_AS(additive_gcd(additive(K, {"0"}), additive(K, {})), UsageError);
    }
    for (std::uint32_t p : {2U, 3U}) {
        auto f2 = russell_form(p, 2);
        CHECK(is_u(additive_gcd(f2.phi, f2.psi)));
    }
}

TEST_CASE("gcd of additive polynomials is additive") {
    std::mt19937_64 rng(kSeed);
    for (std::uint32_t p : {2U, 3U}) {
        BaseField K(p, {"t"});
        const char *pool[] = {"0", "1", "t", "t + 1", "t^2", "1/t", "-1", "2*t"};
        for (int i = 0; i < 60; ++i) {
            std::vector<std::string> a, b;
            std::size_t la = 1 + rng() % 3, lb = 1 + rng() % 3;
            for (std::size_t k = 0; k < la; ++k) a.push_back(pool[rng() % 8]);
            for (std::size_t k = 0; k < lb; ++k) b.push_back(pool[rng() % 8]);
            auto A = additive(K, a), B = additive(K, b);
            if (A.is_zero() && B.is_zero()) continue;
            auto g = additive_gcd(A, B);
            CHECK(g.is_additive());
            CHECK(g.coeffs.back().is_one());
            // With a common right factor C the gcd is still additive and
            // has degree at least deg C.
            std::vector<std::string> c{pool[1 + rng() % 7], "1"};
            auto C = additive(K, c);
            auto AC = compose(A, C), BC = compose(B, C);
            if (AC.is_zero() && BC.is_zero()) continue;
            auto h = additive_gcd(AC, BC);
            CHECK(h.is_additive());
            CHECK(h.degree() >= static_cast<int>(p));
        }
    }
}

TEST_CASE("Russell forms") {
    auto f21 = russell_form(2, 1);
    CHECK(f21.phi.to_string("u") == "u^2");
    CHECK(f21.psi.to_string("v") == "v + alpha*v^2");
    auto f31 = russell_form(3, 1);
    CHECK(f31.phi.to_string("u") == "u^3");
    CHECK(f31.psi.to_string("v") == "v - alpha*v^3");
    auto f22 = russell_form(2, 2);
    CHECK(f22.phi.to_string("u") == "u^4");
    CHECK(f22.psi.to_string("v") == "v + alpha*v^2 + beta^2*v^4");
    CHECK(russell_form(5, 2).psi.to_string("v") == "v - alpha*v^5 - beta^5*v^25");
    CHECK_THROWS_AS(russell_form(2, 3), Unsupported);
    CHECK_THROWS_AS(russell_form(2, 0), Unsupported);
}

TEST_CASE("symbolic identities and negative controls") {
    for (std::uint32_t p : {2U, 3U, 5U}) {
        CHECK(verify_russell_level1(p));
        CHECK_FALSE(verify_russell_level1(p, true));
    }
    for (std::uint32_t p : {2U, 3U}) {
        CHECK(verify_russell_level2(p));
        CHECK_FALSE(verify_russell_level2(p, true));
        CHECK(verify_torsor_action(p));
        CHECK_FALSE(verify_torsor_action(p, true));
    }
}

TEST_CASE("cohomology relation element") {
    auto f = russell_form(2, 1);
    BaseField K(2, {"alpha"});
    auto zero = exactalg::FieldElem(2, 0), one = exactalg::FieldElem(2, 1);
    auto alpha = parse_field(K, "alpha");
    CHECK(cohomology_relation_element(f, zero, zero).is_zero());
    CHECK(cohomology_relation_element(f, alpha, zero) == alpha.pow(2));
    CHECK(cohomology_relation_element(f, zero, one) == alpha - one);
    auto f3 = russell_form(3, 1);
    CHECK(cohomology_relation_element(f3, exactalg::FieldElem(3, 0), exactalg::FieldElem(3, 1)) ==
          parse_field(BaseField(3, {"alpha"}), "alpha - 1"));
    auto idx = cohomology_index(BaseField(3, {"t"}), 1, parse_field(BaseField(3, {"t"}), "t^2 + 1"));
    CHECK(idx.form.psi.coeffs[1] == -parse_field(BaseField(3, {"t"}), "t^2 + 1"));
}

TEST_CASE("p-th powers in F_p(t)") {
    BaseField K2(2, {"t"});
    CHECK(is_pth_power_ratfunc(parse_field(K2, "t^2"), 2));
    CHECK_FALSE(is_pth_power_ratfunc(parse_field(K2, "t"), 2));
    CHECK(is_pth_power_ratfunc(parse_field(K2, "(t^2 + t^4)/t^6"), 2));
    CHECK(is_pth_power_ratfunc(parse_field(K2, "1/(t^2 + 1)"), 2));
    CHECK_FALSE(is_pth_power_ratfunc(parse_field(K2, "1/(t + 1)"), 2));
    BaseField K3(3, {"t", "s"});
    CHECK(is_pth_power_ratfunc(parse_field(K3, "(t^3 + s^6)/(t^3 s^3 + 1)"), 3));
    CHECK_FALSE(is_pth_power_ratfunc(parse_field(K3, "t s^3"), 3));
    // Random f: f^p is always a p-th power.
    std::mt19937_64 rng(kSeed);
    const char *pool[] = {"t", "s + 1", "t^2 s", "(t + s)/(t s + 1)", "2 t + s^2", "1/(t - s)"};
    for (int i = 0; i < 30; ++i) {
        auto f = parse_field(K3, pool[rng() % 6]) * parse_field(K3, pool[rng() % 6]);
        CHECK(is_pth_power_ratfunc(f.frobenius(), 3));
    }
}

TEST_CASE("trivial class witnesses") {
    for (std::uint32_t p : {2U, 3U}) {
        BaseField K(p, {"t"});
        auto gamma = parse_field(K, "t");
        auto form = russell_form(K, 1, gamma.frobenius());
        const char *targets[] = {"1", "t", "t^2", "t + 1", "1/t", "t^3 + t", "(t + 1)/t", "t^2 + 2",
                                 "1/(t + 1)", "t^4", "t^5 + 1", "2", "t^2/(t^3 + 1)", "t - 1", "(t^2 + 1)/(t - 1)",
                                 "t^6", "1/t^2", "t^3", "t^7 + t", "(t + 2)/(t^2 + t + 1)", "t^8 + t^2"};
        int found = 0;
        for (const auto *s : targets) {
            auto target = parse_field(K, s);
            auto w = trivial_class_witness(form, gamma, target);
            REQUIRE(w.has_value());
            CHECK(cohomology_relation_element(form, w->first, w->second) == target);
            ++found;
        }
        CHECK(found >= 20);
        CHECK_THROWS_AS(trivial_class_witness(form, parse_field(K, "t + 1"), gamma), UsageError);
    }
}
