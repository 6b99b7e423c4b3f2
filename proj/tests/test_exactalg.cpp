#include <doctest.h>

#include "support.hpp"
#include "uc/errors.hpp"
#include "uc/exactalg/linalg.hpp"
#include "uc/exactalg/modp.hpp"
#include "uc/exactalg/parse.hpp"

using namespace uc;
using namespace uc::exactalg;
using test::kSeed;

namespace {

PresPtr nil1(std::uint32_t p, std::uint32_t d) { return Presentation::Builder{BaseField(p)}.add_nilpotent("l", d).build(); }

PresPtr u2(std::uint32_t p) {
    return Presentation::Builder{BaseField(p)}.add_nilpotent("l1", p * p).add_nilpotent("l2", p).build();
}

// F_p(t1, t2) element built from random small polynomials.
FieldElem random_field(std::uint32_t p, std::mt19937_64 &rng, bool nonzero = false) {
    auto poly = [&](bool nz) {
        for (;;) {
            std::vector<PTerm> ts;
            int k = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < k; ++i) {
                PTerm t;
                t.exps[0] = static_cast<std::uint32_t>(rng() % 3);
                t.exps[1] = static_cast<std::uint32_t>(rng() % 2);
                t.coeff = static_cast<std::uint32_t>(rng() % p);
                ts.push_back(t);
            }
            auto f = MPoly::from_terms(p, ts);
            if (!nz || !f.is_zero()) return f;
        }
    };
    for (;;) {
        auto f = FieldElem::fraction(poly(false), poly(true));
        if (!nonzero || !f.is_zero()) return f;
    }
}

// Evaluation at a point of F_p^2; nullopt when the denominator vanishes.
std::optional<std::int64_t> eval_poly(const MPoly &f, std::int64_t p, std::int64_t x, std::int64_t y) {
    std::int64_t s = 0;
    for (const auto &t : f.terms()) {
        std::int64_t v = t.coeff;
        for (std::uint32_t i = 0; i < t.exps[0]; ++i) v = v * x % p;
        for (std::uint32_t i = 0; i < t.exps[1]; ++i) v = v * y % p;
        s = (s + v) % p;
    }
    return s;
}

std::optional<std::int64_t> eval_field(const FieldElem &f, std::int64_t p, std::int64_t x, std::int64_t y) {
    if (f.is_scalar()) return f.scalar();
    auto n = *eval_poly(f.numerator(), p, x, y);
    auto d = *eval_poly(f.denominator(), p, x, y);
    if (d == 0) return std::nullopt;
    return n * pow_mod(static_cast<std::uint32_t>(d), static_cast<std::uint64_t>(p - 2), static_cast<std::uint32_t>(p)) % p;
}

} // namespace

TEST_CASE("normal form examples") {
    for (std::uint32_t p : {2U, 3U, 5U}) {
        auto K = Presentation::Builder{BaseField(p, {"alpha"})}.add_relation("y", p, "alpha").build();
        auto y = RingElem::var(K, "y");
        CHECK(y.pow(p) == RingElem::param(K, "alpha"));
        auto L = nil1(p, p);
        CHECK(RingElem::var(L, 0).pow(p).is_zero());
        auto K2 = Presentation::Builder{BaseField(p, {"alpha"})}.add_relation("y", p * p, "alpha").build();
        auto y2 = RingElem::var(K2, "y");
        CHECK(y2.pow(p * p + 1) == RingElem::param(K2, "alpha") * y2);
        auto lp = RingElem::var(L, 0) + RingElem(L, 1);
        CHECK(lp.pow(p).is_one());
    }
    auto R = Presentation::Builder{BaseField(2)}.add_nilpotent("l1", 4).add_nilpotent("l2", 2).build();
    auto a = RingElem::var(R, 0), b = RingElem::var(R, 1);
    CHECK((a + b) * a == a.pow(2) + a * b);
    CHECK((a * RingElem(R)).is_zero());
    CHECK((a + b) * a == RingElem::parse(R, "l1^2 + l1 l2"));
}

TEST_CASE("products agree with a naive rewriting oracle") {
    std::mt19937_64 rng(kSeed);
    struct Case {
        PresPtr pres;
        std::vector<test::NaiveRel> rels;
    };
    std::vector<Case> cases;
    {
        // F_3[a,b,c]/(a^3, b^2 - a, c^3 - a b - 1)
        auto pres = Presentation::Builder{BaseField(3)}
                        .add_nilpotent("a", 3)
                        .add_relation("b", 2, "a")
                        .add_relation("c", 3, "a*b + 1")
                        .build();
        std::vector<test::NaiveRel> rels{{0, 3, {}}, {1, 2, {{{1, 0, 0}, 1}}}, {2, 3, {{{1, 1, 0}, 1}, {{0, 0, 0}, 1}}}};
        cases.push_back({pres, rels});
    }
    {
        // F_2[x, y, z]/(y^2 - x, z^2 - y - 1), x free
        auto pres = Presentation::Builder{BaseField(2)}.add_free("x").add_relation("y", 2, "x").add_relation("z", 2, "y + 1").build();
        std::vector<test::NaiveRel> rels{{1, 2, {{{1, 0, 0}, 1}}}, {2, 2, {{{0, 1, 0}, 1}, {{0, 0, 0}, 1}}}};
        cases.push_back({pres, rels});
    }
    {
        // F_5[a, b]/(a^5, b^4 - 2 a^3 b... ) with a tail of several terms
        auto pres = Presentation::Builder{BaseField(5)}.add_nilpotent("a", 5).add_relation("b", 4, "2*a^3 + a + 4").build();
        std::vector<test::NaiveRel> rels{{0, 5, {}}, {1, 4, {{{3, 0}, 2}, {{1, 0}, 1}, {{0, 0}, 4}}}};
        cases.push_back({pres, rels});
    }
    for (const auto &c : cases) {
        std::int64_t p = c.pres->characteristic();
        for (int trial = 0; trial < 60; ++trial) {
            auto fa = test::random_naive(*c.pres, rng, 6);
            auto fb = test::random_naive(*c.pres, rng, 6);
            auto a = test::from_naive(c.pres, fa), b = test::from_naive(c.pres, fb);
            auto expect = test::naive_reduce(test::naive_mul(fa, fb, p), c.rels, p);
            REQUIRE(test::to_naive(a * b) == expect);
            CHECK(test::to_naive(a + b) == test::naive_reduce([&] {
                      auto s = fa;
                      for (const auto &[e, v] : fb) s[e] = test::md(s[e] + v, p);
                      std::erase_if(s, [](const auto &kv) { return kv.second == 0; });
                      return s;
                  }(),
                                                              c.rels, p));
        }
    }
}

TEST_CASE("ring axioms and powers on random elements") {
    std::mt19937_64 rng(kSeed + 1);
    auto pres = Presentation::Builder{BaseField(3, {"t"})}.add_relation("y", 3, "t").add_nilpotent("l", 9).build();
    auto rnd = [&] {
        auto f = test::random_naive(*pres, rng, 4);
        auto x = test::from_naive(pres, f);
        return x + RingElem::param(pres, "t") * test::from_naive(pres, test::random_naive(*pres, rng, 2));
    };
    for (int i = 0; i < 40; ++i) {
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a.frobenius() == a * a * a);
        auto e = static_cast<std::uint64_t>(rng() % 12);
        RingElem slow(pres, 1);
        for (std::uint64_t k = 0; k < e; ++k) slow = slow * a;
        CHECK(a.pow(e) == slow);
        CHECK(RingElem::parse(pres, a.to_string()) == a);
    }
}

TEST_CASE("nilpotent and unit predicates against brute force") {
    std::vector<PresPtr> rings{nil1(2, 2), nil1(3, 3),
                               Presentation::Builder{BaseField(2)}.add_nilpotent("a", 2).add_relation("b", 2, "a").build(),
                               Presentation::Builder{BaseField(2)}.add_relation("y", 2, "1").add_nilpotent("l", 2).build()};
    for (const auto &R : rings) {
        auto elems = test::all_elements(R);
        std::uint64_t rank = *R->rank();
        for (const auto &x : elems) {
            bool nil = false;
            RingElem pw = x;
            for (std::uint64_t k = 1; k <= rank + 1 && !nil; ++k, pw = pw * x) nil = pw.is_zero();
            bool unit = false;
            for (const auto &y : elems) unit = unit || (x * y).is_one();
            CHECK(x.is_nilpotent() == nil);
            CHECK(x.is_unit() == unit);
            if (unit) CHECK((x * x.inverse()).is_one());
            else CHECK_THROWS_AS(x.inverse(), NotInvertible);
        }
    }
}

TEST_CASE("predicate examples") {
    auto R = u2(2);
    auto l1 = RingElem::var(R, 0), l2 = RingElem::var(R, 1);
    CHECK((l1 * l2).is_nilpotent());
    CHECK_FALSE((RingElem(R, 1) + l1).is_nilpotent());
    CHECK((RingElem(R, 1) + l1).is_unit());
    CHECK_FALSE(l1.is_unit());
    for (std::uint32_t p : {2U, 3U}) {
        auto K = Presentation::Builder{BaseField(p, {"alpha"})}.add_relation("y", p * p, "alpha").build();
        CHECK_FALSE(RingElem::var(K, 0).is_nilpotent());
        auto K1 = Presentation::Builder{BaseField(p, {"alpha"})}.add_relation("y", p, "alpha").build();
        auto y = RingElem::var(K1, 0);
        CHECK(y.is_unit());
        auto yinv = y.pow(p - 1).scaled(FieldElem::param(p, 0).inverse());
        CHECK(y.inverse() == yinv);
    }
    // K[y, z]/(y^2, z^2 - y): z is nilpotent of order 4, beyond 1 + sum(d_i - 1) = 3.
    auto Q = Presentation::Builder{BaseField(3)}.add_nilpotent("y", 2).add_relation("z", 2, "y").build();
    auto z = RingElem::var(Q, "z");
    CHECK(z.is_nilpotent());
    CHECK_FALSE(z.pow(3).is_zero());
    CHECK(z.pow(4).is_zero());
}

TEST_CASE("errors") {
    auto F = Presentation::Builder{BaseField(2)}.add_free("x").build();
    auto x = RingElem::var(F, 0);
    CHECK_THROWS_AS((void)x.is_nilpotent(), Undecidable);
    CHECK_THROWS_AS((void)(x + RingElem(F, 1)).is_unit(), Unsupported);
    CHECK_THROWS_AS(x.pow_signed(-1), Unsupported);
    auto R = nil1(2, 2), S = nil1(2, 2);
    CHECK_THROWS_AS(RingElem::var(R, 0) + RingElem::var(Presentation::Builder{BaseField(2)}.add_nilpotent("m", 2).build(), 0),
                    PresentationMismatch);
    CHECK((RingElem::var(R, 0) + RingElem::var(S, 0)).is_zero());
    CHECK_THROWS_AS(Presentation::Builder{BaseField(2)}.add_free("x").add_free("x"), UsageError);
    CHECK_THROWS_AS(Presentation::Builder{BaseField(2, {"t"})}.add_free("t"), UsageError);
    CHECK_THROWS_AS(BaseField(4), UsageError);
    CHECK_THROWS_AS(RingElem::parse(R, "l + "), ParseError);
    CHECK_THROWS_AS(RingElem::parse(R, "q"), PresentationMismatch);
    CHECK_THROWS_AS(RingElem::parse(F, "1/x"), Unsupported);
    CHECK_THROWS_AS(FieldElem(3, 0).inverse(), NotInvertible);
}

TEST_CASE("field arithmetic over F_p(t1, t2)") {
    for (std::uint32_t p : {2U, 3U, 101U}) {
        std::mt19937_64 rng(kSeed + p);
        for (int i = 0; i < 60; ++i) {
            auto a = random_field(p, rng), b = random_field(p, rng), c = random_field(p, rng, true);
            CHECK((a + b) * c == a * c + b * c);
            CHECK((a / c) * c == a);
            CHECK(a.frobenius() == a.pow(p));
            CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
            CHECK(a.reduced() == a);
            auto r = (a * c).reduced();
            CHECK(gcd(r.numerator(), r.denominator()).is_constant());
            if (p == 101) {
                // Evaluation is a ring homomorphism where denominators survive.
                for (int k = 0; k < 5; ++k) {
                    std::int64_t x = static_cast<std::int64_t>(rng() % p), y = static_cast<std::int64_t>(rng() % p);
                    auto ea = eval_field(a, p, x, y), ec = eval_field(c, p, x, y);
                    auto ep = eval_field(a * c, p, x, y), es = eval_field(a - c, p, x, y);
                    if (ea && ec && ep) CHECK(*ep == *ea * *ec % p);
                    if (ea && ec && es) CHECK(*es == test::md(*ea - *ec, p));
                }
            }
        }
    }
    BaseField K(2, {"t"});
    CHECK(parse_field(K, "(t^2 + t)/t") == parse_field(K, "t + 1"));
    CHECK(parse_field(K, "t^-1") * parse_field(K, "t") == FieldElem(2, 1));
    CHECK(parse_field(K, "(t + 1)/(t^2 + 1)").reduced().to_string(K.params()) == "1/(t + 1)");
}

TEST_CASE("multivariate gcd") {
    std::mt19937_64 rng(kSeed + 7);
    for (int i = 0; i < 40; ++i) {
        auto f = random_field(3, rng, true).numerator(), g = random_field(3, rng, true).numerator();
        auto h = random_field(3, rng, true).numerator();
        if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
        auto d = gcd(f * h, g * h);
        CHECK(divide_exact(d, h.monic()).has_value());
        CHECK(divide_exact(f * h, d).has_value());
        CHECK(divide_exact(g * h, d).has_value());
    }
}

TEST_CASE("coordinates") {
    auto R = u2(2);
    auto one = RingElem(R, 1).monomial_coordinates();
    CHECK(one.size() == 8);
    int ones = 0;
    for (const auto &c : one) ones += c.is_one();
    CHECK(ones == 1);
    auto x = RingElem::parse(R, "l1 + l1*l2");
    ones = 0;
    for (const auto &c : x.monomial_coordinates()) ones += c.is_one();
    CHECK(ones == 2);
    std::mt19937_64 rng(kSeed);
    for (int i = 0; i < 50; ++i) {
        auto a = test::from_naive(R, test::random_naive(*R, rng, 4));
        auto b = test::from_naive(R, test::random_naive(*R, rng, 4));
        auto ca = a.monomial_coordinates(), cb = b.monomial_coordinates(), cs = (a + b).monomial_coordinates();
        for (std::size_t k = 0; k < cs.size(); ++k) CHECK(cs[k] == ca[k] + cb[k]);
        CHECK(RingElem::from_coordinates(R, ca) == a);
    }
}

TEST_CASE("substitution is a homomorphism") {
    std::mt19937_64 rng(kSeed + 3);
    auto R = u2(3);
    auto l1 = RingElem::var(R, 0), l2 = RingElem::var(R, 1);
    // l1 -> l1 + l2 * l1^2 respects l1^9 = 0, l2 -> 2 l2 respects l2^3 = 0.
    std::vector<RingElem> img{l1 + l2 * l1.pow(2), l2.scaled(FieldElem(3, 2))};
    for (int i = 0; i < 30; ++i) {
        auto a = test::from_naive(R, test::random_naive(*R, rng, 5));
        auto b = test::from_naive(R, test::random_naive(*R, rng, 5));
        CHECK((a * b).substitute(img) == a.substitute(img) * b.substitute(img));
        CHECK(a.substitute({l1, l2}) == a);
    }
    auto E = Presentation::Builder{*R}.add_nilpotent("eps", 2).build();
    CHECK(l1.lift_to(E) == RingElem::var(E, "l1"));
}

TEST_CASE("linear algebra") {
    std::mt19937_64 rng(kSeed + 11);
    for (int i = 0; i < 50; ++i) {
        std::uint32_t p = i % 2 ? 3 : 7;
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        std::vector<std::vector<std::uint32_t>> m(r, std::vector<std::uint32_t>(c));
        linalg::Matrix fm(r, std::vector<FieldElem>(c));
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < c; ++b) {
                m[a][b] = static_cast<std::uint32_t>(rng() % p) * (rng() % 3 != 0);
                fm[a][b] = FieldElem(p, m[a][b]);
            }
        CHECK(linalg::rank(fm) == linalg::rank_mod_p(m, p));
        if (r == c) {
            std::vector<FieldElem> rhs;
            for (std::size_t a = 0; a < r; ++a) rhs.emplace_back(p, static_cast<std::int64_t>(rng() % p));
            auto sol = linalg::solve(fm, rhs);
            CHECK(sol.has_value() == (linalg::rank(fm) == r));
            if (sol)
                for (std::size_t a = 0; a < r; ++a) {
                    FieldElem s(p, 0);
                    for (std::size_t b = 0; b < c; ++b) s = s + fm[a][b] * (*sol)[b];
                    CHECK(s == rhs[a]);
                }
        }
    }
}
