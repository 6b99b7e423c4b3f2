#include "uc/curvemodel/curvemodel.hpp"

#include <algorithm>

#include "uc/errors.hpp"
#include "uc/exactalg/linalg.hpp"
#include "uc/exactalg/modp.hpp"

namespace uc::curvemodel {

using exactalg::BaseField;
using exactalg::Presentation;
using numsemigroup::gamma_pn;
using numsemigroup::ipow;

PresPtr un_coordinate_ring(std::uint32_t p, unsigned n) {
    Presentation::Builder b{BaseField(p)};
    for (unsigned i = 1; i <= n; ++i) {
        std::int64_t d = ipow(p, n - i + 1);
        if (d > 0xFFFF) throw ResourceError("relation degree too large");
        b.add_nilpotent("l" + std::to_string(i), static_cast<std::uint32_t>(d));
    }
    return b.build();
}

namespace {

// The base 1 + sum l_i T^(1-p^i) and its inverse, shared across powers.
struct UnExpansion {
    PresPtr pres;
    LaurentPoly base;
    LaurentPoly inv;

    UnExpansion(std::uint32_t p, unsigned n) : pres(un_coordinate_ring(p, n)), base(pres), inv(pres) {
        base = LaurentPoly::monomial(RingElem(pres, 1), 0);
        for (unsigned i = 1; i <= n; ++i)
            base += LaurentPoly::monomial(RingElem::var(pres, i - 1), 1 - ipow(p, i));
        inv = base.unipotent_inverse();
        if (!(inv * base).is_one()) throw ConsistencyError("Laurent inverse failed");
    }

    LaurentPoly power(std::uint64_t d) const {
        LaurentPoly P = inv.pow(d);
        if (!(P * base.pow(d)).is_one()) throw ConsistencyError("Laurent inverse power failed its check");
        return P;
    }
};

std::vector<std::uint32_t> coords_mod_p(const RingElem &x) {
    std::vector<std::uint32_t> r;
    for (const auto &c : x.monomial_coordinates()) r.push_back(c.scalar());
    return r;
}

RingElem orbit_from(const LaurentPoly &P, std::int64_t d) {
    for (const auto &[s, c] : P.terms())
        if (d + s < 0) throw ExtensionViolation("negative exponent " + std::to_string(d + s) + " survives");
    return P.coeff(-d);
}

} // namespace

LaurentPoly inverse_power_laurent(std::uint32_t p, unsigned n, std::uint64_t d) {
    if (d == 0) throw OutOfDomain("exponent must be positive");
    return UnExpansion(p, n).power(d);
}

Verdict check_extension_un(std::uint32_t p, unsigned n, const NumericalSemigroup &S) {
    UnExpansion ex(p, n);
    for (auto d : S.minimal_generators()) {
        LaurentPoly P = ex.power(static_cast<std::uint64_t>(d));
        for (auto s : P.support())
            if (!S.contains(d + s)) return Verdict{false, d, s};
    }
    return Verdict{};
}

TruncatedSeries ga_series(std::uint32_t p, std::uint64_t d, std::size_t order) {
    auto pres = Presentation::Builder{BaseField(p)}.add_free("alpha").build();
    std::vector<RingElem> c{RingElem(pres, 1), RingElem::var(pres, 0)};
    auto base = TruncatedSeries::from_coeffs(pres, order, c);
    return base.inverse().pow(d);
}

std::uint32_t ga_coefficient_lucas(std::uint32_t p, std::uint64_t d, std::uint64_t s) {
    if (d == 0) return s == 0 ? 1 : 0;
    std::uint64_t top = d + s - 1;
    std::uint64_t bot = s;
    std::uint64_t r = 1;
    while (bot != 0 || top != 0) {
        std::uint64_t t = top % p, b = bot % p;
        if (b > t) return 0;
        // binom(t, b) for single digits.
        std::uint64_t num = 1, den = 1;
        for (std::uint64_t i = 0; i < b; ++i) {
            num = num * (t - i) % p;
            den = den * (i + 1) % p;
        }
        r = r * num % p * exactalg::inv_mod(static_cast<std::uint32_t>(den), p) % p;
        top /= p;
        bot /= p;
    }
    if (s % 2 == 1) r = (p - r) % p;
    return static_cast<std::uint32_t>(r);
}

Verdict check_extension_ga(std::uint32_t p, const NumericalSemigroup &S) {
    // Exponents at or above the conductor are members, so the series is
    // only needed below it.
    auto N = static_cast<std::size_t>(S.conductor());
    for (auto d : S.minimal_generators()) {
        TruncatedSeries Q = ga_series(p, static_cast<std::uint64_t>(d), N);
        for (std::size_t s = 0; s < N; ++s) {
            const RingElem &c = Q.coeff(s);
            std::uint32_t lucas = ga_coefficient_lucas(p, static_cast<std::uint64_t>(d), s);
            RingElem expected = RingElem::var(c.presentation(), 0).pow(s).scaled(exactalg::FieldElem(p, lucas));
            if (!(c == expected)) throw ConsistencyError("series coefficient disagrees with Lucas' theorem");
            if (!c.is_zero() && !S.contains(d + static_cast<std::int64_t>(s)))
                return Verdict{false, d, static_cast<std::int64_t>(s)};
        }
    }
    return Verdict{};
}

RingElem orbit_map(std::uint32_t p, unsigned n, std::uint64_t d) {
    if (!gamma_pn(p, n).contains(static_cast<std::int64_t>(d))) throw OutOfDomain("exponent is not in the semigroup");
    UnExpansion ex(p, n);
    if (d == 0) return RingElem(ex.pres, 1);
    return orbit_from(ex.power(d), static_cast<std::int64_t>(d));
}

namespace {

std::vector<std::vector<std::uint32_t>> ideal_rows(const std::vector<RingElem> &gens, const PresPtr &pres) {
    std::uint64_t rank = *pres->rank();
    std::uint32_t p = pres->characteristic();
    std::vector<std::vector<std::uint32_t>> rows;
    for (std::uint64_t j = 0; j < rank; ++j) {
        std::vector<exactalg::FieldElem> e(rank, exactalg::FieldElem(p, 0));
        e[j] = exactalg::FieldElem(p, 1);
        RingElem mono = RingElem::from_coordinates(pres, e);
        for (const auto &g : gens) {
            RingElem x = g * mono;
            if (!x.is_zero()) rows.push_back(coords_mod_p(x));
        }
    }
    return rows;
}

bool in_span(std::vector<std::vector<std::uint32_t>> rows, std::uint64_t base_rank, const RingElem &x,
             std::uint32_t p) {
    rows.push_back(coords_mod_p(x));
    return exactalg::linalg::rank_mod_p(std::move(rows), p) == base_rank;
}

bool ideals_equal(const std::vector<RingElem> &a, const std::vector<RingElem> &b, const PresPtr &pres) {
    std::uint32_t p = pres->characteristic();
    auto ra = ideal_rows(a, pres);
    auto rb = ideal_rows(b, pres);
    std::uint64_t ka = exactalg::linalg::rank_mod_p(ra, p);
    std::uint64_t kb = exactalg::linalg::rank_mod_p(rb, p);
    for (const auto &x : b)
        if (!in_span(ra, ka, x, p)) return false;
    for (const auto &x : a)
        if (!in_span(rb, kb, x, p)) return false;
    return true;
}

} // namespace

bool inertia_check(std::uint32_t p, unsigned n) {
    if (n < 1) throw OutOfDomain("inertia check needs n >= 1");
    UnExpansion ex(p, n);
    auto S = gamma_pn(p, n);
    std::vector<RingElem> images;
    for (auto d : S.minimal_generators()) images.push_back(orbit_from(ex.power(static_cast<std::uint64_t>(d)), d));
    std::vector<RingElem> expected;
    for (unsigned i = 1; i <= n; ++i)
        expected.push_back(RingElem::var(ex.pres, i - 1).pow(static_cast<std::uint64_t>(ipow(p, n - i))));
    return ideals_equal(images, expected, ex.pres);
}

bool cartier_check(std::uint32_t p, unsigned n) {
    if (n < 1) throw OutOfDomain("Cartier check needs n >= 1");
    auto S = gamma_pn(p, n);
    std::int64_t q = ipow(p, n);
    std::vector<std::int64_t> apery;
    for (std::int64_t a = 0; a < S.conductor() + q; ++a)
        if (S.contains(a) && !S.contains(a - q)) apery.push_back(a);
    if (static_cast<std::int64_t>(apery.size()) != q) return false;
    UnExpansion ex(p, n);
    std::vector<std::vector<std::uint32_t>> rows;
    for (auto a : apery) {
        RingElem img = a == 0 ? RingElem(ex.pres, 1) : orbit_from(ex.power(static_cast<std::uint64_t>(a)), a);
        rows.push_back(coords_mod_p(img));
    }
    return exactalg::linalg::rank_mod_p(rows, p) == apery.size();
}

std::vector<std::int64_t> koszul_series(std::uint32_t p, unsigned n, std::int64_t N) {
    if (N < 0) throw UsageError("negative degree bound");
    std::int64_t q = ipow(p, n);
    std::vector<std::int64_t> c(static_cast<std::size_t>(N + 1), 0);
    c[0] = 1;
    auto mul_one_minus = [&](std::int64_t k) {
        for (std::int64_t i = N; i >= k; --i) c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - k)];
    };
    auto div_one_minus = [&](std::int64_t k) {
        for (std::int64_t i = k; i <= N; ++i) c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - k)];
    };
    for (unsigned j = 0; j < n; ++j) mul_one_minus(static_cast<std::int64_t>(p) * (q - ipow(p, j)));
    div_one_minus(q);
    for (unsigned j = 0; j < n; ++j) div_one_minus(q - ipow(p, j));
    return c;
}

std::int64_t default_hilbert_bound(std::uint32_t p, unsigned n) {
    return gamma_pn(p, n).conductor() + ipow(p, n + 1);
}

bool hilbert_series_check(std::uint32_t p, unsigned n, std::int64_t N) {
    auto S = gamma_pn(p, n);
    if (N < S.conductor()) throw UsageError("degree bound below the conductor");
    auto k = koszul_series(p, n, N);
    auto m = numsemigroup::membership_series(S, N);
    for (std::size_t i = 0; i < k.size(); ++i)
        if (k[i] != static_cast<std::int64_t>(m[i])) return false;
    if (n == 0) return true;
    // x_j -> T^(p^n - p^j), y -> T^(p^n):
    //   x_{n-1}^p = y^(p-1) and x_j^p = x_{n-1}^p x_{j+1}.
    std::int64_t q = ipow(p, n);
    auto a = [&](unsigned j) { return q - ipow(p, j); };
    if (static_cast<std::int64_t>(p) * a(n - 1) != static_cast<std::int64_t>(p - 1) * q) return false;
    for (unsigned j = 0; j + 1 < n; ++j)
        if (static_cast<std::int64_t>(p) * a(j) != static_cast<std::int64_t>(p) * a(n - 1) + a(j + 1)) return false;
    return true;
}

CurveInvariants curve_invariants(std::uint32_t p, unsigned n) {
    if (!exactalg::is_prime(p)) throw UsageError("p must be prime");
    auto S = gamma_pn(p, n);
    auto f = numsemigroup::invariant_formulas(p, n);
    if (f.c != S.conductor() || f.g != S.genus())
        throw ConsistencyError("closed-form conductor/genus disagree with enumeration");
    CurveInvariants inv;
    inv.p = p;
    inv.n = n;
    std::int64_t q = ipow(p, n);
    std::int64_t pp = p, nn = n;
    inv.genus = S.genus();
    inv.conductor = S.conductor();
    inv.spin_exponent = nn * pp - nn - 2;
    inv.deg_omega = q * inv.spin_exponent;
    if (inv.deg_omega != 2 * inv.genus - 2) throw ConsistencyError("deg omega differs from 2g - 2");
    inv.deg_theta = q;
    inv.h0_theta = static_cast<std::int64_t>(S.elements_up_to(q).size());
    inv.proj_degree = q;
    inv.order_Un = static_cast<std::uint64_t>(ipow(p, n * (n + 1) / 2));
    if (q <= 2) inv.flags.push_back("p^n <= 2: excluded case, the curve is the projective line");
    if (q >= 3 && inv.h0_theta != nn + 2) inv.flags.push_back("h0_theta deviates from n+2");
    if (nn * (pp - 1) < 3) inv.flags.push_back("n(p-1) < 3: counting argument hypothesis not met");
    return inv;
}

std::int64_t h0_linear_system(std::uint32_t p, unsigned n, std::int64_t m) {
    auto S = gamma_pn(p, n);
    if (m < 0 || m >= S.conductor()) throw OutOfDomain("degree must satisfy 0 <= m <= c-1");
    return static_cast<std::int64_t>(S.elements_up_to(m).size());
}

NumericalSemigroup search_maximal_semigroup(std::uint32_t p, unsigned n, std::int64_t bound) {
    std::int64_t c = gamma_pn(p, n).conductor();
    if (bound < 2 * c) throw UsageError("bound must be at least twice the conductor");
    bound = std::max<std::int64_t>(bound, 2);
    auto B = static_cast<std::size_t>(bound);

    // Supports for every candidate d in [1, bound): U_n exponents s with
    // d + s < bound, and Ga exponents s with d + s < bound.
    std::vector<std::vector<std::int64_t>> su(B), sg(B);
    {
        UnExpansion ex(p, n);
        LaurentPoly P = LaurentPoly::monomial(RingElem(ex.pres, 1), 0);
        for (std::size_t d = 1; d < B; ++d) {
            P = P * ex.inv;
            for (auto s : P.support())
                if (static_cast<std::int64_t>(d) + s < bound) su[d].push_back(s);
        }
        auto pres = Presentation::Builder{BaseField(p)}.add_free("alpha").build();
        std::vector<RingElem> c1{RingElem(pres, 1), RingElem::var(pres, 0)};
        auto inv = TruncatedSeries::from_coeffs(pres, B, c1).inverse();
        auto Q = TruncatedSeries::from_coeffs(pres, B, {RingElem(pres, 1)});
        for (std::size_t d = 1; d < B; ++d) {
            Q = Q * inv;
            for (std::size_t s = 0; s + d < B; ++s)
                if (!Q.coeff(s).is_zero()) sg[d].push_back(static_cast<std::int64_t>(s));
        }
    }

    std::vector<bool> in(B, true);
    auto member = [&](std::int64_t x) { return x == 0 || (x > 0 && (x >= bound || in[static_cast<std::size_t>(x)])); };
    const std::size_t cap = 4 * B + 16;
    for (std::size_t iter = 0;; ++iter) {
        if (iter > cap) throw ResourceError("maximal-semigroup search did not stabilize");
        std::vector<std::size_t> fail;
        for (std::size_t d = 1; d < B; ++d) {
            if (!in[d]) continue;
            bool ok = true;
            for (auto s : su[d]) ok = ok && member(static_cast<std::int64_t>(d) + s);
            for (auto s : sg[d]) ok = ok && member(static_cast<std::int64_t>(d) + s);
            if (!ok) fail.push_back(d);
        }
        if (fail.empty()) break;
        for (auto d : fail) in[d] = false;
        // Restore closure under addition by dropping the larger summand of
        // any pair whose sum was removed.
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t a = 1; a < B; ++a) {
                if (!in[a]) continue;
                for (std::size_t b = a; a + b < B; ++b) {
                    if (in[b] && !in[a + b]) {
                        in[b] = false;
                        changed = true;
                    }
                }
            }
        }
    }
    std::vector<std::int64_t> gens;
    for (std::int64_t x = 1; x < 2 * bound; ++x)
        if (member(x)) gens.push_back(x);
    auto raw = NumericalSemigroup::from_generators(gens);
    return NumericalSemigroup::from_generators(raw.minimal_generators());
}

std::optional<std::int64_t> search_soundness_counterexample(std::uint32_t p, unsigned n,
                                                            const NumericalSemigroup &S) {
    for (auto x : S.gaps()) {
        auto gens = S.minimal_generators();
        gens.push_back(x);
        auto T = NumericalSemigroup::from_generators(gens);
        if (check_extension_un(p, n, T).pass && check_extension_ga(p, T).pass) return x;
    }
    return std::nullopt;
}

} // namespace uc::curvemodel
