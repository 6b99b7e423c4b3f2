#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uc/curvemodel/series.hpp"
#include "uc/numsemigroup/numsemigroup.hpp"

namespace uc::curvemodel {

using numsemigroup::NumericalSemigroup;

// Gamma(O_{U_n}) = F_p[l1..ln]/(l_i^(p^(n-i+1))).
PresPtr un_coordinate_ring(std::uint32_t p, unsigned n);

// (1 + sum l_i T^(1-p^i))^(-d) over Gamma(O_{U_n}); certified by
// multiplying back with the d-th power of the base.
LaurentPoly inverse_power_laurent(std::uint32_t p, unsigned n, std::uint64_t d);

struct Verdict {
    bool pass = true;
    // Offending generator and exponent on failure.
    std::int64_t d = 0;
    std::int64_t s = 0;
};

Verdict check_extension_un(std::uint32_t p, unsigned n, const NumericalSemigroup &S);

// Coefficients of (1 + alpha T)^(-d) below `order`, as multiples of alpha^s.
TruncatedSeries ga_series(std::uint32_t p, std::uint64_t d, std::size_t order);
// (-1)^s binom(d+s-1, s) mod p via Lucas' theorem.
std::uint32_t ga_coefficient_lucas(std::uint32_t p, std::uint64_t d, std::uint64_t s);
Verdict check_extension_ga(std::uint32_t p, const NumericalSemigroup &S);

// Coefficient of T^0 in T^d (1 + sum l_i T^(1-p^i))^(-d), d in Gamma_{p,n}.
RingElem orbit_map(std::uint32_t p, unsigned n, std::uint64_t d);

bool inertia_check(std::uint32_t p, unsigned n);
bool cartier_check(std::uint32_t p, unsigned n);

// Koszul series of the claimed complete intersection against the
// semigroup membership series up to degree N, plus exponent checks of the
// defining relations.
bool hilbert_series_check(std::uint32_t p, unsigned n, std::int64_t N);
// Coefficients of the Koszul quotient up to degree N.
std::vector<std::int64_t> koszul_series(std::uint32_t p, unsigned n, std::int64_t N);
std::int64_t default_hilbert_bound(std::uint32_t p, unsigned n);

struct CurveInvariants {
    std::uint32_t p = 0;
    unsigned n = 0;
    std::int64_t genus = 0;
    std::int64_t conductor = 0;
    std::int64_t deg_omega = 0;
    std::int64_t deg_theta = 0;
    std::int64_t h0_theta = 0;
    std::int64_t proj_degree = 0;
    std::int64_t spin_exponent = 0;
    std::uint64_t order_Un = 0;
    // Notes such as the excluded case p^n <= 2 or an h0 count off n+2.
    std::vector<std::string> flags;
};

CurveInvariants curve_invariants(std::uint32_t p, unsigned n);

std::int64_t h0_linear_system(std::uint32_t p, unsigned n, std::int64_t m);

// Greatest fixed point of the removal iteration on [1, bound).
NumericalSemigroup search_maximal_semigroup(std::uint32_t p, unsigned n, std::int64_t bound);

// Elements below the conductor whose single addition breaks a check;
// returns the first element that does not, if any.
std::optional<std::int64_t> search_soundness_counterexample(std::uint32_t p, unsigned n, const NumericalSemigroup &S);

} // namespace uc::curvemodel
