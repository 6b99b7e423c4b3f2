#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uc/exactalg/ring.hpp"
#include "uc/skewpoly/skewpoly.hpp"

namespace uc::ugroup {

using exactalg::PresPtr;
using exactalg::RingElem;
using skewpoly::RingMatrix;
using skewpoly::SkewPoly;

inline constexpr std::uint64_t kDefaultMaxRank = 1000000;

// Point 1 + sum lambda_i F^i of U_n(R), lambda_i^(p^(n-i+1)) = 0.
class UnElement {
public:
    // Validates the defining constraints; throws OutOfDomain otherwise.
    UnElement(PresPtr pres, std::vector<RingElem> lambdas);

    static UnElement identity(PresPtr pres, unsigned n);
    // Reads back a skew polynomial; a violated constraint signals a bug.
    static UnElement from_skew(const SkewPoly &s, unsigned n);

    unsigned level() const { return static_cast<unsigned>(lambdas_.size()); }
    const PresPtr &presentation() const { return pres_; }
    const std::vector<RingElem> &lambdas() const { return lambdas_; }
    // lambda_i for 1 <= i <= n, and lambda_0 = 1.
    RingElem lambda(unsigned i) const;
    bool is_identity() const;

    SkewPoly to_skew() const;
    UnElement lift_to(PresPtr target) const;

    friend bool operator==(const UnElement &a, const UnElement &b);

private:
    UnElement() = default;

    PresPtr pres_;
    std::vector<RingElem> lambdas_;
};

UnElement un_mul(const UnElement &x, const UnElement &y);
UnElement un_inverse(const UnElement &x);
// (lambda_1^p, ..., lambda_{n-1}^p) in U_{n-1}, after checking lambda_n^p = 0.
UnElement frobenius_map(const UnElement &x);
// Matrix of Ad(P^{-1}) on the basis e_1..e_n: entry (r, s) is
// lambda_{r-s}^(p^s) for r >= s.
RingMatrix adjoint_matrix(const UnElement &x);
// The same matrix computed by conjugating 1 + eps F^s, eps^2 = 0.
RingMatrix adjoint_by_conjugation(const UnElement &x);
// Membership in G_r: lambda_i = 0 for 1 <= i <= n - r.
bool central_member(const UnElement &x, unsigned r);

// Generic points adjoined as fresh nilpotent variables to one presentation.
struct GenericSpec {
    std::string prefix;
    // Members of G_r; r = n gives all of U_n.
    unsigned r = 0;
};

struct UniversalRing {
    PresPtr pres;
    std::vector<UnElement> points;
};

// Universal ring over F_p carrying one generic point per spec.
UniversalRing universal_ring(std::uint32_t p, unsigned n, const std::vector<GenericSpec> &specs,
                             std::uint64_t max_rank = kDefaultMaxRank);
UniversalRing universal_ring(std::uint32_t p, unsigned n, unsigned count, std::uint64_t max_rank = kDefaultMaxRank);

// log_p of the order of G_r, read off the rank of its coordinate ring.
std::uint64_t order_exponent_G(std::uint32_t p, unsigned n, unsigned r);

struct CheckResult {
    std::string name;
    unsigned r = 0;
    bool pass = false;
    std::string message;
};

struct CentralSeriesReport {
    std::uint32_t p = 0;
    unsigned n = 0;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

// Upper bound: for generic x in G_r and y in U_n, [x, y] lies in G_{r-1}.
// Strictness: for generic x in G_{r+1} and y in U_n, [x, y] is not in
// G_{r-1} (for r = 0: x is not the identity). Orders: |G_{r+1}|/|G_r| =
// p^(r+1).
CentralSeriesReport verify_central_series(std::uint32_t p, unsigned n, std::uint64_t max_rank = kDefaultMaxRank);

// a = 1 - alpha F, b = 1 - beta F^s - gamma F^(s+1): checks
// a b a^-1 b^-1 = 1 + (alpha beta^p - beta alpha^(p^s)) F^(s+1) mod F^(s+2).
bool commutator_formula_check(std::uint32_t p, unsigned n, unsigned s);

// Point of Ga x| U_n x| Gm acting by x -> m * P_u(x) + a.
struct GroupElement {
    RingElem a;
    UnElement u;
    RingElem m;

    static GroupElement identity(PresPtr pres, unsigned n);
};

// Additive evaluation sum lambda_i v^(p^i).
RingElem apply_additive(const SkewPoly &s, const RingElem &v);
// Act by g, then by h: phi_{compose(g,h)} = phi_g o phi_h.
GroupElement compose(const GroupElement &g, const GroupElement &h);
GroupElement group_inverse(const GroupElement &g);
bool operator==(const GroupElement &g, const GroupElement &h);
// q(x) * g = q(m P(x) + a); q lives in a presentation extending g's ring by
// one free variable, named by x_index.
RingElem act_on_polynomial(const GroupElement &g, const RingElem &q, std::size_t x_index);

} // namespace uc::ugroup
