#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uc/exactalg/ring.hpp"

namespace uc::skewpoly {

using exactalg::PresPtr;
using exactalg::RingElem;

using RingMatrix = std::vector<std::vector<RingElem>>;

// Sum of coeffs[i] * F^i in R[F; sigma], where F r = r^p F. Coefficients
// are dense; trailing zeros are trimmed.
class SkewPoly {
public:
    SkewPoly() = default;
    explicit SkewPoly(PresPtr pres);
    SkewPoly(PresPtr pres, std::vector<RingElem> coeffs);

    static SkewPoly constant(const RingElem &c);
    static SkewPoly one(PresPtr pres);
    // F^k.
    static SkewPoly frob(PresPtr pres, std::size_t k = 1);
    static SkewPoly parse(PresPtr pres, const std::string &text);

    const PresPtr &presentation() const { return pres_; }
    const std::vector<RingElem> &coeffs() const { return coeffs_; }
    // Coefficient of F^i (zero past the degree).
    RingElem coeff(std::size_t i) const;
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;

    SkewPoly operator-() const;
    friend SkewPoly operator+(const SkewPoly &a, const SkewPoly &b);
    friend SkewPoly operator-(const SkewPoly &a, const SkewPoly &b);
    friend SkewPoly operator*(const SkewPoly &a, const SkewPoly &b);
    friend bool operator==(const SkewPoly &a, const SkewPoly &b);

    // Drops every F^i with i >= k.
    SkewPoly truncated(std::size_t k) const;
    SkewPoly pow(std::uint64_t e) const;

    // "1 + a*F + b*F^2"; the additive mode prints a*x^(p^i) instead.
    std::string to_string(bool additive = false) const;

private:
    void trim();
    void check_same(const SkewPoly &o) const;

    PresPtr pres_;
    std::vector<RingElem> coeffs_;
};

SkewPoly skew_mul(const SkewPoly &a, const SkewPoly &b);
SkewPoly skew_inverse(const SkewPoly &a);
bool is_nilpotent_skew(const SkewPoly &a);
bool is_unit_skew(const SkewPoly &a);
RingMatrix matrix_rep(const SkewPoly &a, std::size_t d);
RingMatrix matrix_mul(const RingMatrix &a, const RingMatrix &b);
// Largest d with a in Fil^d; nullopt means infinity (a = 1).
std::optional<std::size_t> fil_level(const SkewPoly &a);
// mu * a * mu^{-1} for a unit mu of the coefficient ring.
SkewPoly conjugate_by_unit(const SkewPoly &a, const RingElem &mu);

// Nilpotency bound N for the coefficient ring: every nilpotent x has x^N = 0.
std::uint64_t nilpotency_bound(const exactalg::Presentation &pres);

} // namespace uc::skewpoly
