#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "uc/exactalg/ring.hpp"

namespace uc::curvemodel {

using exactalg::PresPtr;
using exactalg::RingElem;

// Finite-support Laurent polynomial in T over a quotient ring.
class LaurentPoly {
public:
    explicit LaurentPoly(PresPtr pres);
    static LaurentPoly monomial(const RingElem &c, std::int64_t e);

    const PresPtr &presentation() const { return pres_; }
    const std::map<std::int64_t, RingElem> &terms() const { return terms_; }
    RingElem coeff(std::int64_t e) const;
    std::vector<std::int64_t> support() const;
    bool is_one() const;

    LaurentPoly &operator+=(const LaurentPoly &o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b) { return a += b; }
    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b);
    LaurentPoly pow(std::uint64_t e) const;
    // Inverse of 1 + N with every coefficient of N nilpotent, by the
    // terminating geometric series.
    LaurentPoly unipotent_inverse() const;

private:
    void add_term(std::int64_t e, const RingElem &c);

    PresPtr pres_;
    std::map<std::int64_t, RingElem> terms_;
};

// Power series in T known exactly below the truncation order.
class TruncatedSeries {
public:
    TruncatedSeries(PresPtr pres, std::size_t order);
    static TruncatedSeries from_coeffs(PresPtr pres, std::size_t order, std::vector<RingElem> c);

    std::size_t order() const { return order_; }
    const std::vector<RingElem> &coeffs() const { return coeffs_; }
    const RingElem &coeff(std::size_t i) const { return coeffs_.at(i); }

    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b);
    TruncatedSeries pow(std::uint64_t e) const;
    // Needs a unit constant term.
    TruncatedSeries inverse() const;

private:
    PresPtr pres_;
    std::size_t order_;
    std::vector<RingElem> coeffs_;
};

} // namespace uc::curvemodel
