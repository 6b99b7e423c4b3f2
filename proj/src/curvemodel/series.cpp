#include "uc/curvemodel/series.hpp"

#include "uc/errors.hpp"

namespace uc::curvemodel {

LaurentPoly::LaurentPoly(PresPtr pres) : pres_(std::move(pres)) {}

LaurentPoly LaurentPoly::monomial(const RingElem &c, std::int64_t e) {
    LaurentPoly r(c.presentation());
    r.add_term(e, c);
    return r;
}

void LaurentPoly::add_term(std::int64_t e, const RingElem &c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

RingElem LaurentPoly::coeff(std::int64_t e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? RingElem(pres_) : it->second;
}

std::vector<std::int64_t> LaurentPoly::support() const {
    std::vector<std::int64_t> r;
    for (const auto &[e, c] : terms_) r.push_back(e);
    return r;
}

bool LaurentPoly::is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_one(); }

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &o) {
    for (const auto &[e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b) {
    LaurentPoly r(a.pres_);
    for (const auto &[ea, ca] : a.terms_)
        for (const auto &[eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

LaurentPoly LaurentPoly::pow(std::uint64_t e) const {
    LaurentPoly r = monomial(RingElem(pres_, 1), 0);
    LaurentPoly b = *this;
    while (e != 0) {
        if (e & 1U) r = r * b;
        e >>= 1U;
        if (e != 0) b = b * b;
    }
    return r;
}

LaurentPoly LaurentPoly::unipotent_inverse() const {
    if (!coeff(0).is_one()) throw OutOfDomain("expected constant term 1");
    LaurentPoly neg(pres_);
    for (const auto &[e, c] : terms_)
        if (e != 0) neg.add_term(e, -c);
    LaurentPoly sum = monomial(RingElem(pres_, 1), 0);
    LaurentPoly power = sum;
    // (-N)^k eventually vanishes since the coefficients of N are nilpotent.
    std::size_t guard = 0;
    for (;;) {
        power = power * neg;
        if (power.terms_.empty()) break;
        sum += power;
        if (++guard > 100000) throw ResourceError("geometric series did not terminate");
    }
    return sum;
}

TruncatedSeries::TruncatedSeries(PresPtr pres, std::size_t order)
    : pres_(std::move(pres)), order_(order), coeffs_(order, RingElem(pres_)) {}

TruncatedSeries TruncatedSeries::from_coeffs(PresPtr pres, std::size_t order, std::vector<RingElem> c) {
    TruncatedSeries s(std::move(pres), order);
    for (std::size_t i = 0; i < std::min(order, c.size()); ++i) s.coeffs_[i] = c[i];
    return s;
}

TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b) {
    std::size_t n = std::min(a.order_, b.order_);
    TruncatedSeries r(a.pres_, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j)
            if (!b.coeffs_[j].is_zero()) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
}

TruncatedSeries TruncatedSeries::pow(std::uint64_t e) const {
    TruncatedSeries r(pres_, order_);
    if (order_ > 0) r.coeffs_[0] = RingElem(pres_, 1);
    TruncatedSeries b = *this;
    while (e != 0) {
        if (e & 1U) r = r * b;
        e >>= 1U;
        if (e != 0) b = b * b;
    }
    return r;
}

TruncatedSeries TruncatedSeries::inverse() const {
    TruncatedSeries r(pres_, order_);
    if (order_ == 0) return r;
    RingElem c0inv = coeffs_[0].inverse();
    r.coeffs_[0] = c0inv;
    for (std::size_t k = 1; k < order_; ++k) {
        RingElem s(pres_);
        for (std::size_t i = 1; i <= k; ++i)
            if (!coeffs_[i].is_zero() && !r.coeffs_[k - i].is_zero()) s += coeffs_[i] * r.coeffs_[k - i];
        r.coeffs_[k] = -(c0inv * s);
    }
    return r;
}

} // namespace uc::curvemodel
