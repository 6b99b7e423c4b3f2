#include "uc/exactalg/field.hpp"

#include <algorithm>

#include "uc/errors.hpp"
#include "uc/exactalg/modp.hpp"

namespace uc::exactalg {

BaseField::BaseField(std::uint32_t p, std::vector<std::string> params) : p_(p), params_(std::move(params)) {
    if (!is_prime(p)) throw UsageError("characteristic " + std::to_string(p) + " is not prime");
    if (params_.size() > kMaxParams) throw Unsupported("at most " + std::to_string(kMaxParams) + " parameters");
}

int BaseField::param_index(const std::string &name) const {
    auto it = std::find(params_.begin(), params_.end(), name);
    return it == params_.end() ? -1 : static_cast<int>(it - params_.begin());
}

FieldElem::FieldElem(std::uint32_t p, std::int64_t c) : p_(p), c_(reduce_mod(c, p)) {}

FieldElem FieldElem::param(std::uint32_t p, std::size_t index) {
    return fraction(MPoly::variable(p, index), MPoly::constant(p, 1));
}

FieldElem FieldElem::fraction(MPoly num, MPoly den) {
    if (den.is_zero()) throw NotInvertible("zero denominator");
    FieldElem r;
    r.p_ = den.characteristic();
    r.frac_ = true;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.normalize(false);
    return r;
}

bool FieldElem::is_one() const {
    if (!frac_) return c_ == 1 % p_;
    return num_ == den_;
}

std::uint32_t FieldElem::scalar() const {
    if (frac_) throw ConsistencyError("field element is not in F_p");
    return c_;
}

MPoly FieldElem::numerator() const { return frac_ ? num_ : MPoly::constant(p_, c_); }
MPoly FieldElem::denominator() const { return frac_ ? den_ : MPoly::constant(p_, 1); }

void FieldElem::normalize(bool force_gcd) {
    if (!frac_) return;
    if (num_.is_zero()) {
        *this = FieldElem(p_, 0);
        return;
    }
    if (den_.is_constant()) {
        num_ = num_.scaled(inv_mod(den_.constant_value(), p_));
        den_ = MPoly::constant(p_, 1);
    } else {
        // Cancel the common monomial factor and make the denominator monic;
        // both are cheap and keep representatives small.
        auto mn = num_.monomial_content();
        auto md = den_.monomial_content();
        ParamExps common{};
        bool any = false;
        for (std::size_t k = 0; k < kMaxParams; ++k) {
            common[k] = std::min(mn[k], md[k]);
            any = any || common[k] != 0;
        }
        if (any) {
            num_ = num_.divide_monomial(common);
            den_ = den_.divide_monomial(common);
        }
        auto lc_inv = inv_mod(den_.leading_coeff(), p_);
        num_ = num_.scaled(lc_inv);
        den_ = den_.scaled(lc_inv);
        if (force_gcd || num_.size() + den_.size() > kReduceThreshold) {
            auto g = gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = *divide_exact(num_, g);
                den_ = *divide_exact(den_, g);
                lc_inv = inv_mod(den_.leading_coeff(), p_);
                num_ = num_.scaled(lc_inv);
                den_ = den_.scaled(lc_inv);
            }
        }
        if (num_ == den_) {
            *this = FieldElem(p_, 1);
            return;
        }
    }
    if (den_.is_constant() && num_.is_constant()) {
        auto v = num_.constant_value();
        *this = FieldElem(p_, v);
    }
}

FieldElem FieldElem::operator-() const {
    if (!frac_) return FieldElem(p_, neg_mod(c_, p_));
    FieldElem r = *this;
    r.num_ = -r.num_;
    return r;
}

FieldElem operator+(const FieldElem &a, const FieldElem &b) {
    if (!a.frac_ && !b.frac_) return FieldElem(a.p_, add_mod(a.c_, b.c_, a.p_));
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    auto an = a.numerator(), ad = a.denominator();
    auto bn = b.numerator(), bd = b.denominator();
    if (ad == bd) return FieldElem::fraction(an + bn, ad);
    return FieldElem::fraction(an * bd + bn * ad, ad * bd);
}

FieldElem operator-(const FieldElem &a, const FieldElem &b) { return a + (-b); }

FieldElem operator*(const FieldElem &a, const FieldElem &b) {
    if (!a.frac_ && !b.frac_) return FieldElem(a.p_, mul_mod(a.c_, b.c_, a.p_));
    if (a.is_zero() || b.is_zero()) return FieldElem(a.p_, 0);
    if (!a.frac_) {
        FieldElem r = b;
        r.num_ = r.num_.scaled(a.c_);
        return r;
    }
    if (!b.frac_) {
        FieldElem r = a;
        r.num_ = r.num_.scaled(b.c_);
        return r;
    }
    return FieldElem::fraction(a.num_ * b.num_, a.den_ * b.den_);
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw NotInvertible("zero field element");
    if (!frac_) return FieldElem(p_, inv_mod(c_, p_));
    return fraction(den_, num_);
}

FieldElem operator/(const FieldElem &a, const FieldElem &b) { return a * b.inverse(); }

FieldElem FieldElem::pow(std::uint64_t e) const {
    if (!frac_) return FieldElem(p_, pow_mod(c_, e, p_));
    return fraction(num_.pow(e), den_.pow(e));
}

FieldElem FieldElem::frobenius() const {
    if (!frac_) return *this;
    return fraction(num_.frobenius(), den_.frobenius());
}

FieldElem FieldElem::reduced() const {
    FieldElem r = *this;
    r.normalize(true);
    return r;
}

bool operator==(const FieldElem &a, const FieldElem &b) {
    if (!a.frac_ && !b.frac_) return a.c_ == b.c_;
    if (a.frac_ != b.frac_) {
        // Unreduced fractions such as c*d/d can still equal a scalar.
        const FieldElem &f = a.frac_ ? a : b;
        const FieldElem &c = a.frac_ ? b : a;
        return f.num_ == f.den_.scaled(c.c_);
    }
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

bool FieldElem::is_compound() const {
    if (!frac_) return false;
    return !den_.is_constant() || num_.size() > 1 || (num_.size() == 1 && num_.terms()[0].coeff != 1);
}

std::string FieldElem::to_string(const std::vector<std::string> &names) const {
    if (!frac_) return std::to_string(c_);
    if (den_.is_constant()) return num_.to_string(names);
    std::string n = num_.to_string(names), d = den_.to_string(names);
    if (num_.size() > 1) n = "(" + n + ")";
    if (den_.size() > 1 || d.find('*') != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
}

} // namespace uc::exactalg
