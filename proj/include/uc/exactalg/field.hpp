#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uc/exactalg/mpoly.hpp"

namespace uc::exactalg {

// F_p when params is empty, otherwise the rational function field
// F_p(t_1, ..., t_m).
class BaseField {
public:
    BaseField() = default;
    BaseField(std::uint32_t p, std::vector<std::string> params = {});

    std::uint32_t characteristic() const { return p_; }
    const std::vector<std::string> &params() const { return params_; }
    bool is_prime_field() const { return params_.empty(); }
    // Index of a parameter name, or -1.
    int param_index(const std::string &name) const;

    friend bool operator==(const BaseField &, const BaseField &) = default;

private:
    std::uint32_t p_ = 2;
    std::vector<std::string> params_;
};

// Element of a BaseField. Elements of F_p are held inline as a residue;
// rational functions are stored as an unreduced fraction num/den and
// compared by cross-multiplication. A full gcd reduction runs once the
// fraction grows past kReduceThreshold terms.
class FieldElem {
public:
    static constexpr std::size_t kReduceThreshold = 12;

    FieldElem() = default;
    FieldElem(std::uint32_t p, std::int64_t c);

    static FieldElem param(std::uint32_t p, std::size_t index);
    static FieldElem fraction(MPoly num, MPoly den);

    std::uint32_t characteristic() const { return p_; }
    bool is_zero() const { return frac_ ? num_.is_zero() : c_ == 0; }
    bool is_one() const;
    // True iff the element lies in F_p.
    bool is_scalar() const { return !frac_; }
    std::uint32_t scalar() const;

    MPoly numerator() const;
    MPoly denominator() const;

    FieldElem operator-() const;
    friend FieldElem operator+(const FieldElem &a, const FieldElem &b);
    friend FieldElem operator-(const FieldElem &a, const FieldElem &b);
    friend FieldElem operator*(const FieldElem &a, const FieldElem &b);
    friend FieldElem operator/(const FieldElem &a, const FieldElem &b);
    FieldElem &operator+=(const FieldElem &o) { return *this = *this + o; }
    FieldElem &operator-=(const FieldElem &o) { return *this = *this - o; }
    FieldElem &operator*=(const FieldElem &o) { return *this = *this * o; }

    FieldElem inverse() const;
    FieldElem pow(std::uint64_t e) const;
    FieldElem frobenius() const;
    // Lowest-terms representative: gcd removed, monic denominator.
    FieldElem reduced() const;

    // Cross-multiplication equality.
    friend bool operator==(const FieldElem &a, const FieldElem &b);

    std::string to_string(const std::vector<std::string> &names) const;
    // True when the printed form needs parentheses inside a product.
    bool is_compound() const;

private:
    void normalize(bool force_gcd);

    std::uint32_t p_ = 2;
    bool frac_ = false;
    std::uint32_t c_ = 0;
    MPoly num_, den_;
};

} // namespace uc::exactalg
