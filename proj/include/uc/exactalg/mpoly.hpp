#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uc::exactalg {

inline constexpr std::size_t kMaxParams = 6;

using ParamExps = std::array<std::uint32_t, kMaxParams>;

struct PTerm {
    ParamExps exps{};
    std::uint32_t coeff = 0;

    friend bool operator==(const PTerm &, const PTerm &) = default;
};

// Multivariate polynomial over F_p in the transcendental parameters of a
// base field. Terms are kept sorted by descending lexicographic exponent
// order with nonzero coefficients, so structural equality is equality.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(std::uint32_t p) : p_(p) {}

    static MPoly constant(std::uint32_t p, std::int64_t c);
    static MPoly variable(std::uint32_t p, std::size_t index);
    static MPoly from_terms(std::uint32_t p, std::vector<PTerm> terms);

    std::uint32_t characteristic() const { return p_; }
    const std::vector<PTerm> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Value of a constant polynomial (0 for the zero polynomial).
    std::uint32_t constant_value() const;
    std::uint32_t leading_coeff() const { return terms_.empty() ? 0 : terms_.front().coeff; }

    std::uint32_t degree_in(std::size_t var) const;
    // Largest parameter index with a positive exponent, or -1.
    int max_var() const;

    MPoly operator-() const;
    MPoly &operator+=(const MPoly &o);
    MPoly &operator-=(const MPoly &o);
    friend MPoly operator+(MPoly a, const MPoly &b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly &b) { return a -= b; }
    friend MPoly operator*(const MPoly &a, const MPoly &b);

    MPoly scaled(std::uint32_t c) const;
    MPoly pow(std::uint64_t e) const;
    // f(t_1..t_m)^p, computed termwise since F_p has trivial Frobenius.
    MPoly frobenius() const;
    // Divides by the leading coefficient.
    MPoly monic() const;
    // Largest monomial dividing every term.
    ParamExps monomial_content() const;
    MPoly divide_monomial(const ParamExps &m) const;

    friend bool operator==(const MPoly &, const MPoly &) = default;

    std::string to_string(const std::vector<std::string> &names) const;

private:
    void normalize();

    std::uint32_t p_ = 0;
    std::vector<PTerm> terms_;
};

// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<MPoly> divide_exact(const MPoly &a, const MPoly &b);

// Monic greatest common divisor (primitive PRS on the recursive
// univariate view). gcd(0, 0) = 0.
MPoly gcd(const MPoly &a, const MPoly &b);

bool exps_less(const ParamExps &a, const ParamExps &b);

} // namespace uc::exactalg
