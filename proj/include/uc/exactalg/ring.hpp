#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uc/exactalg/field.hpp"

namespace uc::exactalg {

inline constexpr std::size_t kMaxVars = 16;

using Mono = std::array<std::uint16_t, kMaxVars>;

struct Term {
    Mono exps{};
    FieldElem coeff;
};

bool mono_less(const Mono &a, const Mono &b);
Mono mono_mul(const Mono &a, const Mono &b);

struct MonoHash {
    std::size_t operator()(const Mono &m) const noexcept;
};

class RingElem;

// Triangular quotient K[v_1..v_k]/(v_i^{d_i} - g_i) where each tail g_i
// lives in the earlier variables. FREE variables carry no relation.
class Presentation {
public:
    struct Var {
        std::string name;
        bool free = true;
        std::uint32_t degree = 0;
        // Tail in normal form over the earlier variables.
        std::vector<Term> tail;
    };

    class Builder {
    public:
        explicit Builder(BaseField base);
        // Starts from an existing presentation and appends variables.
        explicit Builder(const Presentation &prefix);

        Builder &add_free(const std::string &name);
        Builder &add_nilpotent(const std::string &name, std::uint32_t degree);
        // Relation name^degree = tail, with tail parsed over the variables
        // added so far.
        Builder &add_relation(const std::string &name, std::uint32_t degree, const std::string &tail);
        Builder &add_relation(const std::string &name, std::uint32_t degree, const RingElem &tail);

        std::shared_ptr<const Presentation> build() const;
        std::shared_ptr<const Presentation> current() const { return build(); }

    private:
        void check_new_name(const std::string &name) const;

        BaseField base_;
        std::vector<Var> vars_;
    };

    const BaseField &base() const { return base_; }
    std::uint32_t characteristic() const { return base_.characteristic(); }
    const std::vector<Var> &vars() const { return vars_; }
    std::size_t num_vars() const { return vars_.size(); }
    int var_index(const std::string &name) const;

    bool has_free() const;
    // All relations are v^d = 0.
    bool pure_nilpotent() const;
    // Product of the relation degrees; nullopt if a FREE variable exists.
    std::optional<std::uint64_t> rank() const;

    // Same base field and variables with identical relations.
    bool same_as(const Presentation &o) const;
    // o's variables are an initial segment of ours.
    bool extends(const Presentation &o) const;

    std::vector<std::string> var_names() const;

private:
    Presentation() = default;
    friend class Builder;

    BaseField base_;
    std::vector<Var> vars_;
};

using PresPtr = std::shared_ptr<const Presentation>;

// Element of a triangular quotient ring, always kept in normal form.
// Terms are sorted by descending lexicographic order on the variable
// order of the presentation.
class RingElem {
public:
    RingElem() = default;
    explicit RingElem(PresPtr pres);
    RingElem(PresPtr pres, std::int64_t c);
    RingElem(PresPtr pres, FieldElem c);

    static RingElem var(PresPtr pres, std::size_t index);
    static RingElem var(PresPtr pres, const std::string &name);
    static RingElem param(PresPtr pres, const std::string &name);
    // Builds an element from arbitrary (possibly unreduced) terms.
    static RingElem from_terms(PresPtr pres, std::vector<Term> terms);
    static RingElem parse(PresPtr pres, const std::string &text);

    const PresPtr &presentation() const { return pres_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    std::uint32_t characteristic() const;

    FieldElem constant_term() const;
    bool is_constant() const;
    // Coefficient of v_var^exp viewed as a polynomial in v_var.
    RingElem coefficient(std::size_t var, std::uint16_t exp) const;
    bool mentions(std::size_t var) const;
    std::uint16_t degree_in(std::size_t var) const;

    RingElem operator-() const;
    RingElem &operator+=(const RingElem &o);
    RingElem &operator-=(const RingElem &o);
    RingElem &operator*=(const RingElem &o) { return *this = *this * o; }
    friend RingElem operator+(RingElem a, const RingElem &b) { return a += b; }
    friend RingElem operator-(RingElem a, const RingElem &b) { return a -= b; }
    friend RingElem operator*(const RingElem &a, const RingElem &b);
    RingElem scaled(const FieldElem &c) const;

    RingElem pow(std::uint64_t e) const;
    // Signed exponents are accepted for API symmetry; negative ones throw.
    RingElem pow_signed(std::int64_t e) const;
    RingElem frobenius() const;
    RingElem frobenius(unsigned times) const;

    bool is_nilpotent() const;
    bool is_unit() const;
    RingElem inverse() const;

    // Coordinates in the monomial basis of a finite-rank presentation.
    // Mixed radix with the first variable most significant.
    std::vector<FieldElem> monomial_coordinates() const;
    static RingElem from_coordinates(PresPtr pres, const std::vector<FieldElem> &coords);

    // Ring homomorphism sending variable i to images[i]; all images share
    // one target presentation with the same base field.
    RingElem substitute(const std::vector<RingElem> &images) const;
    // Reinterprets the element in a presentation extending ours.
    RingElem lift_to(PresPtr target) const;

    friend bool operator==(const RingElem &a, const RingElem &b);

    std::string to_string() const;

private:
    void check_same(const RingElem &o) const;
    // Mentions only variables whose relation is v^d = 0.
    bool only_nilpotent_vars() const;

    PresPtr pres_;
    std::vector<Term> terms_;
};

// Reduces raw terms to normal form and sorts them.
std::vector<Term> normal_form(const Presentation &pres, std::vector<Term> terms);

// Dense finite-rank multiplication over F_p for pure nilpotent
// presentations. The serial routine is the reference for the OpenMP one.
namespace kernels {
bool dense_applicable(const Presentation &pres, const RingElem &a, const RingElem &b);
std::vector<Term> mul_dense_serial(const Presentation &pres, const std::vector<Term> &a, const std::vector<Term> &b);
std::vector<Term> mul_dense_parallel(const Presentation &pres, const std::vector<Term> &a, const std::vector<Term> &b);
// Generic sparse product with normal-form reduction.
std::vector<Term> mul_sparse(const Presentation &pres, const std::vector<Term> &a, const std::vector<Term> &b);
// Work size above which operator* switches to the parallel kernel.
inline constexpr std::size_t kParallelThreshold = 1U << 16;
} // namespace kernels

} // namespace uc::exactalg
