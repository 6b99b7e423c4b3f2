#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uc/exactalg/field.hpp"

namespace uc::twistforms {

using exactalg::BaseField;
using exactalg::FieldElem;

// Ordinary univariate polynomial over a base field, dense by degree.
struct UPoly {
    BaseField base;
    std::vector<FieldElem> coeffs;

    int degree() const;
    bool is_zero() const { return degree() < 0; }
    // Only exponents p^i occur (no constant term).
    bool is_additive() const;
    std::string to_string(const std::string &var = "u") const;
};

// sum c_i u^(p^i)
struct AdditivePoly {
    BaseField base;
    std::vector<FieldElem> coeffs;

    FieldElem operator()(const FieldElem &u) const;
    UPoly expand() const;
    bool is_zero() const;
    std::string to_string(const std::string &var = "u") const;
};

struct RussellForm {
    std::uint32_t p = 2;
    unsigned level = 1;
    FieldElem alpha;
    std::optional<FieldElem> beta;
    AdditivePoly phi;
    AdditivePoly psi;
};

// Class data as raw labels; equality of classes is not decided.
struct CohomologyIndex {
    std::uint32_t p = 2;
    unsigned level = 1;
    FieldElem alpha_label;
    std::optional<FieldElem> beta_label;
    RussellForm form;
};

UPoly additive_gcd(const AdditivePoly &phi, const AdditivePoly &psi);
bool is_ga_twist(const AdditivePoly &phi, const AdditivePoly &psi);

// Generic form over F_p(alpha) or F_p(alpha, beta).
RussellForm russell_form(std::uint32_t p, unsigned level);
// Form with explicit class data over a given base field.
RussellForm russell_form(const BaseField &base, unsigned level, const FieldElem &alpha,
                         const std::optional<FieldElem> &beta = std::nullopt);
CohomologyIndex cohomology_index(const BaseField &base, unsigned level, const FieldElem &alpha,
                                 const std::optional<FieldElem> &beta = std::nullopt);

// The negative-control switches break the identity on purpose: the
// level-1 control drops y^p = alpha, the level-2 control perturbs u by
// x^(p^2) y, the torsor control drops the lambda_1 y^p term.
bool verify_russell_level1(std::uint32_t p, bool control = false);
bool verify_russell_level2(std::uint32_t p, bool control = false);
bool verify_torsor_action(std::uint32_t p, bool control = false);

FieldElem cohomology_relation_element(const RussellForm &form, const FieldElem &u, const FieldElem &v);

bool is_pth_power_ratfunc(const FieldElem &f, std::uint32_t p);

// Level 1 with alpha = gamma^p: bounded search for (u, v) with
// Phi(u) - Psi(v) = target.
std::optional<std::pair<FieldElem, FieldElem>> trivial_class_witness(const RussellForm &form, const FieldElem &gamma,
                                                                     const FieldElem &target);

} // namespace uc::twistforms
