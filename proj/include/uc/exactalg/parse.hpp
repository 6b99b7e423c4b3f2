#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uc/exactalg/ring.hpp"

namespace uc::exactalg {

// Expression tree for the textual polynomial syntax:
// sums, products (explicit or implicit), integer powers, parentheses,
// integer literals and identifiers.
struct Expr {
    enum class Kind { Num, Ident, Add, Sub, Mul, Div, Pow, Neg };
    Kind kind = Kind::Num;
    std::int64_t num = 0;
    std::string name;
    std::vector<Expr> kids;
};

Expr parse_expr(const std::string &text);

RingElem eval_ring(const PresPtr &pres, const Expr &e);
RingElem parse_ring(const PresPtr &pres, const std::string &text);

// Evaluates in the base field itself; identifiers must be parameters.
FieldElem eval_field(const BaseField &base, const Expr &e);
FieldElem parse_field(const BaseField &base, const std::string &text);

} // namespace uc::exactalg
