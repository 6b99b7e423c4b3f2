#include "uc/exactalg/parse.hpp"

#include <cctype>

#include "uc/errors.hpp"

namespace uc::exactalg {

namespace {

class Parser {
public:
    explicit Parser(const std::string &s) : s_(s) {}

    Expr run() {
        Expr e = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    bool starts_factor() {
        char c = peek();
        return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '(';
    }

    Expr sum() {
        Expr e = product();
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') return e;
            ++pos_;
            Expr r = product();
            Expr n;
            n.kind = c == '+' ? Expr::Kind::Add : Expr::Kind::Sub;
            n.kids = {std::move(e), std::move(r)};
            e = std::move(n);
        }
    }

    Expr product() {
        Expr e = unary();
        for (;;) {
            char c = peek();
            Expr::Kind k;
            if (c == '*') {
                ++pos_;
                k = Expr::Kind::Mul;
            } else if (c == '/') {
                ++pos_;
                k = Expr::Kind::Div;
            } else if (starts_factor()) {
                k = Expr::Kind::Mul;
            } else {
                return e;
            }
            Expr r = unary();
            Expr n;
            n.kind = k;
            n.kids = {std::move(e), std::move(r)};
            e = std::move(n);
        }
    }

    Expr unary() {
        if (peek() == '-') {
            ++pos_;
            Expr n;
            n.kind = Expr::Kind::Neg;
            n.kids = {unary()};
            return n;
        }
        if (peek() == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (peek() != '^') return base;
        ++pos_;
        bool paren = false;
        if (peek() == '(') {
            paren = true;
            ++pos_;
        }
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
        std::int64_t v = number();
        if (paren) {
            if (peek() != ')') fail("expected ')'");
            ++pos_;
        }
        Expr n;
        n.kind = Expr::Kind::Pow;
        n.num = neg ? -v : v;
        n.kids = {std::move(base)};
        return n;
    }

    std::int64_t number() {
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (v > (INT64_MAX - 9) / 10) fail("integer literal too large");
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    Expr atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Expr e = sum();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Expr e;
            e.kind = Expr::Kind::Num;
            e.num = number();
            return e;
        }
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
            Expr e;
            e.kind = Expr::Kind::Ident;
            e.name = s_.substr(start, pos_ - start);
            return e;
        }
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string &s_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse_expr(const std::string &text) { return Parser(text).run(); }

RingElem eval_ring(const PresPtr &pres, const Expr &e) {
    switch (e.kind) {
    case Expr::Kind::Num:
        return RingElem(pres, e.num);
    case Expr::Kind::Ident:
        if (pres->var_index(e.name) >= 0) return RingElem::var(pres, e.name);
        if (pres->base().param_index(e.name) >= 0) return RingElem::param(pres, e.name);
        throw PresentationMismatch("unknown variable: " + e.name);
    case Expr::Kind::Add:
        return eval_ring(pres, e.kids[0]) + eval_ring(pres, e.kids[1]);
    case Expr::Kind::Sub:
        return eval_ring(pres, e.kids[0]) - eval_ring(pres, e.kids[1]);
    case Expr::Kind::Mul:
        return eval_ring(pres, e.kids[0]) * eval_ring(pres, e.kids[1]);
    case Expr::Kind::Neg:
        return -eval_ring(pres, e.kids[0]);
    case Expr::Kind::Div: {
        RingElem d = eval_ring(pres, e.kids[1]);
        if (!d.is_constant()) throw Unsupported("division by a non-constant ring element");
        if (d.is_zero()) throw NotInvertible("division by zero");
        return eval_ring(pres, e.kids[0]).scaled(d.constant_term().inverse());
    }
    case Expr::Kind::Pow:
        return eval_ring(pres, e.kids[0]).pow_signed(e.num);
    }
    throw ParseError("bad expression");
}

RingElem parse_ring(const PresPtr &pres, const std::string &text) { return eval_ring(pres, parse_expr(text)); }

FieldElem eval_field(const BaseField &base, const Expr &e) {
    std::uint32_t p = base.characteristic();
    switch (e.kind) {
    case Expr::Kind::Num:
        return FieldElem(p, e.num);
    case Expr::Kind::Ident: {
        int i = base.param_index(e.name);
        if (i < 0) throw PresentationMismatch("unknown parameter: " + e.name);
        return FieldElem::param(p, static_cast<std::size_t>(i));
    }
    case Expr::Kind::Add:
        return eval_field(base, e.kids[0]) + eval_field(base, e.kids[1]);
    case Expr::Kind::Sub:
        return eval_field(base, e.kids[0]) - eval_field(base, e.kids[1]);
    case Expr::Kind::Mul:
        return eval_field(base, e.kids[0]) * eval_field(base, e.kids[1]);
    case Expr::Kind::Neg:
        return -eval_field(base, e.kids[0]);
    case Expr::Kind::Div:
        return eval_field(base, e.kids[0]) / eval_field(base, e.kids[1]);
    case Expr::Kind::Pow: {
        FieldElem b = eval_field(base, e.kids[0]);
        if (e.num < 0) return b.inverse().pow(static_cast<std::uint64_t>(-e.num));
        return b.pow(static_cast<std::uint64_t>(e.num));
    }
    }
    throw ParseError("bad expression");
}

FieldElem parse_field(const BaseField &base, const std::string &text) { return eval_field(base, parse_expr(text)); }

} // namespace uc::exactalg
