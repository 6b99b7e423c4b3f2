#include "uc/skewpoly/skewpoly.hpp"

#include "uc/errors.hpp"
#include "uc/exactalg/parse.hpp"

namespace uc::skewpoly {

using exactalg::Expr;

SkewPoly::SkewPoly(PresPtr pres) : pres_(std::move(pres)) {
    if (!pres_) throw UsageError("null presentation");
}

SkewPoly::SkewPoly(PresPtr pres, std::vector<RingElem> coeffs) : pres_(std::move(pres)), coeffs_(std::move(coeffs)) {
    if (!pres_) throw UsageError("null presentation");
    for (const auto &c : coeffs_)
        if (c.presentation() != pres_ && !c.presentation()->same_as(*pres_))
            throw PresentationMismatch("coefficient from another ring");
    trim();
}

SkewPoly SkewPoly::constant(const RingElem &c) { return SkewPoly(c.presentation(), {c}); }

SkewPoly SkewPoly::one(PresPtr pres) {
    RingElem c(pres, 1);
    return SkewPoly(std::move(pres), {c});
}

SkewPoly SkewPoly::frob(PresPtr pres, std::size_t k) {
    std::vector<RingElem> c(k + 1, RingElem(pres));
    c[k] = RingElem(pres, 1);
    return SkewPoly(std::move(pres), std::move(c));
}

void SkewPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

void SkewPoly::check_same(const SkewPoly &o) const {
    if (pres_ != o.pres_ && !pres_->same_as(*o.pres_))
        throw PresentationMismatch("skew polynomials over different rings");
}

RingElem SkewPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : RingElem(pres_); }

bool SkewPoly::is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }

SkewPoly SkewPoly::operator-() const {
    SkewPoly r = *this;
    for (auto &c : r.coeffs_) c = -c;
    return r;
}

SkewPoly operator+(const SkewPoly &a, const SkewPoly &b) {
    a.check_same(b);
    std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    std::vector<RingElem> c;
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(i) + b.coeff(i));
    return SkewPoly(a.pres_, std::move(c));
}

SkewPoly operator-(const SkewPoly &a, const SkewPoly &b) { return a + (-b); }

SkewPoly operator*(const SkewPoly &a, const SkewPoly &b) {
    a.check_same(b);
    if (a.is_zero() || b.is_zero()) return SkewPoly(a.pres_);
    std::size_t n = a.coeffs_.size() + b.coeffs_.size() - 1;
    std::vector<RingElem> c(n, RingElem(a.pres_));
    // twisted[j] holds b_j^(p^i) for the current i.
    std::vector<RingElem> twisted = b.coeffs_;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (i > 0)
            for (auto &t : twisted) t = t.frobenius();
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < twisted.size(); ++j)
            if (!twisted[j].is_zero()) c[i + j] += a.coeffs_[i] * twisted[j];
    }
    return SkewPoly(a.pres_, std::move(c));
}

bool operator==(const SkewPoly &a, const SkewPoly &b) {
    a.check_same(b);
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
    return true;
}

SkewPoly SkewPoly::truncated(std::size_t k) const {
    std::vector<RingElem> c(coeffs_.begin(), coeffs_.begin() + std::min(k, coeffs_.size()));
    return SkewPoly(pres_, std::move(c));
}

SkewPoly SkewPoly::pow(std::uint64_t e) const {
    SkewPoly r = one(pres_);
    SkewPoly b = *this;
    while (e != 0) {
        if (e & 1U) r = r * b;
        e >>= 1U;
        if (e != 0) b = b * b;
    }
    return r;
}

namespace {

std::string wrap(const std::string &s) {
    if (s.find(' ') != std::string::npos || s.find('/') != std::string::npos) return "(" + s + ")";
    return s;
}

} // namespace

std::string SkewPoly::to_string(bool additive) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    std::uint64_t pk = 1;
    std::uint32_t p = pres_->characteristic();
    for (std::size_t i = 0; i < coeffs_.size(); ++i, pk *= p) {
        if (coeffs_[i].is_zero()) continue;
        std::string mono;
        if (additive) {
            mono = pk == 1 ? "x" : "x^" + std::to_string(pk);
        } else if (i > 0) {
            mono = i == 1 ? "F" : "F^" + std::to_string(i);
        }
        std::string c = coeffs_[i].to_string();
        std::string piece;
        if (mono.empty())
            piece = c;
        else if (coeffs_[i].is_one())
            piece = mono;
        else
            piece = wrap(c) + "*" + mono;
        if (!out.empty()) out += " + ";
        out += piece;
    }
    return out;
}

namespace {

SkewPoly eval_skew(const PresPtr &pres, const Expr &e) {
    switch (e.kind) {
    case Expr::Kind::Num:
        return SkewPoly::constant(RingElem(pres, e.num));
    case Expr::Kind::Ident:
        if (e.name == "F" && pres->var_index("F") < 0 && pres->base().param_index("F") < 0)
            return SkewPoly::frob(pres, 1);
        return SkewPoly::constant(exactalg::eval_ring(pres, e));
    case Expr::Kind::Add:
        return eval_skew(pres, e.kids[0]) + eval_skew(pres, e.kids[1]);
    case Expr::Kind::Sub:
        return eval_skew(pres, e.kids[0]) - eval_skew(pres, e.kids[1]);
    case Expr::Kind::Mul:
        return eval_skew(pres, e.kids[0]) * eval_skew(pres, e.kids[1]);
    case Expr::Kind::Neg:
        return -eval_skew(pres, e.kids[0]);
    case Expr::Kind::Div: {
        // Right multiplication by the inverse of a base-field constant.
        RingElem d = exactalg::eval_ring(pres, e.kids[1]);
        if (!d.is_constant() || d.is_zero()) throw Unsupported("skew division only by nonzero constants");
        return eval_skew(pres, e.kids[0]) * SkewPoly::constant(RingElem(pres, d.constant_term().inverse()));
    }
    case Expr::Kind::Pow:
        if (e.num < 0) throw Unsupported("negative power of a skew polynomial");
        return eval_skew(pres, e.kids[0]).pow(static_cast<std::uint64_t>(e.num));
    }
    throw ParseError("bad expression");
}

} // namespace

SkewPoly SkewPoly::parse(PresPtr pres, const std::string &text) {
    return eval_skew(pres, exactalg::parse_expr(text));
}

SkewPoly skew_mul(const SkewPoly &a, const SkewPoly &b) { return a * b; }

std::uint64_t nilpotency_bound(const exactalg::Presentation &pres) {
    std::uint64_t bound = 1;
    bool monomial = true;
    for (const auto &v : pres.vars()) {
        if (v.free) throw Unsupported("nilpotency bound needs a finite-rank ring");
        if (!v.tail.empty()) monomial = false;
        bound += v.degree - 1;
    }
    if (monomial) return bound;
    return *pres.rank();
}

bool is_nilpotent_skew(const SkewPoly &a) {
    if (!a.presentation()->rank()) throw Unsupported("skew nilpotency needs a finite-rank ring");
    for (const auto &c : a.coeffs())
        if (!c.is_nilpotent()) return false;
    return true;
}

bool is_unit_skew(const SkewPoly &a) {
    if (!a.presentation()->rank()) throw Unsupported("skew invertibility needs a finite-rank ring");
    if (a.is_zero() || !a.coeffs()[0].is_unit()) return false;
    for (std::size_t i = 1; i < a.coeffs().size(); ++i)
        if (!a.coeffs()[i].is_nilpotent()) return false;
    return true;
}

SkewPoly skew_inverse(const SkewPoly &a) {
    if (!is_unit_skew(a)) throw NotInvertible("skew polynomial is not a unit");
    const auto &pres = a.presentation();
    std::size_t deg = static_cast<std::size_t>(a.degree());
    RingElem l0inv = a.coeffs()[0].inverse();
    std::vector<RingElem> mu{l0inv};
    if (deg > 0) {
        // The inverse of a unit has degree below deg * N; deg consecutive
        // zero coefficients force every later one to vanish.
        std::uint64_t limit = deg * nilpotency_bound(*pres) + deg;
        RingElem neg = -l0inv;
        std::size_t zeros = 0;
        for (std::size_t k = 1; zeros < deg; ++k) {
            if (k > limit) throw ConsistencyError("skew inverse recursion exceeded its certified bound");
            RingElem s(pres);
            for (std::size_t i = 1; i <= std::min(k, deg); ++i) {
                const RingElem &prev = mu[k - i];
                if (prev.is_zero() || a.coeffs()[i].is_zero()) continue;
                s += a.coeffs()[i] * prev.frobenius(static_cast<unsigned>(i));
            }
            mu.push_back(neg * s);
            zeros = mu.back().is_zero() ? zeros + 1 : 0;
        }
    }
    SkewPoly inv(pres, std::move(mu));
    if (!(a * inv).is_one() || !(inv * a).is_one())
        throw ConsistencyError("skew inverse failed its two-sided check");
    return inv;
}

RingMatrix matrix_rep(const SkewPoly &a, std::size_t d) {
    const auto &pres = a.presentation();
    RingMatrix m(d, std::vector<RingElem>(d, RingElem(pres)));
    for (std::size_t s = 0; s < d; ++s) {
        RingElem c = a.coeff(s);
        // Row r holds coeff(s - r)^(p^r); walk down the diagonal applying
        // Frobenius once per row.
        for (std::size_t r = 0; r + s < d; ++r) {
            m[r][r + s] = c;
            c = c.frobenius();
        }
    }
    return m;
}

RingMatrix matrix_mul(const RingMatrix &a, const RingMatrix &b) {
    std::size_t n = a.size();
    if (n == 0) return {};
    const auto &pres = a[0][0].presentation();
    RingMatrix c(n, std::vector<RingElem>(n, RingElem(pres)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

std::optional<std::size_t> fil_level(const SkewPoly &a) {
    if (a.is_zero() || !a.coeffs()[0].is_one()) throw OutOfDomain("fil_level needs constant coefficient 1");
    for (std::size_t i = 1; i < a.coeffs().size(); ++i)
        if (!a.coeffs()[i].is_zero()) return i;
    return std::nullopt;
}

SkewPoly conjugate_by_unit(const SkewPoly &a, const RingElem &mu) {
    return SkewPoly::constant(mu) * a * SkewPoly::constant(mu.inverse());
}

} // namespace uc::skewpoly
