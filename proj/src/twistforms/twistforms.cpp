#include "uc/twistforms/twistforms.hpp"

#include "uc/errors.hpp"
#include "uc/exactalg/ring.hpp"
#include "uc/numsemigroup/numsemigroup.hpp"
#include "uc/ugroup/ugroup.hpp"

namespace uc::twistforms {

using exactalg::Presentation;
using exactalg::PresPtr;
using exactalg::RingElem;
using numsemigroup::ipow;

namespace {

FieldElem zero(const BaseField &b) { return FieldElem(b.characteristic(), 0); }

void trim(UPoly &f) {
    while (!f.coeffs.empty() && f.coeffs.back().is_zero()) f.coeffs.pop_back();
}

// Remainder of a modulo b, b nonzero.
UPoly rem(UPoly a, const UPoly &b) {
    int db = b.degree();
    FieldElem lead_inv = b.coeffs[static_cast<std::size_t>(db)].inverse();
    trim(a);
    while (a.degree() >= db) {
        int da = a.degree();
        FieldElem q = a.coeffs[static_cast<std::size_t>(da)] * lead_inv;
        for (int i = 0; i <= db; ++i) {
            auto k = static_cast<std::size_t>(da - db + i);
            a.coeffs[k] = (a.coeffs[k] - q * b.coeffs[static_cast<std::size_t>(i)]).reduced();
        }
        a.coeffs[static_cast<std::size_t>(da)] = zero(a.base);
        trim(a);
    }
    return a;
}

std::string wrap(const std::string &s) {
    return s.find_first_of(" /") == std::string::npos ? s : "(" + s + ")";
}

std::string term_string(const FieldElem &c, const std::string &mono, const BaseField &base, bool first) {
    // Print a leading coefficient p-1 as a minus sign.
    std::uint32_t p = c.characteristic();
    bool neg = p > 2 && (c.is_scalar() ? c.scalar() == p - 1 : c.numerator().leading_coeff() == p - 1);
    FieldElem a = neg ? -c : c;
    std::string s = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (mono.empty()) return s + wrap(a.to_string(base.params()));
    if (a.is_one()) return s + mono;
    return s + wrap(a.to_string(base.params())) + "*" + mono;
}

} // namespace

int UPoly::degree() const {
    for (auto i = coeffs.size(); i-- > 0;)
        if (!coeffs[i].is_zero()) return static_cast<int>(i);
    return -1;
}

bool UPoly::is_additive() const {
    std::uint32_t p = base.characteristic();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        std::size_t e = i;
        if (e == 0) return false;
        while (e % p == 0) e /= p;
        if (e != 1) return false;
    }
    return true;
}

std::string UPoly::to_string(const std::string &var) const {
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const auto &c = coeffs[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        out += term_string(c, mono, base, out.empty());
    }
    return out.empty() ? "0" : out;
}

FieldElem AdditivePoly::operator()(const FieldElem &u) const {
    FieldElem r = zero(base);
    FieldElem up = u;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i > 0) up = up.frobenius();
        r = r + coeffs[i] * up;
    }
    return r;
}

UPoly AdditivePoly::expand() const {
    UPoly f{base, {}};
    std::uint32_t p = base.characteristic();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        auto e = static_cast<std::size_t>(ipow(p, static_cast<unsigned>(i)));
        if (f.coeffs.size() <= e) f.coeffs.resize(e + 1, zero(base));
        f.coeffs[e] = coeffs[i];
    }
    return f;
}

bool AdditivePoly::is_zero() const {
    for (const auto &c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

std::string AdditivePoly::to_string(const std::string &var) const {
    std::string out;
    std::uint32_t p = base.characteristic();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        std::string mono = i == 0 ? var : var + "^" + std::to_string(ipow(p, static_cast<unsigned>(i)));
        out += term_string(coeffs[i], mono, base, out.empty());
    }
    return out.empty() ? "0" : out;
}

UPoly additive_gcd(const AdditivePoly &phi, const AdditivePoly &psi) {
    if (!(phi.base == psi.base)) throw PresentationMismatch("additive polynomials over different fields");
    if (phi.is_zero() && psi.is_zero()) throw UsageError("gcd of two zero polynomials");
    UPoly a = phi.expand(), b = psi.expand();
    while (!b.is_zero()) {
        UPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    trim(a);
    FieldElem inv = a.coeffs.back().inverse();
    for (auto &c : a.coeffs) c = (c * inv).reduced();
    return a;
}

bool is_ga_twist(const AdditivePoly &phi, const AdditivePoly &psi) {
    UPoly g = additive_gcd(phi, psi);
    return g.degree() == 1 && g.coeffs[0].is_zero();
}

RussellForm russell_form(const BaseField &base, unsigned level, const FieldElem &alpha,
                         const std::optional<FieldElem> &beta) {
    if (level < 1 || level > 2) throw Unsupported("Russell forms are implemented for levels 1 and 2 only");
    std::uint32_t p = base.characteristic();
    RussellForm f;
    f.p = p;
    f.level = level;
    f.alpha = alpha;
    f.beta = beta;
    f.phi.base = f.psi.base = base;
    f.phi.coeffs.assign(level + 1, zero(base));
    f.phi.coeffs[level] = FieldElem(p, 1);
    f.psi.coeffs = {FieldElem(p, 1), -alpha};
    if (level == 2) {
        if (!beta) throw UsageError("level 2 needs beta");
        f.psi.coeffs.push_back(-beta->frobenius());
    }
    return f;
}

RussellForm russell_form(std::uint32_t p, unsigned level) {
    if (level < 1 || level > 2) throw Unsupported("Russell forms are implemented for levels 1 and 2 only");
    if (level == 1) return russell_form(BaseField(p, {"alpha"}), 1, FieldElem::param(p, 0));
    return russell_form(BaseField(p, {"alpha", "beta"}), 2, FieldElem::param(p, 0), FieldElem::param(p, 1));
}

CohomologyIndex cohomology_index(const BaseField &base, unsigned level, const FieldElem &alpha,
                                 const std::optional<FieldElem> &beta) {
    CohomologyIndex idx;
    idx.form = russell_form(base, level, alpha, beta);
    idx.p = base.characteristic();
    idx.level = level;
    idx.alpha_label = alpha;
    idx.beta_label = beta;
    return idx;
}

namespace {

void assert_nonzero_ring(const PresPtr &pres) {
    if (RingElem(pres, 1).is_zero()) throw ConsistencyError("ambient ring collapsed to zero");
}

} // namespace


bool verify_russell_level1(std::uint32_t p, bool control) {
    Presentation::Builder b{BaseField(p, {"alpha"})};
    if (control)
        b.add_free("y");
    else
        b.add_relation("y", p, "alpha");
    auto pres = b.add_nilpotent("l", p).add_free("x").build();
    assert_nonzero_ring(pres);
    RingElem y = RingElem::var(pres, "y"), l = RingElem::var(pres, "l"), x = RingElem::var(pres, "x");
    RingElem alpha = RingElem::param(pres, "alpha");
    RingElem u = x - x.pow(p) * y;
    RingElem v = x.pow(p);
    if (u.is_zero() || v.is_zero()) throw ConsistencyError("invariants vanish");
    // sigma: x -> x + l x^p, y -> y + l
    std::vector<RingElem> sigma{y + l, l, x + l * x.pow(p)};
    bool inv = u.substitute(sigma) == u && v.substitute(sigma) == v;
    bool rel = u.pow(p) == v - alpha * v.pow(p);
    return inv && rel;
}

bool verify_russell_level2(std::uint32_t p, bool control) {
    std::uint32_t p2 = p * p;
    auto pres = Presentation::Builder{BaseField(p, {"alpha", "beta"})}
                    .add_relation("y", p2, "alpha")
                    .add_relation("z", p, "beta + alpha*y^" + std::to_string(p))
                    .add_nilpotent("l1", p2)
                    .add_nilpotent("l2", p)
                    .add_free("x")
                    .build();
    assert_nonzero_ring(pres);
    RingElem y = RingElem::var(pres, "y"), z = RingElem::var(pres, "z");
    RingElem l1 = RingElem::var(pres, "l1"), l2 = RingElem::var(pres, "l2"), x = RingElem::var(pres, "x");
    RingElem alpha = RingElem::param(pres, "alpha"), beta = RingElem::param(pres, "beta");
    RingElem xp = x.pow(p), xp2 = x.pow(p2);
    RingElem u = x - xp * y - xp2 * z + xp2 * y.pow(p + 1);
    if (control) u += xp2 * y;
    RingElem v = xp2;
    std::vector<RingElem> sigma{y + l1, z + l2 + l1 * y.pow(p), l1, l2, x + l1 * xp + l2 * xp2};
    bool inv = u.substitute(sigma) == u && v.substitute(sigma) == v;
    bool rel = u.pow(p2) == v - alpha * v.pow(p) - beta.pow(p) * v.pow(p2);
    return inv && rel;
}

bool verify_torsor_action(std::uint32_t p, bool control) {
    std::uint32_t p2 = p * p;
    auto pres = Presentation::Builder{BaseField(p, {"alpha", "beta"})}
                    .add_relation("y", p2, "alpha")
                    .add_relation("z", p, "beta + alpha*y^" + std::to_string(p))
                    .add_nilpotent("l1", p2)
                    .add_nilpotent("l2", p)
                    .add_nilpotent("m1", p2)
                    .add_nilpotent("m2", p)
                    .build();
    assert_nonzero_ring(pres);
    auto V = [&](const char *n) { return RingElem::var(pres, n); };
    RingElem alpha = RingElem::param(pres, "alpha"), beta = RingElem::param(pres, "beta");
    using Point = std::pair<RingElem, RingElem>;
    auto act = [&](const ugroup::UnElement &g, const Point &pt) {
        RingElem z = g.lambda(2) + pt.second;
        if (!control) z += g.lambda(1) * pt.first.pow(p);
        return Point{g.lambda(1) + pt.first, z};
    };
    auto on_torsor = [&](const Point &pt) {
        return pt.first.pow(p2) == alpha && pt.second.pow(p) == beta + alpha * pt.first.pow(p);
    };
    Point base{V("y"), V("z")};
    if (!on_torsor(base)) throw ConsistencyError("generic point is not on the torsor");
    ugroup::UnElement lam(pres, {V("l1"), V("l2")});
    ugroup::UnElement mu(pres, {V("m1"), V("m2")});
    Point lp = act(lam, base);
    bool closure = on_torsor(lp) && on_torsor(act(mu, base));
    Point id = act(ugroup::UnElement::identity(pres, 2), base);
    bool identity = id.first == base.first && id.second == base.second;
    Point lhs = act(ugroup::un_mul(lam, mu), base);
    Point rhs = act(lam, act(mu, base));
    bool compat = lhs.first == rhs.first && lhs.second == rhs.second;
    return closure && identity && compat;
}

FieldElem cohomology_relation_element(const RussellForm &form, const FieldElem &u, const FieldElem &v) {
    return (form.phi(u) - form.psi(v)).reduced();
}

bool is_pth_power_ratfunc(const FieldElem &f, std::uint32_t p) {
    if (f.characteristic() != p) throw PresentationMismatch("characteristic mismatch");
    if (f.is_scalar()) return true;
    // f = n/d is a p-th power iff n d^(p-1) lies in F_p[t^p].
    exactalg::MPoly g = f.numerator() * f.denominator().pow(p - 1);
    for (const auto &t : g.terms())
        for (auto e : t.exps)
            if (e % p != 0) return false;
    return true;
}

std::optional<std::pair<FieldElem, FieldElem>> trivial_class_witness(const RussellForm &form, const FieldElem &gamma,
                                                                     const FieldElem &target) {
    if (form.level != 1) throw Unsupported("witness search is implemented for level 1");
    if (!(form.alpha == gamma.frobenius())) throw UsageError("alpha is not gamma^p");
    std::uint32_t p = form.p;
    // Candidates u = c gamma^i f, v = d f with c, d in F_p and i in {0, 1}.
    for (std::uint32_t i = 0; i < 2; ++i)
        for (std::uint32_t c = 0; c < p; ++c)
            for (std::uint32_t d = 0; d < p; ++d) {
                FieldElem u = FieldElem(p, c) * gamma.pow(i) * target;
                FieldElem v = FieldElem(p, d) * target;
                if (cohomology_relation_element(form, u, v) == target) return std::make_pair(u, v);
            }
    return std::nullopt;
}

} // namespace uc::twistforms
