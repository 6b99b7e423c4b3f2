#include "uc/ugroup/ugroup.hpp"

#include "uc/errors.hpp"

namespace uc::ugroup {

using exactalg::BaseField;
using exactalg::Presentation;

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (std::uint64_t{1} << 62U) / b) throw ResourceError("integer overflow in p-power");
        r *= b;
    }
    return r;
}

bool constraints_hold(const std::vector<RingElem> &l) {
    unsigned n = static_cast<unsigned>(l.size());
    for (unsigned i = 1; i <= n; ++i)
        if (!l[i - 1].frobenius(n - i + 1).is_zero()) return false;
    return true;
}

} // namespace

UnElement::UnElement(PresPtr pres, std::vector<RingElem> lambdas) : pres_(std::move(pres)), lambdas_(std::move(lambdas)) {
    for (const auto &l : lambdas_)
        if (l.presentation() != pres_ && !l.presentation()->same_as(*pres_))
            throw PresentationMismatch("U_n coordinates from different rings");
    if (!constraints_hold(lambdas_)) throw OutOfDomain("coordinates violate the U_n constraints");
}

UnElement UnElement::identity(PresPtr pres, unsigned n) {
    UnElement x;
    x.lambdas_.assign(n, RingElem(pres));
    x.pres_ = std::move(pres);
    return x;
}

UnElement UnElement::from_skew(const SkewPoly &s, unsigned n) {
    if (s.is_zero() || !s.coeffs()[0].is_one()) throw ConsistencyError("product left the unipotent part");
    if (s.degree() > static_cast<int>(n)) throw ConsistencyError("product has terms beyond F^n");
    UnElement x;
    x.pres_ = s.presentation();
    for (unsigned i = 1; i <= n; ++i) x.lambdas_.push_back(s.coeff(i));
    if (!constraints_hold(x.lambdas_)) throw ConsistencyError("product violates the U_n constraints");
    return x;
}

RingElem UnElement::lambda(unsigned i) const {
    if (i == 0) return RingElem(pres_, 1);
    if (i > lambdas_.size()) return RingElem(pres_);
    return lambdas_[i - 1];
}

bool UnElement::is_identity() const {
    for (const auto &l : lambdas_)
        if (!l.is_zero()) return false;
    return true;
}

SkewPoly UnElement::to_skew() const {
    std::vector<RingElem> c{RingElem(pres_, 1)};
    c.insert(c.end(), lambdas_.begin(), lambdas_.end());
    return SkewPoly(pres_, std::move(c));
}

UnElement UnElement::lift_to(PresPtr target) const {
    UnElement x;
    for (const auto &l : lambdas_) x.lambdas_.push_back(l.lift_to(target));
    x.pres_ = std::move(target);
    return x;
}

bool operator==(const UnElement &a, const UnElement &b) {
    if (a.level() != b.level()) return false;
    for (std::size_t i = 0; i < a.lambdas_.size(); ++i)
        if (!(a.lambdas_[i] == b.lambdas_[i])) return false;
    return true;
}

UnElement un_mul(const UnElement &x, const UnElement &y) {
    if (x.level() != y.level()) throw PresentationMismatch("U_n elements of different levels");
    return UnElement::from_skew(x.to_skew() * y.to_skew(), x.level());
}

UnElement un_inverse(const UnElement &x) {
    unsigned n = x.level();
    const auto &pres = x.presentation();
    // mu_k = -sum_{i=1}^{k} lambda_i mu_{k-i}^(p^i); closure of U_n under
    // inversion stops the recursion at k = n, and the product check below
    // certifies the truncation.
    std::vector<RingElem> mu{RingElem(pres, 1)};
    for (unsigned k = 1; k <= n; ++k) {
        RingElem s(pres);
        for (unsigned i = 1; i <= k; ++i) {
            if (x.lambda(i).is_zero() || mu[k - i].is_zero()) continue;
            s += x.lambda(i) * mu[k - i].frobenius(i);
        }
        mu.push_back(-s);
    }
    SkewPoly inv(pres, mu);
    if (!(x.to_skew() * inv).is_one() || !(inv * x.to_skew()).is_one())
        throw ConsistencyError("U_n inverse failed its two-sided check");
    return UnElement::from_skew(inv, n);
}

UnElement frobenius_map(const UnElement &x) {
    unsigned n = x.level();
    if (n == 0) throw OutOfDomain("Frobenius map needs level at least 1");
    if (!x.lambda(n).frobenius().is_zero()) throw ConsistencyError("lambda_n^p does not vanish");
    std::vector<RingElem> l;
    for (unsigned i = 1; i < n; ++i) l.push_back(x.lambda(i).frobenius());
    return UnElement(x.presentation(), std::move(l));
}

RingMatrix adjoint_matrix(const UnElement &x) {
    unsigned n = x.level();
    const auto &pres = x.presentation();
    RingMatrix m(n, std::vector<RingElem>(n, RingElem(pres)));
    for (unsigned s = 1; s <= n; ++s)
        for (unsigned r = s; r <= n; ++r) m[r - 1][s - 1] = x.lambda(r - s).frobenius(s);
    return m;
}

RingMatrix adjoint_by_conjugation(const UnElement &x) {
    unsigned n = x.level();
    const auto &pres = x.presentation();
    std::string eps = "eps";
    while (pres->var_index(eps) >= 0 || pres->base().param_index(eps) >= 0) eps += "_";
    auto ext = Presentation::Builder(*pres).add_nilpotent(eps, 2).build();
    std::size_t ei = ext->num_vars() - 1;
    UnElement xe = x.lift_to(ext);
    SkewPoly P = xe.to_skew();
    SkewPoly Pinv = un_inverse(xe).to_skew();
    RingMatrix m(n, std::vector<RingElem>(n, RingElem(pres)));
    for (unsigned s = 1; s <= n; ++s) {
        SkewPoly v = SkewPoly::one(ext) + SkewPoly::constant(RingElem::var(ext, ei)) * SkewPoly::frob(ext, s);
        SkewPoly c = Pinv * v * P;
        if (!c.coeff(0).is_one()) throw ConsistencyError("conjugate left the unipotent part");
        for (unsigned r = 1; r <= n; ++r) {
            RingElem entry = c.coeff(r);
            // The eps-linear part; eps-free parts must cancel.
            if (!entry.coefficient(ei, 0).is_zero()) throw ConsistencyError("conjugation has eps-free terms");
            RingElem lin = entry.coefficient(ei, 1);
            std::vector<exactalg::Term> t = lin.terms();
            m[r - 1][s - 1] = RingElem::from_terms(pres, std::move(t));
        }
        if (c.degree() > static_cast<int>(n)) throw ConsistencyError("conjugate has terms beyond F^n");
    }
    return m;
}

bool central_member(const UnElement &x, unsigned r) {
    unsigned n = x.level();
    if (r > n) throw OutOfDomain("central series index out of range");
    for (unsigned i = 1; i + r <= n; ++i)
        if (!x.lambda(i).is_zero()) return false;
    return true;
}

UniversalRing universal_ring(std::uint32_t p, unsigned n, const std::vector<GenericSpec> &specs,
                             std::uint64_t max_rank) {
    Presentation::Builder b{BaseField(p)};
    std::uint64_t rank = 1;
    std::vector<std::vector<int>> slots;
    int next = 0;
    for (const auto &sp : specs) {
        if (sp.r > n) throw OutOfDomain("central series index out of range");
        std::vector<int> s;
        for (unsigned i = 1; i <= n; ++i) {
            if (i + sp.r <= n) {
                s.push_back(-1);
                continue;
            }
            std::uint64_t d = ipow(p, n - i + 1);
            if (d > 0xFFFFU) throw ResourceError("relation degree too large");
            if (rank > max_rank / d) throw ResourceError("universal ring exceeds the rank budget");
            rank *= d;
            b.add_nilpotent(sp.prefix + std::to_string(i), static_cast<std::uint32_t>(d));
            s.push_back(next++);
        }
        slots.push_back(std::move(s));
    }
    if (next > static_cast<int>(exactalg::kMaxVars)) throw ResourceError("too many generic coordinates");
    UniversalRing u{b.build(), {}};
    for (const auto &s : slots) {
        std::vector<RingElem> l;
        for (int v : s) l.push_back(v < 0 ? RingElem(u.pres) : RingElem::var(u.pres, static_cast<std::size_t>(v)));
        u.points.emplace_back(u.pres, std::move(l));
    }
    return u;
}

UniversalRing universal_ring(std::uint32_t p, unsigned n, unsigned count, std::uint64_t max_rank) {
    static const char *names[] = {"l", "m", "k", "q", "w", "z"};
    if (count > 6) throw Unsupported("too many generic points");
    std::vector<GenericSpec> specs;
    for (unsigned i = 0; i < count; ++i) specs.push_back(GenericSpec{names[i], n});
    return universal_ring(p, n, specs, max_rank);
}

std::uint64_t order_exponent_G(std::uint32_t p, unsigned n, unsigned r) {
    auto u = universal_ring(p, n, {GenericSpec{"l", r}}, ~std::uint64_t{0});
    std::uint64_t rank = *u.pres->rank();
    std::uint64_t e = 0;
    while (rank > 1) {
        if (rank % p != 0) throw ConsistencyError("rank is not a power of p");
        rank /= p;
        ++e;
    }
    return e;
}

bool CentralSeriesReport::all_pass() const {
    for (const auto &c : checks)
        if (!c.pass) return false;
    return !checks.empty();
}

namespace {

UnElement commutator_xy_yx(const UnElement &x, const UnElement &y) {
    return un_mul(un_mul(x, y), un_inverse(un_mul(y, x)));
}

} // namespace

CentralSeriesReport verify_central_series(std::uint32_t p, unsigned n, std::uint64_t max_rank) {
    CentralSeriesReport rep;
    rep.p = p;
    rep.n = n;
    for (unsigned r = 1; r <= n; ++r) {
        auto u = universal_ring(p, n, {GenericSpec{"l", r}, GenericSpec{"m", n}}, max_rank);
        UnElement c = commutator_xy_yx(u.points[0], u.points[1]);
        bool ok = central_member(c, r - 1);
        rep.checks.push_back(CheckResult{"upper_bound", r, ok,
                                         ok ? "[G_r, U_n] in G_{r-1}" : "commutator leaves G_{r-1}"});
    }
    for (unsigned r = 0; r < n; ++r) {
        auto u = universal_ring(p, n, {GenericSpec{"l", r + 1}, GenericSpec{"m", n}}, max_rank);
        bool ok;
        std::string msg;
        if (r == 0) {
            ok = !u.points[0].is_identity();
            msg = ok ? "generic point of G_1 is nontrivial" : "G_1 is trivial";
        } else {
            UnElement c = commutator_xy_yx(u.points[0], u.points[1]);
            unsigned idx = n - r + 1;
            ok = !c.lambda(idx).is_zero();
            msg = ok ? "coefficient of F^" + std::to_string(idx) + " is nonzero"
                     : "commutator lies in G_{r-1}; G_{r+1} would be inside Z_r";
        }
        rep.checks.push_back(CheckResult{"strictness", r, ok, msg});
    }
    for (unsigned r = 0; r < n; ++r) {
        std::uint64_t e1 = order_exponent_G(p, n, r + 1);
        std::uint64_t e0 = order_exponent_G(p, n, r);
        bool ok = e1 - e0 == r + 1;
        rep.checks.push_back(CheckResult{"quotient_order", r, ok,
                                         "|G_{r+1}/G_r| = p^" + std::to_string(e1 - e0)});
    }
    return rep;
}

bool commutator_formula_check(std::uint32_t p, unsigned n, unsigned s) {
    if (s < 1 || s + 1 > n) throw OutOfDomain("commutator formula needs 1 <= s <= n-1");
    Presentation::Builder b{BaseField(p)};
    b.add_nilpotent("alpha", static_cast<std::uint32_t>(ipow(p, n)));
    b.add_nilpotent("beta", static_cast<std::uint32_t>(ipow(p, n - s + 1)));
    b.add_nilpotent("gamma", static_cast<std::uint32_t>(ipow(p, n - s)));
    auto pres = b.build();
    RingElem al = RingElem::var(pres, 0), be = RingElem::var(pres, 1), ga = RingElem::var(pres, 2);
    SkewPoly one = SkewPoly::one(pres);
    SkewPoly a = one - SkewPoly::constant(al) * SkewPoly::frob(pres, 1);
    SkewPoly bb = one - SkewPoly::constant(be) * SkewPoly::frob(pres, s) -
                  SkewPoly::constant(ga) * SkewPoly::frob(pres, s + 1);
    SkewPoly c = a * bb * skewpoly::skew_inverse(a) * skewpoly::skew_inverse(bb);
    SkewPoly expected =
        one + SkewPoly::constant(al * be.frobenius() - be * al.frobenius(s)) * SkewPoly::frob(pres, s + 1);
    return c.truncated(s + 2) == expected;
}

GroupElement GroupElement::identity(PresPtr pres, unsigned n) {
    return GroupElement{RingElem(pres), UnElement::identity(pres, n), RingElem(pres, 1)};
}

RingElem apply_additive(const SkewPoly &s, const RingElem &v) {
    RingElem r(s.presentation());
    RingElem vp = v;
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
        if (i > 0) vp = vp.frobenius();
        if (!s.coeffs()[i].is_zero()) r += s.coeffs()[i] * vp;
    }
    return r;
}

GroupElement compose(const GroupElement &g, const GroupElement &h) {
    if (g.u.level() != h.u.level()) throw PresentationMismatch("group elements of different levels");
    unsigned n = g.u.level();
    // m_g P_g(m_h P_h(x) + a_h) + a_g
    //   = (m_g m_h) (m_h^-1 P_g m_h) P_h (x) + (a_g + m_g P_g(a_h)).
    SkewPoly Pg = g.u.to_skew();
    RingElem mh_inv = h.m.inverse();
    SkewPoly twisted = SkewPoly::constant(mh_inv) * Pg * SkewPoly::constant(h.m);
    UnElement u = UnElement::from_skew(twisted * h.u.to_skew(), n);
    return GroupElement{g.a + g.m * apply_additive(Pg, h.a), u, g.m * h.m};
}

GroupElement group_inverse(const GroupElement &g) {
    // y = m P(x) + a  <=>  x = P^-1(m^-1 y) - P^-1(m^-1 a).
    RingElem minv = g.m.inverse();
    SkewPoly Pinv = un_inverse(g.u).to_skew();
    SkewPoly Pp = SkewPoly::constant(g.m) * Pinv * SkewPoly::constant(minv);
    UnElement u = UnElement::from_skew(Pp, g.u.level());
    return GroupElement{-apply_additive(Pinv, minv * g.a), u, minv};
}

bool operator==(const GroupElement &g, const GroupElement &h) { return g.a == h.a && g.u == h.u && g.m == h.m; }

RingElem act_on_polynomial(const GroupElement &g, const RingElem &q, std::size_t x_index) {
    const auto &qp = q.presentation();
    if (x_index >= qp->num_vars() || !qp->vars()[x_index].free)
        throw UsageError("action variable must be a free variable");
    std::vector<RingElem> images;
    for (std::size_t i = 0; i < qp->num_vars(); ++i) images.push_back(RingElem::var(qp, i));
    RingElem x = images[x_index];
    UnElement ul = g.u.lift_to(qp);
    images[x_index] = g.m.lift_to(qp) * apply_additive(ul.to_skew(), x) + g.a.lift_to(qp);
    return q.substitute(images);
}

} // namespace uc::ugroup
