#include "uc/exactalg/mpoly.hpp"

#include <algorithm>
#include <sstream>

#include "uc/errors.hpp"
#include "uc/exactalg/modp.hpp"

namespace uc::exactalg {

bool exps_less(const ParamExps &a, const ParamExps &b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

bool desc(const PTerm &a, const PTerm &b) { return exps_less(b.exps, a.exps); }

bool divides(const ParamExps &d, const ParamExps &m) {
    for (std::size_t i = 0; i < kMaxParams; ++i)
        if (d[i] > m[i]) return false;
    return true;
}

void check_same(std::uint32_t a, std::uint32_t b) {
    if (a != b && a != 0 && b != 0) throw PresentationMismatch("polynomials over different characteristics");
}

} // namespace

MPoly MPoly::constant(std::uint32_t p, std::int64_t c) {
    MPoly r(p);
    auto v = reduce_mod(c, p);
    if (v != 0) r.terms_.push_back(PTerm{ParamExps{}, v});
    return r;
}

MPoly MPoly::variable(std::uint32_t p, std::size_t index) {
    if (index >= kMaxParams) throw Unsupported("too many parameters");
    MPoly r(p);
    PTerm t;
    t.exps[index] = 1;
    t.coeff = 1 % p;
    if (t.coeff != 0) r.terms_.push_back(t);
    return r;
}

MPoly MPoly::from_terms(std::uint32_t p, std::vector<PTerm> terms) {
    MPoly r(p);
    r.terms_ = std::move(terms);
    for (auto &t : r.terms_) t.coeff %= p;
    r.normalize();
    return r;
}

void MPoly::normalize() {
    std::sort(terms_.begin(), terms_.end(), desc);
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
        PTerm acc = terms_[i];
        std::size_t j = i + 1;
        for (; j < terms_.size() && terms_[j].exps == acc.exps; ++j) acc.coeff = add_mod(acc.coeff, terms_[j].coeff, p_);
        if (acc.coeff != 0) terms_[out++] = acc;
        i = j;
    }
    terms_.resize(out);
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exps == ParamExps{});
}

std::uint32_t MPoly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw ConsistencyError("constant_value of a nonconstant polynomial");
    return terms_[0].coeff;
}

std::uint32_t MPoly::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto &t : terms_) d = std::max(d, t.exps[var]);
    return d;
}

int MPoly::max_var() const {
    int m = -1;
    for (const auto &t : terms_)
        for (std::size_t i = 0; i < kMaxParams; ++i)
            if (t.exps[i] != 0) m = std::max(m, static_cast<int>(i));
    return m;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto &t : r.terms_) t.coeff = neg_mod(t.coeff, p_);
    return r;
}

MPoly &MPoly::operator+=(const MPoly &o) {
    check_same(p_, o.p_);
    if (p_ == 0) p_ = o.p_;
    std::vector<PTerm> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && desc(terms_[i], o.terms_[j]))) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() || desc(o.terms_[j], terms_[i])) {
            out.push_back(o.terms_[j++]);
        } else {
            auto c = add_mod(terms_[i].coeff, o.terms_[j].coeff, p_);
            if (c != 0) out.push_back(PTerm{terms_[i].exps, c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

MPoly &MPoly::operator-=(const MPoly &o) { return *this += -o; }

MPoly operator*(const MPoly &a, const MPoly &b) {
    check_same(a.p_, b.p_);
    MPoly r(a.p_ != 0 ? a.p_ : b.p_);
    if (a.is_zero() || b.is_zero()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto &s : a.terms_)
        for (const auto &t : b.terms_) {
            PTerm u;
            for (std::size_t k = 0; k < kMaxParams; ++k) u.exps[k] = s.exps[k] + t.exps[k];
            u.coeff = mul_mod(s.coeff, t.coeff, r.p_);
            r.terms_.push_back(u);
        }
    r.normalize();
    return r;
}

MPoly MPoly::scaled(std::uint32_t c) const {
    c %= p_;
    if (c == 0) return MPoly(p_);
    MPoly r = *this;
    for (auto &t : r.terms_) t.coeff = mul_mod(t.coeff, c, p_);
    return r;
}

MPoly MPoly::frobenius() const {
    MPoly r = *this;
    for (auto &t : r.terms_)
        for (auto &e : t.exps) e *= p_;
    return r;
}

MPoly MPoly::pow(std::uint64_t e) const {
    MPoly result = constant(p_, 1);
    MPoly base = *this;
    // Split e into base-p digits; the p-th power is the cheap Frobenius.
    while (e != 0) {
        auto digit = e % p_;
        for (std::uint64_t k = 0; k < digit; ++k) result = result * base;
        e /= p_;
        if (e != 0) base = base.frobenius();
    }
    return result;
}

MPoly MPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(inv_mod(leading_coeff(), p_));
}

ParamExps MPoly::monomial_content() const {
    ParamExps m{};
    if (terms_.empty()) return m;
    m = terms_[0].exps;
    for (const auto &t : terms_)
        for (std::size_t k = 0; k < kMaxParams; ++k) m[k] = std::min(m[k], t.exps[k]);
    return m;
}

MPoly MPoly::divide_monomial(const ParamExps &m) const {
    MPoly r = *this;
    for (auto &t : r.terms_) {
        for (std::size_t k = 0; k < kMaxParams; ++k) {
            if (t.exps[k] < m[k]) throw ConsistencyError("monomial does not divide polynomial");
            t.exps[k] -= m[k];
        }
    }
    return r;
}

std::string MPoly::to_string(const std::vector<std::string> &names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &t : terms_) {
        if (!first) os << " + ";
        first = false;
        bool mono = t.exps != ParamExps{};
        if (t.coeff != 1 || !mono) {
            os << t.coeff;
            if (mono) os << '*';
        }
        bool first_var = true;
        for (std::size_t k = 0; k < kMaxParams; ++k) {
            if (t.exps[k] == 0) continue;
            if (!first_var) os << '*';
            first_var = false;
            os << (k < names.size() ? names[k] : "t" + std::to_string(k));
            if (t.exps[k] != 1) os << '^' << t.exps[k];
        }
    }
    return os.str();
}

std::optional<MPoly> divide_exact(const MPoly &a, const MPoly &b) {
    if (b.is_zero()) throw NotInvertible("division by the zero polynomial");
    const auto p = a.characteristic() != 0 ? a.characteristic() : b.characteristic();
    MPoly q(p);
    MPoly r = a;
    const auto &lb = b.terms().front();
    const auto lb_inv = inv_mod(lb.coeff, p);
    while (!r.is_zero()) {
        const auto &lr = r.terms().front();
        if (!divides(lb.exps, lr.exps)) return std::nullopt;
        PTerm t;
        for (std::size_t k = 0; k < kMaxParams; ++k) t.exps[k] = lr.exps[k] - lb.exps[k];
        t.coeff = mul_mod(lr.coeff, lb_inv, p);
        auto step = MPoly::from_terms(p, {t});
        q += step;
        r -= step * b;
    }
    return q;
}

namespace {

using Univariate = std::vector<MPoly>; // index = degree in the main variable

Univariate to_univariate(const MPoly &a, std::size_t v) {
    const auto p = a.characteristic();
    Univariate u(a.degree_in(v) + 1, MPoly(p));
    std::vector<std::vector<PTerm>> buckets(u.size());
    for (auto t : a.terms()) {
        auto d = t.exps[v];
        t.exps[v] = 0;
        buckets[d].push_back(t);
    }
    for (std::size_t d = 0; d < u.size(); ++d) u[d] = MPoly::from_terms(p, std::move(buckets[d]));
    return u;
}

MPoly from_univariate(const Univariate &u, std::size_t v, std::uint32_t p) {
    std::vector<PTerm> all;
    for (std::size_t d = 0; d < u.size(); ++d)
        for (auto t : u[d].terms()) {
            t.exps[v] += static_cast<std::uint32_t>(d);
            all.push_back(t);
        }
    return MPoly::from_terms(p, std::move(all));
}

void trim(Univariate &u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

MPoly content(const Univariate &u) {
    MPoly g;
    bool have = false;
    for (const auto &c : u) {
        if (c.is_zero()) continue;
        g = have ? gcd(g, c) : c.monic();
        have = true;
        if (g.is_constant()) break;
    }
    return g;
}

Univariate primitive_part(const Univariate &u) {
    auto c = content(u);
    Univariate r;
    r.reserve(u.size());
    for (const auto &x : u) {
        auto q = divide_exact(x, c);
        if (!q) throw ConsistencyError("content does not divide coefficient");
        r.push_back(*q);
    }
    return r;
}

Univariate pseudo_remainder(Univariate a, const Univariate &b) {
    const auto p = b.back().characteristic();
    const MPoly &lc = b.back();
    const std::size_t db = b.size() - 1;
    trim(a);
    while (!a.empty() && a.size() - 1 >= db) {
        MPoly la = a.back();
        std::size_t shift = a.size() - 1 - db;
        for (auto &c : a) c = c * lc;
        for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
        trim(a);
    }
    (void)p;
    return a;
}

} // namespace

MPoly gcd(const MPoly &a, const MPoly &b) {
    const auto p = a.characteristic() != 0 ? a.characteristic() : b.characteristic();
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return MPoly::constant(p, 1);

    const int v = std::max(a.max_var(), b.max_var());
    const auto var = static_cast<std::size_t>(v);
    auto ua = to_univariate(a, var);
    auto ub = to_univariate(b, var);
    trim(ua);
    trim(ub);

    MPoly gc = gcd(content(ua), content(ub));
    auto pa = primitive_part(ua);
    auto pb = primitive_part(ub);
    if (pa.size() < pb.size()) std::swap(pa, pb);

    Univariate g;
    while (true) {
        if (pb.empty()) {
            g = primitive_part(pa);
            break;
        }
        if (pb.size() == 1) {
            g = Univariate{MPoly::constant(p, 1)};
            break;
        }
        auto r = pseudo_remainder(pa, pb);
        pa = std::move(pb);
        pb = r.empty() ? Univariate{} : primitive_part(r);
    }
    return (gc * from_univariate(g, var, p)).monic();
}

} // namespace uc::exactalg
