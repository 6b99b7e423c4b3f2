#include "uc/exactalg/ring.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "uc/errors.hpp"
#include "uc/exactalg/linalg.hpp"
#include "uc/exactalg/parse.hpp"

namespace uc::exactalg {

bool mono_less(const Mono &a, const Mono &b) { return a < b; }

Mono mono_mul(const Mono &a, const Mono &b) {
    Mono r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        std::uint32_t s = std::uint32_t{a[i]} + b[i];
        if (s > 0xFFFFU) throw ResourceError("monomial exponent overflow");
        r[i] = static_cast<std::uint16_t>(s);
    }
    return r;
}

std::size_t MonoHash::operator()(const Mono &m) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (std::size_t i = 0; i < kMaxVars; i += 4) {
        std::uint64_t w = std::uint64_t{m[i]} | std::uint64_t{m[i + 1]} << 16U | std::uint64_t{m[i + 2]} << 32U |
                          std::uint64_t{m[i + 3]} << 48U;
        h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6U) + (h >> 2U);
        h *= 0xBF58476D1CE4E5B9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31U));
}

// ---------------------------------------------------------------------------
// Presentation

Presentation::Builder::Builder(BaseField base) : base_(std::move(base)) {}

Presentation::Builder::Builder(const Presentation &prefix) : base_(prefix.base_), vars_(prefix.vars_) {}

void Presentation::Builder::check_new_name(const std::string &name) const {
    if (name.empty()) throw UsageError("empty variable name");
    if (vars_.size() >= kMaxVars) throw Unsupported("too many ring variables");
    if (base_.param_index(name) >= 0) throw UsageError("name clash with parameter: " + name);
    for (const auto &v : vars_)
        if (v.name == name) throw UsageError("duplicate variable: " + name);
}

Presentation::Builder &Presentation::Builder::add_free(const std::string &name) {
    check_new_name(name);
    vars_.push_back(Var{name, true, 0, {}});
    return *this;
}

Presentation::Builder &Presentation::Builder::add_nilpotent(const std::string &name, std::uint32_t degree) {
    check_new_name(name);
    if (degree < 1) throw UsageError("relation degree must be positive");
    if (degree > 0xFFFFU) throw Unsupported("relation degree too large");
    vars_.push_back(Var{name, false, degree, {}});
    return *this;
}

Presentation::Builder &Presentation::Builder::add_relation(const std::string &name, std::uint32_t degree,
                                                           const std::string &tail) {
    auto prefix = build();
    return add_relation(name, degree, RingElem::parse(prefix, tail));
}

Presentation::Builder &Presentation::Builder::add_relation(const std::string &name, std::uint32_t degree,
                                                           const RingElem &tail) {
    check_new_name(name);
    if (degree < 1) throw UsageError("relation degree must be positive");
    if (degree > 0xFFFFU) throw Unsupported("relation degree too large");
    const auto &tp = *tail.presentation();
    if (!(tp.base() == base_) || tp.num_vars() > vars_.size())
        throw PresentationMismatch("relation tail lives in a different ring");
    for (std::size_t i = 0; i < tp.num_vars(); ++i)
        if (tp.vars()[i].name != vars_[i].name) throw PresentationMismatch("relation tail lives in a different ring");
    vars_.push_back(Var{name, false, degree, tail.terms()});
    return *this;
}

std::shared_ptr<const Presentation> Presentation::Builder::build() const {
    auto p = std::shared_ptr<Presentation>(new Presentation());
    p->base_ = base_;
    p->vars_ = vars_;
    return p;
}

int Presentation::var_index(const std::string &name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return static_cast<int>(i);
    return -1;
}

bool Presentation::has_free() const {
    return std::any_of(vars_.begin(), vars_.end(), [](const Var &v) { return v.free; });
}

bool Presentation::pure_nilpotent() const {
    return std::all_of(vars_.begin(), vars_.end(), [](const Var &v) { return !v.free && v.tail.empty(); });
}

std::optional<std::uint64_t> Presentation::rank() const {
    std::uint64_t r = 1;
    for (const auto &v : vars_) {
        if (v.free) return std::nullopt;
        if (r > (std::uint64_t{1} << 62U) / v.degree) throw ResourceError("rank overflow");
        r *= v.degree;
    }
    return r;
}

static bool same_terms(const std::vector<Term> &a, const std::vector<Term> &b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].exps != b[i].exps || !(a[i].coeff == b[i].coeff)) return false;
    return true;
}

bool Presentation::extends(const Presentation &o) const {
    if (this == &o) return true;
    if (!(base_ == o.base_) || o.vars_.size() > vars_.size()) return false;
    for (std::size_t i = 0; i < o.vars_.size(); ++i) {
        const auto &a = vars_[i];
        const auto &b = o.vars_[i];
        if (a.name != b.name || a.free != b.free || a.degree != b.degree || !same_terms(a.tail, b.tail))
            return false;
    }
    return true;
}

bool Presentation::same_as(const Presentation &o) const {
    return this == &o || (vars_.size() == o.vars_.size() && extends(o));
}

std::vector<std::string> Presentation::var_names() const {
    std::vector<std::string> r;
    r.reserve(vars_.size());
    for (const auto &v : vars_) r.push_back(v.name);
    return r;
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

using Acc = std::unordered_map<Mono, FieldElem, MonoHash>;

struct Reducer {
    const Presentation &pres;
    std::map<std::pair<std::size_t, std::uint32_t>, std::vector<Term>> powers;
    Acc acc;

    const std::vector<Term> &tail_power(std::size_t i, std::uint32_t q) {
        auto key = std::make_pair(i, q);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        std::vector<Term> r;
        if (q == 1) {
            r = pres.vars()[i].tail;
        } else {
            const auto &half = tail_power(i, q / 2);
            r = kernels::mul_sparse(pres, half, half);
            if (q % 2 == 1) r = kernels::mul_sparse(pres, r, pres.vars()[i].tail);
        }
        return powers.emplace(key, std::move(r)).first->second;
    }

    void add(const Mono &m, const FieldElem &c) {
        auto [it, inserted] = acc.try_emplace(m, c);
        if (!inserted) it->second += c;
    }

    void reduce(Mono m, const FieldElem &c, std::size_t upto) {
        for (std::size_t k = upto + 1; k-- > 0;) {
            const auto &v = pres.vars()[k];
            if (v.free || m[k] < v.degree) continue;
            if (v.tail.empty()) return;
            std::uint32_t q = m[k] / v.degree;
            m[k] = static_cast<std::uint16_t>(m[k] % v.degree);
            const auto &gp = tail_power(k, q);
            for (const auto &t : gp) {
                if (k == 0) {
                    add(mono_mul(m, t.exps), c * t.coeff);
                } else {
                    reduce(mono_mul(m, t.exps), c * t.coeff, k - 1);
                }
            }
            return;
        }
        add(m, c);
    }
};

bool exceeds(const Presentation &pres, const Mono &m) {
    const auto &vars = pres.vars();
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (!vars[i].free && m[i] >= vars[i].degree) return true;
    return false;
}

std::vector<Term> collect(Acc &acc) {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto &[m, c] : acc)
        if (!c.is_zero()) out.push_back(Term{m, std::move(c)});
    std::sort(out.begin(), out.end(), [](const Term &a, const Term &b) { return b.exps < a.exps; });
    return out;
}

} // namespace

std::vector<Term> normal_form(const Presentation &pres, std::vector<Term> terms) {
    Reducer red{pres, {}, {}};
    if (pres.num_vars() == 0) {
        for (auto &t : terms) red.add(t.exps, t.coeff);
        return collect(red.acc);
    }
    for (auto &t : terms) {
        if (t.coeff.is_zero()) continue;
        if (exceeds(pres, t.exps))
            red.reduce(t.exps, t.coeff, pres.num_vars() - 1);
        else
            red.add(t.exps, t.coeff);
    }
    return collect(red.acc);
}

namespace kernels {

std::vector<Term> mul_sparse(const Presentation &pres, const std::vector<Term> &a, const std::vector<Term> &b) {
    Reducer red{pres, {}, {}};
    if (a.empty() || b.empty()) return {};
    red.acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1U << 20));
    bool nil = pres.pure_nilpotent();
    std::size_t last = pres.num_vars() == 0 ? 0 : pres.num_vars() - 1;
    for (const auto &x : a) {
        for (const auto &y : b) {
            Mono m = mono_mul(x.exps, y.exps);
            if (!exceeds(pres, m)) {
                red.add(m, x.coeff * y.coeff);
            } else if (!nil) {
                red.reduce(m, x.coeff * y.coeff, last);
            }
        }
    }
    return collect(red.acc);
}

} // namespace kernels

// ---------------------------------------------------------------------------
// RingElem

RingElem::RingElem(PresPtr pres) : pres_(std::move(pres)) {
    if (!pres_) throw UsageError("null presentation");
}

RingElem::RingElem(PresPtr pres, std::int64_t c) : RingElem(std::move(pres)) {
    FieldElem f(pres_->characteristic(), c);
    if (!f.is_zero()) terms_.push_back(Term{Mono{}, f});
}

RingElem::RingElem(PresPtr pres, FieldElem c) : RingElem(std::move(pres)) {
    if (c.characteristic() != pres_->characteristic()) throw PresentationMismatch("characteristic mismatch");
    if (!c.is_zero()) terms_.push_back(Term{Mono{}, std::move(c)});
}

RingElem RingElem::var(PresPtr pres, std::size_t index) {
    if (index >= pres->num_vars()) throw PresentationMismatch("variable index out of range");
    Mono m{};
    m[index] = 1;
    std::vector<Term> t{Term{m, FieldElem(pres->characteristic(), 1)}};
    return from_terms(std::move(pres), std::move(t));
}

RingElem RingElem::var(PresPtr pres, const std::string &name) {
    int i = pres->var_index(name);
    if (i < 0) throw PresentationMismatch("unknown variable: " + name);
    return var(std::move(pres), static_cast<std::size_t>(i));
}

RingElem RingElem::param(PresPtr pres, const std::string &name) {
    int i = pres->base().param_index(name);
    if (i < 0) throw PresentationMismatch("unknown parameter: " + name);
    auto f = FieldElem::param(pres->characteristic(), static_cast<std::size_t>(i));
    return RingElem(std::move(pres), f);
}

RingElem RingElem::from_terms(PresPtr pres, std::vector<Term> terms) {
    RingElem r(std::move(pres));
    r.terms_ = normal_form(*r.pres_, std::move(terms));
    return r;
}

RingElem RingElem::parse(PresPtr pres, const std::string &text) { return parse_ring(std::move(pres), text); }

bool RingElem::is_one() const { return terms_.size() == 1 && terms_[0].exps == Mono{} && terms_[0].coeff.is_one(); }

std::uint32_t RingElem::characteristic() const { return pres_->characteristic(); }

FieldElem RingElem::constant_term() const {
    if (!terms_.empty() && terms_.back().exps == Mono{}) return terms_.back().coeff;
    return FieldElem(characteristic(), 0);
}

bool RingElem::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exps == Mono{}); }

RingElem RingElem::coefficient(std::size_t var, std::uint16_t exp) const {
    RingElem r(pres_);
    for (const auto &t : terms_) {
        if (t.exps[var] != exp) continue;
        Term u = t;
        u.exps[var] = 0;
        r.terms_.push_back(std::move(u));
    }
    // Removing one variable keeps descending lex order.
    return r;
}

bool RingElem::mentions(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(), [var](const Term &t) { return t.exps[var] != 0; });
}

std::uint16_t RingElem::degree_in(std::size_t var) const {
    std::uint16_t d = 0;
    for (const auto &t : terms_) d = std::max(d, t.exps[var]);
    return d;
}

void RingElem::check_same(const RingElem &o) const {
    if (!pres_ || !o.pres_) throw UsageError("uninitialized ring element");
    if (pres_ != o.pres_ && !pres_->same_as(*o.pres_))
        throw PresentationMismatch("operands live in different presentations");
}

RingElem RingElem::operator-() const {
    RingElem r = *this;
    for (auto &t : r.terms_) t.coeff = -t.coeff;
    return r;
}

RingElem &RingElem::operator+=(const RingElem &o) {
    check_same(o);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && o.terms_[j].exps < terms_[i].exps)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || terms_[i].exps < o.terms_[j].exps) {
            out.push_back(o.terms_[j++]);
        } else {
            auto c = terms_[i].coeff + o.terms_[j].coeff;
            if (!c.is_zero()) out.push_back(Term{terms_[i].exps, std::move(c)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

RingElem &RingElem::operator-=(const RingElem &o) { return *this += -o; }

RingElem operator*(const RingElem &a, const RingElem &b) {
    a.check_same(b);
    RingElem r(a.pres_);
    if (a.is_zero() || b.is_zero()) return r;
    if (kernels::dense_applicable(*a.pres_, a, b)) {
        if (a.size() * b.size() >= kernels::kParallelThreshold)
            r.terms_ = kernels::mul_dense_parallel(*a.pres_, a.terms_, b.terms_);
        else
            r.terms_ = kernels::mul_dense_serial(*a.pres_, a.terms_, b.terms_);
    } else {
        r.terms_ = kernels::mul_sparse(*a.pres_, a.terms_, b.terms_);
    }
    return r;
}

RingElem RingElem::scaled(const FieldElem &c) const {
    RingElem r(pres_);
    if (c.is_zero()) return r;
    r.terms_ = terms_;
    for (auto &t : r.terms_) t.coeff *= c;
    return r;
}

RingElem RingElem::pow(std::uint64_t e) const {
    RingElem result(pres_, 1);
    RingElem base = *this;
    // Base-p digits: x^(sum d_k p^k) = prod (x^(p^k))^(d_k), and x^(p^k) is
    // an iterated Frobenius, which is cheap.
    std::uint32_t p = characteristic();
    while (e != 0) {
        std::uint64_t digit = e % p;
        if (digit != 0) {
            RingElem f = base;
            RingElem acc(pres_, 1);
            std::uint64_t k = digit;
            while (k != 0) {
                if (k & 1U) acc = acc * f;
                k >>= 1U;
                if (k != 0) f = f * f;
            }
            result = result * acc;
            if (result.is_zero()) return result;
        }
        e /= p;
        if (e != 0) {
            base = base.frobenius();
            if (base.is_zero()) return RingElem(pres_);
        }
    }
    return result;
}

RingElem RingElem::pow_signed(std::int64_t e) const {
    if (e < 0) throw Unsupported("negative exponent in ring power");
    return pow(static_cast<std::uint64_t>(e));
}

RingElem RingElem::frobenius() const {
    std::uint32_t p = characteristic();
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    bool nil = pres_->pure_nilpotent();
    for (const auto &t : terms_) {
        Mono m{};
        bool dead = false;
        for (std::size_t i = 0; i < pres_->num_vars(); ++i) {
            std::uint32_t e = std::uint32_t{t.exps[i]} * p;
            if (e > 0xFFFFU) throw ResourceError("monomial exponent overflow");
            m[i] = static_cast<std::uint16_t>(e);
            if (nil && e >= pres_->vars()[i].degree) dead = true;
        }
        if (!dead) raw.push_back(Term{m, t.coeff.frobenius()});
    }
    return from_terms(pres_, std::move(raw));
}

RingElem RingElem::frobenius(unsigned times) const {
    RingElem r = *this;
    for (unsigned k = 0; k < times && !r.is_zero(); ++k) r = r.frobenius();
    return r;
}

bool RingElem::is_nilpotent() const {
    const auto &vars = pres_->vars();
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].free && mentions(i))
            throw Undecidable("nilpotency of an element involving a free variable");
    std::uint64_t bound = 1;
    bool monomial_relations = true;
    for (const auto &v : vars) {
        if (v.free) continue;
        if (!v.tail.empty()) monomial_relations = false;
        bound += v.degree - 1;
    }
    if (!monomial_relations) {
        auto r = pres_->rank();
        if (!r) throw Undecidable("nilpotency bound unavailable with free variables and nontrivial tails");
        bound = *r;
    }
    // Squaring up to a power of two at least the bound.
    RingElem x = *this;
    for (std::uint64_t k = 1; k < bound && !x.is_zero(); k *= 2) x = x * x;
    return x.is_zero();
}

namespace {

std::vector<std::vector<FieldElem>> multiplication_matrix(const RingElem &a, std::uint64_t rank) {
    const auto &pres = a.presentation();
    std::vector<std::vector<FieldElem>> cols;
    cols.reserve(rank);
    std::uint32_t p = pres->characteristic();
    for (std::uint64_t j = 0; j < rank; ++j) {
        std::vector<FieldElem> e(rank, FieldElem(p, 0));
        e[j] = FieldElem(p, 1);
        cols.push_back((a * RingElem::from_coordinates(pres, e)).monomial_coordinates());
    }
    std::vector<std::vector<FieldElem>> m(rank, std::vector<FieldElem>(rank));
    for (std::uint64_t i = 0; i < rank; ++i)
        for (std::uint64_t j = 0; j < rank; ++j) m[i][j] = cols[j][i];
    return m;
}

std::uint64_t finite_rank(const Presentation &pres) {
    auto r = pres.rank();
    if (!r) throw Unsupported("operation needs a finite-rank presentation");
    return *r;
}

} // namespace

bool RingElem::only_nilpotent_vars() const {
    const auto &vars = pres_->vars();
    for (std::size_t i = 0; i < vars.size(); ++i)
        if ((vars[i].free || !vars[i].tail.empty()) && mentions(i)) return false;
    return true;
}

bool RingElem::is_unit() const {
    std::uint64_t rank = finite_rank(*pres_);
    // An element in the subring generated by variables with v^d = 0 is a
    // unit iff its constant term is.
    if (only_nilpotent_vars()) return !constant_term().is_zero();
    return linalg::rank(multiplication_matrix(*this, rank)) == rank;
}

RingElem RingElem::inverse() const {
    if (only_nilpotent_vars()) {
        FieldElem c = constant_term();
        if (c.is_zero()) throw NotInvertible("element is not a unit");
        // c(1 + n) with n nilpotent: inverse is c^{-1} sum (-n)^k.
        RingElem n = scaled(c.inverse()) - RingElem(pres_, 1);
        RingElem sum(pres_, 1);
        RingElem term(pres_, 1);
        RingElem neg = -n;
        for (;;) {
            term = term * neg;
            if (term.is_zero()) break;
            sum += term;
        }
        return sum.scaled(c.inverse());
    }
    std::uint64_t rank = finite_rank(*pres_);
    auto m = multiplication_matrix(*this, rank);
    auto rhs = RingElem(pres_, 1).monomial_coordinates();
    auto sol = linalg::solve(m, rhs);
    if (!sol) throw NotInvertible("element is not a unit");
    return from_coordinates(pres_, *sol);
}

std::vector<FieldElem> RingElem::monomial_coordinates() const {
    std::uint64_t rank = finite_rank(*pres_);
    std::vector<FieldElem> out(rank, FieldElem(characteristic(), 0));
    const auto &vars = pres_->vars();
    for (const auto &t : terms_) {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < vars.size(); ++i) idx = idx * vars[i].degree + t.exps[i];
        out[idx] = t.coeff;
    }
    return out;
}

RingElem RingElem::from_coordinates(PresPtr pres, const std::vector<FieldElem> &coords) {
    std::uint64_t rank = finite_rank(*pres);
    if (coords.size() != rank) throw UsageError("coordinate vector has wrong length");
    const auto &vars = pres->vars();
    RingElem r(pres);
    for (std::uint64_t idx = rank; idx-- > 0;) {
        if (coords[idx].is_zero()) continue;
        Mono m{};
        std::uint64_t rest = idx;
        for (std::size_t i = vars.size(); i-- > 0;) {
            m[i] = static_cast<std::uint16_t>(rest % vars[i].degree);
            rest /= vars[i].degree;
        }
        r.terms_.push_back(Term{m, coords[idx]});
    }
    return r;
}

RingElem RingElem::substitute(const std::vector<RingElem> &images) const {
    if (images.size() != pres_->num_vars()) throw UsageError("substitution needs one image per variable");
    if (images.empty()) return *this;
    const auto &target = images.front().presentation();
    for (const auto &im : images)
        if (im.presentation() != target && !im.presentation()->same_as(*target))
            throw PresentationMismatch("substitution images live in different rings");
    if (!(target->base() == pres_->base())) throw PresentationMismatch("substitution changes the base field");
    std::vector<std::map<std::uint16_t, RingElem>> cache(images.size());
    auto power = [&](std::size_t i, std::uint16_t e) -> const RingElem & {
        auto it = cache[i].find(e);
        if (it != cache[i].end()) return it->second;
        return cache[i].emplace(e, images[i].pow(e)).first->second;
    };
    RingElem result(target);
    for (const auto &t : terms_) {
        RingElem prod(target, t.coeff);
        for (std::size_t i = 0; i < images.size() && !prod.is_zero(); ++i)
            if (t.exps[i] != 0) prod = prod * power(i, t.exps[i]);
        result += prod;
    }
    return result;
}

RingElem RingElem::lift_to(PresPtr target) const {
    if (!target->extends(*pres_)) throw PresentationMismatch("target does not extend the source presentation");
    RingElem r(std::move(target));
    r.terms_ = terms_;
    return r;
}

bool operator==(const RingElem &a, const RingElem &b) {
    a.check_same(b);
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exps != b.terms_[i].exps || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
}

std::string RingElem::to_string() const {
    if (terms_.empty()) return "0";
    const auto &params = pres_->base().params();
    const auto &vars = pres_->vars();
    std::string out;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto &t = terms_[k];
        std::string mono;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (t.exps[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i].name;
            if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
        }
        std::string coeff = t.coeff.to_string(params);
        std::string piece;
        if (mono.empty()) {
            piece = t.coeff.is_compound() ? "(" + coeff + ")" : coeff;
        } else if (t.coeff.is_one()) {
            piece = mono;
        } else {
            piece = (t.coeff.is_compound() ? "(" + coeff + ")" : coeff) + "*" + mono;
        }
        if (k != 0) out += " + ";
        out += piece;
    }
    return out;
}

} // namespace uc::exactalg
