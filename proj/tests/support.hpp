#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "uc/exactalg/ring.hpp"

namespace test {

using namespace uc::exactalg;

inline constexpr std::uint64_t kSeed = 20240611;

// Polynomials over F_p with scalar coefficients, keyed by exponent vector.
using NaivePoly = std::map<std::vector<int>, std::int64_t>;

struct NaiveRel {
    std::size_t var;
    int degree;
    NaivePoly tail;
};

inline std::int64_t md(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline NaivePoly naive_mul(const NaivePoly &a, const NaivePoly &b, std::int64_t p) {
    NaivePoly r;
    for (const auto &[ea, ca] : a)
        for (const auto &[eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r[e] = md(r[e] + ca * cb, p);
        }
    std::erase_if(r, [](const auto &kv) { return kv.second == 0; });
    return r;
}

// Rewrites any term divisible by v^d into v^(e-d) * tail until none is
// left. Order of rewriting is arbitrary: the first offending term found.
inline NaivePoly naive_reduce(NaivePoly f, const std::vector<NaiveRel> &rels, std::int64_t p) {
    for (;;) {
        bool changed = false;
        for (auto it = f.begin(); it != f.end() && !changed; ++it) {
            for (const auto &r : rels) {
                if (it->first[r.var] < r.degree) continue;
                std::vector<int> rest = it->first;
                rest[r.var] -= r.degree;
                NaivePoly m{{rest, it->second}};
                NaivePoly add = naive_mul(m, r.tail, p);
                f.erase(it);
                for (const auto &[e, c] : add) f[e] = md(f[e] + c, p);
                std::erase_if(f, [](const auto &kv) { return kv.second == 0; });
                changed = true;
                break;
            }
        }
        if (!changed) return f;
    }
}

inline NaivePoly to_naive(const RingElem &x) {
    NaivePoly r;
    std::size_t nv = x.presentation()->num_vars();
    for (const auto &t : x.terms()) {
        std::vector<int> e(nv);
        for (std::size_t i = 0; i < nv; ++i) e[i] = t.exps[i];
        r[e] = t.coeff.scalar();
    }
    return r;
}

inline RingElem from_naive(const PresPtr &pres, const NaivePoly &f) {
    std::vector<Term> ts;
    for (const auto &[e, c] : f) {
        Term t;
        for (std::size_t i = 0; i < e.size(); ++i) t.exps[i] = static_cast<std::uint16_t>(e[i]);
        t.coeff = FieldElem(pres->characteristic(), c);
        ts.push_back(t);
    }
    return RingElem::from_terms(pres, ts);
}

// Random element with scalar coefficients; exponents below the relation
// degree, or below free_cap for free variables.
inline NaivePoly random_naive(const Presentation &pres, std::mt19937_64 &rng, int nterms, int free_cap = 4) {
    std::int64_t p = pres.characteristic();
    NaivePoly f;
    for (int k = 0; k < nterms; ++k) {
        std::vector<int> e(pres.num_vars());
        for (std::size_t i = 0; i < e.size(); ++i) {
            const auto &v = pres.vars()[i];
            int cap = v.free ? free_cap : static_cast<int>(v.degree);
            e[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(cap));
        }
        f[e] = md(f[e] + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p)), p);
    }
    std::erase_if(f, [](const auto &kv) { return kv.second == 0; });
    return f;
}

// Every element of a finite F_p-algebra, by coordinates.
inline std::vector<RingElem> all_elements(const PresPtr &pres) {
    std::uint32_t p = pres->characteristic();
    std::uint64_t rank = *pres->rank();
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < rank; ++i) total *= p;
    std::vector<RingElem> out;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<FieldElem> c;
        std::uint64_t k = code;
        for (std::uint64_t i = 0; i < rank; ++i) {
            c.emplace_back(p, static_cast<std::int64_t>(k % p));
            k /= p;
        }
        out.push_back(RingElem::from_coordinates(pres, c));
    }
    return out;
}

} // namespace test
