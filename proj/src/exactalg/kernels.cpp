#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "uc/exactalg/modp.hpp"
#include "uc/exactalg/ring.hpp"

namespace uc::exactalg::kernels {

namespace {

constexpr std::uint64_t kDenseRankLimit = std::uint64_t{1} << 22U;

// Mixed-radix layout of a pure nilpotent presentation. When every field
// fits in one 64-bit word, a monomial is packed with a guard bit per
// variable so that overflow past the relation degree is one mask test.
struct Layout {
    std::size_t nvars = 0;
    std::uint64_t rank = 1;
    std::vector<std::uint64_t> stride;
    std::vector<std::uint32_t> degree;
    bool packed = false;
    std::vector<unsigned> shift;
    std::vector<std::uint32_t> offset;
    std::uint64_t guard = 0;

    explicit Layout(const Presentation &pres) : nvars(pres.num_vars()) {
        stride.assign(nvars, 1);
        degree.resize(nvars);
        for (std::size_t i = 0; i < nvars; ++i) degree[i] = pres.vars()[i].degree;
        for (std::size_t i = nvars; i-- > 0;) {
            stride[i] = rank;
            rank *= degree[i];
        }
        unsigned bits = 0;
        shift.resize(nvars);
        offset.resize(nvars);
        for (std::size_t i = 0; i < nvars; ++i) {
            unsigned w = 1;
            while ((std::uint64_t{1} << w) < degree[i]) ++w;
            shift[i] = bits;
            offset[i] = (1U << w) - degree[i];
            bits += w + 1;
            guard |= std::uint64_t{1} << (shift[i] + w);
        }
        packed = bits <= 64;
    }

    std::uint64_t index(const Mono &m) const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < nvars; ++i) idx += m[i] * stride[i];
        return idx;
    }

    std::uint64_t pack(const Mono &m, bool with_offset) const {
        std::uint64_t w = 0;
        for (std::size_t i = 0; i < nvars; ++i)
            w |= std::uint64_t{m[i] + (with_offset ? offset[i] : 0U)} << shift[i];
        return w;
    }
};

struct Prepared {
    std::vector<std::uint64_t> index;
    std::vector<std::uint64_t> packed;
    std::vector<std::uint32_t> coeff;
    std::vector<const Mono *> mono;
};

Prepared prepare(const Layout &lay, const std::vector<Term> &t, bool with_offset) {
    Prepared r;
    r.index.reserve(t.size());
    r.packed.reserve(t.size());
    r.coeff.reserve(t.size());
    for (const auto &x : t) {
        r.index.push_back(lay.index(x.exps));
        r.packed.push_back(lay.packed ? lay.pack(x.exps, with_offset) : 0);
        r.coeff.push_back(x.coeff.scalar());
        r.mono.push_back(&x.exps);
    }
    return r;
}

bool fits(const Layout &lay, const Mono &a, const Mono &b) {
    for (std::size_t i = 0; i < lay.nvars; ++i)
        if (std::uint32_t{a[i]} + b[i] >= lay.degree[i]) return false;
    return true;
}

// Accumulates the products of rows [begin, end) of a into acc, reducing
// mod p often enough that the 64-bit counters cannot overflow.
void accumulate(const Layout &lay, const Prepared &a, const Prepared &b, std::size_t begin, std::size_t end,
                std::uint32_t p, std::vector<std::uint64_t> &acc, std::uint64_t &adds) {
    const std::uint64_t pp = std::uint64_t{p - 1} * (p - 1);
    const std::uint64_t safe = pp == 0 ? ~std::uint64_t{0} : (~std::uint64_t{0} - p) / pp;
    for (std::size_t i = begin; i < end; ++i) {
        if (adds + b.index.size() > safe) {
            for (auto &v : acc) v %= p;
            adds = 0;
        }
        const std::uint64_t ia = a.index[i];
        const std::uint64_t ca = a.coeff[i];
        const std::uint64_t pa = a.packed[i];
        for (std::size_t j = 0; j < b.index.size(); ++j) {
            if (lay.packed) {
                if ((pa + b.packed[j]) & lay.guard) continue;
            } else if (!fits(lay, *a.mono[i], *b.mono[j])) {
                continue;
            }
            acc[ia + b.index[j]] += ca * b.coeff[j];
        }
        adds += b.index.size();
    }
}

std::vector<Term> unpack(const Layout &lay, const std::vector<std::uint64_t> &acc, std::uint32_t p) {
    std::vector<Term> out;
    for (std::uint64_t idx = lay.rank; idx-- > 0;) {
        std::uint32_t c = static_cast<std::uint32_t>(acc[idx] % p);
        if (c == 0) continue;
        Mono m{};
        std::uint64_t rest = idx;
        for (std::size_t i = lay.nvars; i-- > 0;) {
            m[i] = static_cast<std::uint16_t>(rest % lay.degree[i]);
            rest /= lay.degree[i];
        }
        out.push_back(Term{m, FieldElem(p, c)});
    }
    return out;
}

bool all_scalar(const RingElem &a) {
    for (const auto &t : a.terms())
        if (!t.coeff.is_scalar()) return false;
    return true;
}

} // namespace

bool dense_applicable(const Presentation &pres, const RingElem &a, const RingElem &b) {
    if (pres.num_vars() == 0 || !pres.pure_nilpotent()) return false;
    auto r = pres.rank();
    if (!r || *r > kDenseRankLimit) return false;
    return all_scalar(a) && all_scalar(b);
}

std::vector<Term> mul_dense_serial(const Presentation &pres, const std::vector<Term> &a, const std::vector<Term> &b) {
    Layout lay(pres);
    std::uint32_t p = pres.characteristic();
    auto pa = prepare(lay, a, true);
    auto pb = prepare(lay, b, false);
    std::vector<std::uint64_t> acc(lay.rank, 0);
    std::uint64_t adds = 0;
    accumulate(lay, pa, pb, 0, a.size(), p, acc, adds);
    return unpack(lay, acc, p);
}

std::vector<Term> mul_dense_parallel(const Presentation &pres, const std::vector<Term> &a,
                                     const std::vector<Term> &b) {
    Layout lay(pres);
    std::uint32_t p = pres.characteristic();
    auto pa = prepare(lay, a, true);
    auto pb = prepare(lay, b, false);
    std::vector<std::uint64_t> total(lay.rank, 0);
    const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(lay.rank, 0);
        std::uint64_t adds = 0;
        // Chunks of rows; each thread reduces its own accumulator.
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < n; ++i)
            accumulate(lay, pa, pb, static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1, p, local, adds);
#pragma omp critical
        {
            for (std::uint64_t k = 0; k < lay.rank; ++k) total[k] = (total[k] + local[k] % p) % p;
        }
    }
    return unpack(lay, total, p);
}

} // namespace uc::exactalg::kernels
