#include "uc/numsemigroup/numsemigroup.hpp"

#include <algorithm>
#include <numeric>

#include "uc/errors.hpp"

namespace uc::numsemigroup {

std::int64_t ipow(std::int64_t b, unsigned e) {
    std::int64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (std::int64_t{1} << 62) / b) throw ResourceError("integer overflow");
        r *= b;
    }
    return r;
}

NumericalSemigroup NumericalSemigroup::from_generators(std::vector<std::int64_t> gens) {
    if (gens.empty()) throw UsageError("empty generator set");
    std::int64_t g = 0;
    for (auto x : gens) {
        if (x <= 0) throw UsageError("generators must be positive");
        g = std::gcd(g, x);
    }
    if (g != 1) throw NotNumericalSemigroup("generators have gcd " + std::to_string(g));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::int64_t m = gens.back();

    NumericalSemigroup s;
    s.gens_ = gens;
    // Table until a run of m consecutive members certifies the conductor:
    // every later integer is a run member plus a multiple of some generator.
    std::vector<bool> t{true};
    std::int64_t run = 1;
    std::int64_t a = 0;
    while (run < m) {
        ++a;
        bool in = false;
        for (auto x : gens) {
            if (x > a) break;
            if (t[static_cast<std::size_t>(a - x)]) {
                in = true;
                break;
            }
        }
        t.push_back(in);
        run = in ? run + 1 : 0;
    }
    s.conductor_ = a - run + 1;
    t.resize(static_cast<std::size_t>(s.conductor_));
    s.member_ = std::move(t);
    s.genus_ = std::count(s.member_.begin(), s.member_.end(), false);
    s.multiplicity_ = gens.front();
    return s;
}

NumericalSemigroup NumericalSemigroup::naturals() { return from_generators({1}); }

bool NumericalSemigroup::contains(std::int64_t a) const {
    if (a < 0) return false;
    if (a >= conductor_) return true;
    return member_[static_cast<std::size_t>(a)];
}

std::vector<std::int64_t> NumericalSemigroup::gaps() const {
    std::vector<std::int64_t> r;
    for (std::int64_t a = 0; a < conductor_; ++a)
        if (!member_[static_cast<std::size_t>(a)]) r.push_back(a);
    return r;
}

std::vector<std::int64_t> NumericalSemigroup::minimal_generators() const {
    // Every minimal generator occurs in any generating set, so it is enough
    // to test the stored generators for decomposability.
    std::vector<std::int64_t> mins;
    for (auto a : gens_) {
        bool decomposable = false;
        for (std::int64_t b = 1; b <= a / 2 && !decomposable; ++b)
            decomposable = contains(b) && contains(a - b);
        if (!decomposable) mins.push_back(a);
    }
    return mins;
}

std::vector<std::int64_t> NumericalSemigroup::elements_up_to(std::int64_t bound) const {
    std::vector<std::int64_t> r;
    for (std::int64_t a = 0; a <= bound; ++a)
        if (contains(a)) r.push_back(a);
    return r;
}

bool operator==(const NumericalSemigroup &a, const NumericalSemigroup &b) {
    return a.conductor_ == b.conductor_ && a.member_ == b.member_;
}

NumericalSemigroup gamma_pn(std::int64_t p, unsigned n) {
    std::int64_t q = ipow(p, n);
    std::vector<std::int64_t> gens{q};
    for (unsigned j = 0; j < n; ++j) gens.push_back(q - ipow(p, j));
    return NumericalSemigroup::from_generators(gens);
}

InvariantFormulas invariant_formulas(std::int64_t p, unsigned n) {
    InvariantFormulas f;
    std::int64_t pn = ipow(p, n);
    f.c = static_cast<std::int64_t>(n) * pn * p - static_cast<std::int64_t>(n + 2) * pn + 2;
    f.g = f.c / 2;
    f.e = pn >= 3 ? ipow(p, n - 1) * (p - 1) : 1;
    f.d = (p >= 3 || n == 0) ? n + 1 : n;
    return f;
}

GluingResult gluing(std::int64_t a1, const NumericalSemigroup &s1, std::int64_t a2, const NumericalSemigroup &s2) {
    if (a1 <= 0 || a2 <= 0) throw GluingHypothesis("gluing factors must be positive");
    if (std::gcd(a1, a2) != 1) throw GluingHypothesis("gluing factors are not coprime");
    if (!s2.contains(a1)) throw GluingHypothesis("a1 is not a member of S2");
    if (!s1.contains(a2)) throw GluingHypothesis("a2 is not a member of S1");
    std::vector<std::int64_t> gens;
    for (auto g : s1.minimal_generators()) gens.push_back(a1 * g);
    for (auto g : s2.minimal_generators()) gens.push_back(a2 * g);
    auto s = NumericalSemigroup::from_generators(gens);
    return GluingResult{s, a1 * s1.conductor() + a2 * s2.conductor() + (a1 - 1) * (a2 - 1)};
}

NumericalSemigroup blowup(const NumericalSemigroup &s) {
    auto mins = s.minimal_generators();
    std::int64_t b = mins.front();
    std::vector<std::int64_t> gens{b};
    for (std::size_t i = 1; i < mins.size(); ++i) gens.push_back(mins[i] - b);
    return NumericalSemigroup::from_generators(gens);
}

bool is_symmetric(const NumericalSemigroup &s) {
    bool by_count = s.conductor() == 2 * s.genus();
    bool by_reflection = true;
    for (std::int64_t a = 0; a < s.conductor(); ++a)
        if (s.contains(a) == s.contains(s.conductor() - 1 - a)) by_reflection = false;
    if (by_count != by_reflection) throw ConsistencyError("symmetry characterizations disagree");
    return by_count;
}

std::vector<std::uint32_t> membership_series(const NumericalSemigroup &s, std::int64_t N) {
    if (N < 0) throw UsageError("negative series length");
    std::vector<std::uint32_t> r;
    r.reserve(static_cast<std::size_t>(N + 1));
    for (std::int64_t a = 0; a <= N; ++a) r.push_back(s.contains(a) ? 1U : 0U);
    return r;
}

} // namespace uc::numsemigroup
