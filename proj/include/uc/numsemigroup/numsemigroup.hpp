#pragma once

#include <cstdint>
#include <vector>

namespace uc::numsemigroup {

// Additive submonoid of the naturals with finite complement, stored as a
// membership table up to the conductor. Integers at or above the conductor
// are members; negative integers never are.
class NumericalSemigroup {
public:
    static NumericalSemigroup from_generators(std::vector<std::int64_t> gens);
    static NumericalSemigroup naturals();

    const std::vector<std::int64_t> &generators() const { return gens_; }
    bool contains(std::int64_t a) const;
    std::int64_t conductor() const { return conductor_; }
    std::int64_t genus() const { return genus_; }
    std::int64_t multiplicity() const { return multiplicity_; }
    std::vector<std::int64_t> gaps() const;
    std::vector<std::int64_t> minimal_generators() const;
    // Members in [0, bound].
    std::vector<std::int64_t> elements_up_to(std::int64_t bound) const;

    friend bool operator==(const NumericalSemigroup &a, const NumericalSemigroup &b);

private:
    NumericalSemigroup() = default;

    std::vector<std::int64_t> gens_;
    std::vector<bool> member_;  // indices [0, conductor)
    std::int64_t conductor_ = 0;
    std::int64_t genus_ = 0;
    std::int64_t multiplicity_ = 1;
};

// <p^n, p^n - p^j : 0 <= j < n>.
NumericalSemigroup gamma_pn(std::int64_t p, unsigned n);

struct InvariantFormulas {
    std::int64_t c = 0;
    std::int64_t g = 0;
    std::int64_t e = 0;
    std::int64_t d = 0;
};

InvariantFormulas invariant_formulas(std::int64_t p, unsigned n);

struct GluingResult {
    NumericalSemigroup semigroup;
    std::int64_t predicted_conductor;
};

// a1 S1 + a2 S2, with gcd(a1, a2) = 1, a1 in S2 and a2 in S1.
GluingResult gluing(std::int64_t a1, const NumericalSemigroup &s1, std::int64_t a2, const NumericalSemigroup &s2);

// <b, a_i - b> for the multiplicity b and the other minimal generators a_i.
NumericalSemigroup blowup(const NumericalSemigroup &s);

// c = 2g, cross-checked against the reflection a in S <=> c-1-a not in S.
bool is_symmetric(const NumericalSemigroup &s);

// (s_0, ..., s_N) with s_a = 1 iff a is a member.
std::vector<std::uint32_t> membership_series(const NumericalSemigroup &s, std::int64_t N);

std::int64_t ipow(std::int64_t b, unsigned e);

} // namespace uc::numsemigroup
