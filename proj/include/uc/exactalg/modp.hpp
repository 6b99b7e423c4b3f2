#pragma once

#include <cstdint>

#include "uc/errors.hpp"

namespace uc::exactalg {

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p ? s - p : s);
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p - b);
}

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
}

inline std::uint32_t neg_mod(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
    std::uint32_t r = 1 % p;
    while (e != 0) {
        if (e & 1U) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1U;
    }
    return r;
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw NotInvertible("zero has no inverse in F_p");
    return pow_mod(a, p - 2, p);
}

// Reduces a signed integer into [0, p).
inline std::uint32_t reduce_mod(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace uc::exactalg
