#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uc/exactalg/field.hpp"

namespace uc::exactalg::linalg {

using Matrix = std::vector<std::vector<FieldElem>>;

// Row rank by Gaussian elimination.
std::uint64_t rank(Matrix m);

// Solves m x = b for square m; nullopt when m is singular.
std::optional<std::vector<FieldElem>> solve(Matrix m, std::vector<FieldElem> b);

// Rank over F_p of a matrix with residue entries.
std::uint64_t rank_mod_p(std::vector<std::vector<std::uint32_t>> m, std::uint32_t p);

} // namespace uc::exactalg::linalg
