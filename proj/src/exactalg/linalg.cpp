#include "uc/exactalg/linalg.hpp"

#include <utility>

#include "uc/errors.hpp"
#include "uc/exactalg/modp.hpp"

namespace uc::exactalg::linalg {

namespace {

std::size_t width(const Matrix &m) { return m.empty() ? 0 : m.front().size(); }

} // namespace

std::uint64_t rank(Matrix m) {
    std::size_t rows = m.size();
    std::size_t cols = width(m);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (!m[i][c].is_zero()) {
                piv = i;
                break;
            }
        }
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        FieldElem inv = m[r][c].inverse();
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c].is_zero()) continue;
            FieldElem f = m[i][c] * inv;
            for (std::size_t k = c; k < cols; ++k) {
                if (m[r][k].is_zero()) continue;
                m[i][k] = (m[i][k] - f * m[r][k]).reduced();
            }
        }
        ++r;
    }
    return r;
}

std::optional<std::vector<FieldElem>> solve(Matrix m, std::vector<FieldElem> b) {
    std::size_t n = m.size();
    if (b.size() != n || width(m) != n) throw UsageError("solve needs a square system");
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i) {
            if (!m[i][c].is_zero()) {
                piv = i;
                break;
            }
        }
        if (piv == n) return std::nullopt;
        std::swap(m[c], m[piv]);
        std::swap(b[c], b[piv]);
        FieldElem inv = m[c][c].inverse();
        for (std::size_t k = c; k < n; ++k) m[c][k] = (m[c][k] * inv).reduced();
        b[c] = (b[c] * inv).reduced();
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c].is_zero()) continue;
            FieldElem f = m[i][c];
            for (std::size_t k = c; k < n; ++k)
                if (!m[c][k].is_zero()) m[i][k] = (m[i][k] - f * m[c][k]).reduced();
            b[i] = (b[i] - f * b[c]).reduced();
        }
    }
    return b;
}

std::uint64_t rank_mod_p(std::vector<std::vector<std::uint32_t>> m, std::uint32_t p) {
    std::size_t rows = m.size();
    std::size_t cols = m.empty() ? 0 : m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (m[i][c] % p != 0) {
                piv = i;
                break;
            }
        }
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        std::uint32_t inv = inv_mod(m[r][c] % p, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            std::uint32_t f = mul_mod(m[i][c] % p, inv, p);
            if (f == 0) continue;
            for (std::size_t k = c; k < cols; ++k) m[i][k] = sub_mod(m[i][k] % p, mul_mod(f, m[r][k] % p, p), p);
        }
        ++r;
    }
    return r;
}

} // namespace uc::exactalg::linalg
