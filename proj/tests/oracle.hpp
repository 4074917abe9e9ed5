#pragma once

// Brute-force reference computations for the tests. They enumerate vectors
// over GF(p) instead of eliminating, so they share no code path with the
// library's linear algebra. Keep inputs tiny: cost is p^cols.

#include "tatespace/matrix.hpp"

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<std::uint32_t>;

/// All vectors of length n over GF(p), in lexicographic order.
inline std::vector<Vec> all_vectors(std::uint32_t p, std::size_t n)
{
    std::vector<Vec> out{Vec(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Vec> next;
        for (const Vec& v : out)
            for (std::uint32_t x = 0; x < p; ++x) {
                Vec w = v;
                w[i] = x;
                next.push_back(std::move(w));
            }
        out = std::move(next);
    }
    return out;
}

inline Vec apply(const tatespace::Matrix& m, const Vec& x)
{
    const std::uint64_t p = m.field().p();
    Vec y(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint64_t s = 0;
        for (std::size_t c = 0; c < m.cols(); ++c)
            s = (s + static_cast<std::uint64_t>(m(r, c)) * x[c]) % p;
        y[r] = static_cast<std::uint32_t>(s);
    }
    return y;
}

inline std::set<Vec> image_set(const tatespace::Matrix& m)
{
    std::set<Vec> out;
    for (const Vec& x : all_vectors(m.field().p(), m.cols()))
        out.insert(apply(m, x));
    return out;
}

/// log_p of a power of p.
inline std::size_t log_p(std::size_t count, std::uint32_t p)
{
    std::size_t k = 0;
    while (count > 1) {
        count /= p;
        ++k;
    }
    return k;
}

inline std::size_t rank(const tatespace::Matrix& m)
{
    return log_p(image_set(m).size(), m.field().p());
}

inline std::size_t kernel_dim(const tatespace::Matrix& m)
{
    std::size_t zeros = 0;
    const Vec zero(m.rows(), 0);
    for (const Vec& x : all_vectors(m.field().p(), m.cols()))
        zeros += apply(m, x) == zero;
    return log_p(zeros, m.field().p());
}

inline Vec column(const tatespace::Matrix& m, std::size_t c)
{
    Vec v(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        v[r] = m(r, c);
    return v;
}

/// Is every column of `sub` a combination of the columns of `super`?
inline bool span_contains(const tatespace::Matrix& super, const tatespace::Matrix& sub)
{
    const auto span = image_set(super);
    for (std::size_t c = 0; c < sub.cols(); ++c)
        if (!span.count(column(sub, c)))
            return false;
    return true;
}

inline bool solvable(const tatespace::Matrix& m, const tatespace::Matrix& b)
{
    return oracle::span_contains(m, b);
}

/// Diagonal enumeration of in-range index pairs, built by walking i + j = s.
inline std::vector<std::pair<std::size_t, std::size_t>> diagonal_pairs(std::size_t len_a, std::size_t len_b,
                                                                       std::size_t count)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t s = 0; out.size() < count && s < len_a + len_b; ++s)
        for (std::size_t i = 0; i <= s && out.size() < count; ++i)
            if (i < len_a && s - i < len_b)
                out.emplace_back(i, s - i);
    return out;
}

}  // namespace oracle
