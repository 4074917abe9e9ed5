#pragma once

// Hand-built bidirected grids: the block model V_c (+) W_r with explicit
// structure maps, optionally scrambled cell by cell.

#include "tatespace/bidirected.hpp"
#include "tatespace/linalg.hpp"

#include <functional>

namespace fixtures {

using namespace tatespace;

struct Model {
    BidirectedGrid grid;
    SESWitness ses;
};

/// scramble(r, c, dim) returns the invertible matrix applied to cell (r, c).
inline Model block_model(const FieldSpec& f, std::vector<std::size_t> v_dims, std::vector<Matrix> v_maps,
                         std::vector<std::size_t> w_dims, std::vector<Matrix> w_maps,
                         const std::function<Matrix(std::size_t, std::size_t, std::size_t)>& scramble = {})
{
    Model out;
    const std::size_t m = w_dims.size(), n = v_dims.size();
    BidirectedGrid& g = out.grid;
    g.field = f;
    g.m = m;
    g.n = n;
    g.dims.assign(m, std::vector<std::size_t>(n));
    std::vector<std::vector<Matrix>> s(m, std::vector<Matrix>(n)), s_inv(m, std::vector<Matrix>(n));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t d = v_dims[c] + w_dims[r];
            g.dims[r][c] = d;
            s[r][c] = scramble ? scramble(r, c, d) : Matrix::identity(f, d);
            s_inv[r][c] = *inverse(s[r][c]);
        }
    g.right.assign(m, std::vector<Matrix>(n - 1));
    g.up.assign(m - 1, std::vector<Matrix>(n));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c + 1 < n; ++c)
            g.right[r][c] = s[r][c + 1] * block_diag(v_maps[c], Matrix::identity(f, w_dims[r])) * s_inv[r][c];
    for (std::size_t r = 0; r + 1 < m; ++r)
        for (std::size_t c = 0; c < n; ++c)
            g.up[r][c] = s[r][c] * block_diag(Matrix::identity(f, v_dims[c]), w_maps[r]) * s_inv[r + 1][c];

    SESWitness& w = out.ses;
    w.v_dims = v_dims;
    w.v_maps = v_maps;
    w.w_dims = w_dims;
    w.w_maps = w_maps;
    w.inj.assign(m, std::vector<Matrix>(n));
    w.surj.assign(m, std::vector<Matrix>(n));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t dv = v_dims[c], dw = w_dims[r];
            w.inj[r][c] = s[r][c] * Matrix::identity(f, dv).vstack(Matrix::zero(f, dw, dv));
            w.surj[r][c] = Matrix::zero(f, dw, dv).hstack(Matrix::identity(f, dw)) * s_inv[r][c];
        }
    return out;
}

/// True when every conjugated right map is diag(v_map, I) and every
/// conjugated up map is diag(I, w_map).
inline bool block_diagonal(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& b)
{
    for (std::size_t r = 0; r < g.m; ++r)
        for (std::size_t c = 0; c + 1 < g.n; ++c)
            if (!(b.basis[r][c + 1] * g.right[r][c] * b.inverse[r][c] ==
                  block_diag(w.v_maps[c], Matrix::identity(g.field, w.w_dims[r]))))
                return false;
    for (std::size_t r = 0; r + 1 < g.m; ++r)
        for (std::size_t c = 0; c < g.n; ++c)
            if (!(b.basis[r][c] * g.up[r][c] * b.inverse[r + 1][c] ==
                  block_diag(Matrix::identity(g.field, w.v_dims[c]), w.w_maps[r])))
                return false;
    for (std::size_t r = 0; r < g.m; ++r)
        for (std::size_t c = 0; c < g.n; ++c) {
            const std::size_t dv = w.v_dims[c], dw = w.w_dims[r];
            if (!(b.basis[r][c] * b.inverse[r][c] == Matrix::identity(g.field, g.dims[r][c])) ||
                !(b.basis[r][c] * w.inj[r][c] == Matrix::identity(g.field, dv).vstack(Matrix::zero(g.field, dw, dv))) ||
                !(w.surj[r][c] * b.inverse[r][c] == Matrix::zero(g.field, dw, dv).hstack(Matrix::identity(g.field, dw))))
                return false;
        }
    return true;
}

}  // namespace fixtures
