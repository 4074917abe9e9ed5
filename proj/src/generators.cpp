#include "tatespace/generators.hpp"

#include "tatespace/linalg.hpp"

#include <algorithm>

namespace tatespace {

Matrix Rng::matrix(const FieldSpec& f, std::size_t rows, std::size_t cols)
{
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, residue(f));
    return m;
}

Matrix Rng::invertible(const FieldSpec& f, std::size_t n)
{
    for (;;) {
        Matrix m = matrix(f, n, n);
        if (is_invertible(m))
            return m;
    }
}

Matrix Rng::injective(const FieldSpec& f, std::size_t rows, std::size_t cols)
{
    for (;;) {
        Matrix m = matrix(f, rows, cols);
        if (rank(m) == cols)
            return m;
    }
}

Matrix Rng::surjective(const FieldSpec& f, std::size_t rows, std::size_t cols)
{
    return injective(f, cols, rows).transpose();
}

namespace {

template <Direction D>
System<D> random_system(Rng& rng, const FieldSpec& f, std::size_t max_dim, std::size_t depth)
{
    Prefix p{f, {}, {}};
    for (std::size_t i = 0; i < depth; ++i)
        p.dims.push_back(rng.range(0, max_dim));
    std::size_t worst = 0;
    for (std::size_t i = 0; i + 1 < depth; ++i) {
        const Matrix t = D == Direction::inverse ? rng.matrix(f, p.dims[i], p.dims[i + 1])
                                                 : rng.matrix(f, p.dims[i + 1], p.dims[i]);
        worst = std::max(worst, D == Direction::inverse ? kernel_dim(t) : cokernel_dim(t));
        p.transitions.push_back(t);
    }
    switch (rng.next() % 3) {
    case 0:
        return System<D>::from_prefix(p, TailDescriptor::unspecified());
    case 1:
        return System<D>::from_prefix(p, D == Direction::inverse ? TailDescriptor::bounded_ker(worst)
                                                                 : TailDescriptor::bounded_coker(worst));
    default:
        return System<D>::from_prefix(p, TailDescriptor::stabilizing(depth));
    }
}

}  // namespace

Tower random_tower(Rng& rng, const FieldSpec& f, std::size_t max_dim, std::size_t depth)
{
    return random_system<Direction::inverse>(rng, f, max_dim, depth);
}

IndTower random_indtower(Rng& rng, const FieldSpec& f, std::size_t max_dim, std::size_t depth)
{
    return random_system<Direction::direct>(rng, f, max_dim, depth);
}

TateObj random_tate(Rng& rng, const FieldSpec& f, std::size_t max_dim, std::size_t depth)
{
    Tower c = random_tower(rng, f, max_dim, depth);
    IndTower d = random_indtower(rng, f, max_dim, depth);
    return {std::move(c), std::move(d)};
}

IndLCObj random_indlc(Rng& rng, const FieldSpec& f, std::size_t max_pieces, std::size_t max_dim, std::size_t depth)
{
    std::vector<Tower> pieces;
    const std::size_t count = rng.range(1, max_pieces);
    for (std::size_t i = 0; i < count; ++i)
        pieces.push_back(random_tower(rng, f, max_dim, depth));
    return {f, LazySeq<Tower>::from_vector(std::move(pieces))};
}

FilteredSpace random_filtered(Rng& rng, const FieldSpec& f, std::size_t ambient, std::size_t max_flags)
{
    const Matrix frame = rng.invertible(f, ambient);
    const std::size_t count = rng.range(1, std::max<std::size_t>(max_flags, 1));
    // nonincreasing dims ending in 0
    std::vector<std::size_t> dims(count, 0);
    std::size_t cur = ambient;
    for (std::size_t k = 0; k + 1 < count; ++k) {
        cur = rng.range(0, cur);
        dims[k] = cur;
    }
    std::vector<Matrix> flags;
    for (std::size_t d : dims)
        flags.push_back(frame.block(0, ambient - d, ambient, d));
    return FilteredSpace(f, ambient, std::move(flags));
}

PlantedGrid random_planted_grid(Rng& rng, const FieldSpec& f, std::size_t max_m, std::size_t max_n,
                                std::size_t max_cell)
{
    PlantedGrid out;
    const std::size_t m = rng.range(1, max_m), n = rng.range(1, max_n);
    auto& truth = out.truth;
    const std::size_t half = max_cell / 2;
    for (std::size_t c = 0; c < n; ++c)
        truth.v_dims.push_back(rng.range(0, half));
    for (std::size_t r = 0; r < m; ++r)
        truth.w_dims.push_back(rng.range(0, max_cell - half));

    SESWitness& w = out.ses;
    w.v_dims = truth.v_dims;
    w.w_dims = truth.w_dims;
    for (std::size_t c = 0; c + 1 < n; ++c)
        w.v_maps.push_back(rng.matrix(f, w.v_dims[c + 1], w.v_dims[c]));
    for (std::size_t r = 0; r + 1 < m; ++r)
        w.w_maps.push_back(rng.matrix(f, w.w_dims[r], w.w_dims[r + 1]));

    BidirectedGrid& g = out.grid;
    g.field = f;
    g.m = m;
    g.n = n;
    g.dims.assign(m, std::vector<std::size_t>(n));
    truth.scramble.assign(m, std::vector<Matrix>(n));
    std::vector<std::vector<Matrix>> unscramble(m, std::vector<Matrix>(n));
    w.inj.assign(m, std::vector<Matrix>(n));
    w.surj.assign(m, std::vector<Matrix>(n));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t dv = w.v_dims[c], dw = w.w_dims[r];
            g.dims[r][c] = dv + dw;
            truth.scramble[r][c] = rng.invertible(f, dv + dw);
            unscramble[r][c] = *inverse(truth.scramble[r][c]);
            w.inj[r][c] = truth.scramble[r][c] * Matrix::identity(f, dv).vstack(Matrix::zero(f, dw, dv));
            w.surj[r][c] = Matrix::zero(f, dw, dv).hstack(Matrix::identity(f, dw)) * unscramble[r][c];
        }
    g.right.assign(m, std::vector<Matrix>(n - 1));
    g.up.assign(m - 1, std::vector<Matrix>(n));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c + 1 < n; ++c)
            g.right[r][c] = truth.scramble[r][c + 1] *
                            block_diag(w.v_maps[c], Matrix::identity(f, w.w_dims[r])) * unscramble[r][c];
    for (std::size_t r = 0; r + 1 < m; ++r)
        for (std::size_t c = 0; c < n; ++c)
            g.up[r][c] = truth.scramble[r][c] *
                         block_diag(Matrix::identity(f, w.v_dims[c]), w.w_maps[r]) * unscramble[r + 1][c];
    return out;
}

PlantedPairings plant_pairings(Rng& rng, const PlantedGrid& pg)
{
    const BidirectedGrid& g = pg.grid;
    const SESWitness& w = pg.ses;
    const FieldSpec& f = g.field;
    const std::size_t m = g.m, n = g.n;

    // ell_c = ell_n f_{n<-c}, u_c = f_{c<-1} u_1 on V; m_r = m_1 g_{1<-r}, z_r = g_{r<-m} z_m on W.
    std::vector<Matrix> ell(n), u(n), mu_w(m), z(m);
    ell[n - 1] = rng.matrix(f, 1, w.v_dims[n - 1]);
    for (std::size_t c = n - 1; c > 0; --c)
        ell[c - 1] = ell[c] * w.v_maps[c - 1];
    u[0] = rng.matrix(f, w.v_dims[0], 1);
    for (std::size_t c = 1; c < n; ++c)
        u[c] = w.v_maps[c - 1] * u[c - 1];
    mu_w[0] = rng.matrix(f, 1, w.w_dims[0]);
    for (std::size_t r = 1; r < m; ++r)
        mu_w[r] = mu_w[r - 1] * w.w_maps[r - 1];
    z[m - 1] = rng.matrix(f, w.w_dims[m - 1], 1);
    for (std::size_t r = m - 1; r > 0; --r)
        z[r - 1] = w.w_maps[r - 1] * z[r];

    PlantedPairings out;
    out.product.kind = PairingKind::product;
    out.coproduct.kind = PairingKind::coproduct;
    out.product_induced.assign(m, std::vector<Matrix>(n));
    out.coproduct_induced.assign(m, std::vector<Matrix>(n));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t dv = w.v_dims[c], dw = w.w_dims[r];
            const Matrix zero_w = Matrix::zero(f, 1, dw);
            const Matrix zero_v = Matrix::zero(f, 1, dv);
            const Matrix lv = ell[c].hstack(zero_w);   // ell_c on V (+) W
            const Matrix mw = zero_v.hstack(mu_w[r]);  // m_r on V (+) W
            const Matrix uv = u[c].vstack(Matrix::zero(f, dw, 1));
            const Matrix zw = Matrix::zero(f, dv, 1).vstack(z[r]);

            const Matrix product_nf = uv * kron(lv, lv) + uv * kron(lv, mw) + zw * kron(mw, mw);
            const Matrix coproduct_nf = kron(uv, uv) * lv + kron(zw, zw) * mw;
            const Matrix& s = pg.truth.scramble[r][c];
            const Matrix s_inv = *inverse(s);
            out.product.entries.push_back({r, c, r, c, s * product_nf * kron(s_inv, s_inv)});
            out.coproduct.entries.push_back({r, c, r, c, kron(s, s) * coproduct_nf * s_inv});
            out.product_induced[r][c] = z[r] * kron(mu_w[r], mu_w[r]);
            out.coproduct_induced[r][c] = kron(u[c], u[c]) * ell[c];
        }
    return out;
}

PlantedDuality plant_duality(Rng& rng, const BidirectedGrid& g, const PairingFamily& product)
{
    PlantedDuality out;
    out.lambda.kind = PairingKind::coproduct;
    for (std::size_t r = 0; r < g.m; ++r)
        for (std::size_t c = 0; c < g.n; ++c) {
            const Matrix fm = rng.invertible(g.field, g.dims[r][c]);
            out.pd.entries.push_back({r, c, c, r, fm, *inverse(fm)});
        }
    auto iso = [&](std::size_t r, std::size_t c) -> const PDEntry& { return out.pd.entries[r * g.n + c]; };
    for (const PairingEntry& e : product.entries) {
        const PDEntry& s = iso(e.src_r, e.src_c);
        const PDEntry& t = iso(e.tgt_r, e.tgt_c);
        const Matrix transported = t.f * e.matrix * kron(s.g, s.g);
        out.lambda.entries.push_back({t.dual_r, t.dual_c, s.dual_r, s.dual_c, transported.transpose()});
    }
    return out;
}

}  // namespace tatespace
