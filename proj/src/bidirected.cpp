#include "tatespace/bidirected.hpp"

#include "tatespace/duality.hpp"
#include "tatespace/errors.hpp"
#include "tatespace/linalg.hpp"

#include <map>

namespace tatespace {

namespace {

using Cell = std::pair<std::size_t, std::size_t>;

void add_issue(GridReport& rep, std::string check, std::vector<std::size_t> at, std::string detail,
               std::optional<Matrix> residual = std::nullopt)
{
    rep.ok = false;
    rep.issues.push_back({std::move(check), std::move(at), std::move(detail), std::move(residual)});
}

bool has_shape(const Matrix& a, std::size_t rows, std::size_t cols)
{
    return a.rows() == rows && a.cols() == cols;
}

std::string cell_name(std::size_t r, std::size_t c)
{
    return "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
}

/// Composite grid map from cell (r1, c1) to (r2, c2): up along column c1,
/// then right along row r2. Exists when r2 <= r1 and c2 >= c1.
std::optional<Matrix> cell_map(const BidirectedGrid& g, Cell from, Cell to)
{
    if (to.first > from.first || to.second < from.second)
        return std::nullopt;
    Matrix m = Matrix::identity(g.field, g.dims[from.first][from.second]);
    for (std::size_t r = from.first; r > to.first; --r)
        m = g.up[r - 1][from.second] * m;
    for (std::size_t c = from.second; c < to.second; ++c)
        m = g.right[to.first][c] * m;
    return m;
}

void check_grid_shapes(const BidirectedGrid& g, GridReport& rep)
{
    if (g.m == 0 || g.n == 0) {
        add_issue(rep, "shape", {}, "grid needs at least one row and one column");
        return;
    }
    if (g.dims.size() != g.m || g.right.size() != g.m || g.up.size() != g.m - 1) {
        add_issue(rep, "shape", {}, "dims/right/up arrays do not match m x n");
        return;
    }
    for (std::size_t r = 0; r < g.m; ++r) {
        if (g.dims[r].size() != g.n || g.right[r].size() != g.n - 1) {
            add_issue(rep, "shape", {r + 1}, "row " + std::to_string(r + 1) + " has the wrong length");
            continue;
        }
        for (std::size_t c = 0; c + 1 < g.n; ++c)
            if (!has_shape(g.right[r][c], g.dims[r][c + 1], g.dims[r][c]) || !(g.right[r][c].field() == g.field))
                add_issue(rep, "shape", {r + 1, c + 1}, "right map at " + cell_name(r, c) + " has the wrong shape");
    }
    for (std::size_t r = 0; r + 1 < g.m; ++r) {
        if (g.up[r].size() != g.n || g.dims[r].size() != g.n || g.dims[r + 1].size() != g.n) {
            add_issue(rep, "shape", {r + 1}, "up row " + std::to_string(r + 1) + " has the wrong length");
            continue;
        }
        for (std::size_t c = 0; c < g.n; ++c)
            if (!has_shape(g.up[r][c], g.dims[r][c], g.dims[r + 1][c]) || !(g.up[r][c].field() == g.field))
                add_issue(rep, "shape", {r + 1, c + 1}, "up map into " + cell_name(r, c) + " has the wrong shape");
    }
}

void check_witness_shapes(const BidirectedGrid& g, const SESWitness& w, GridReport& rep)
{
    if (w.v_dims.size() != g.n || w.v_maps.size() != g.n - 1 || w.w_dims.size() != g.m ||
        w.w_maps.size() != g.m - 1 || w.inj.size() != g.m || w.surj.size() != g.m) {
        add_issue(rep, "shape", {}, "witness arrays do not match the grid");
        return;
    }
    for (std::size_t c = 0; c + 1 < g.n; ++c)
        if (!has_shape(w.v_maps[c], w.v_dims[c + 1], w.v_dims[c]))
            add_issue(rep, "shape", {c + 1}, "V map " + std::to_string(c + 1) + " has the wrong shape");
    for (std::size_t r = 0; r + 1 < g.m; ++r)
        if (!has_shape(w.w_maps[r], w.w_dims[r], w.w_dims[r + 1]))
            add_issue(rep, "shape", {r + 1}, "W map " + std::to_string(r + 1) + " has the wrong shape");
    for (std::size_t r = 0; r < g.m; ++r) {
        if (w.inj[r].size() != g.n || w.surj[r].size() != g.n) {
            add_issue(rep, "shape", {r + 1}, "witness row " + std::to_string(r + 1) + " has the wrong length");
            continue;
        }
        for (std::size_t c = 0; c < g.n; ++c) {
            if (!has_shape(w.inj[r][c], g.dims[r][c], w.v_dims[c]))
                add_issue(rep, "shape", {r + 1, c + 1}, "inj at " + cell_name(r, c) + " has the wrong shape");
            if (!has_shape(w.surj[r][c], w.w_dims[r], g.dims[r][c]))
                add_issue(rep, "shape", {r + 1, c + 1}, "surj at " + cell_name(r, c) + " has the wrong shape");
        }
    }
}

void check_equal(GridReport& rep, const char* check, std::vector<std::size_t> at, const std::string& what,
                 const Matrix& lhs, const Matrix& rhs)
{
    if (!(lhs == rhs))
        add_issue(rep, check, std::move(at), what, lhs - rhs);
}

/// Section of surj whose image is the greedy complement of im inj.
Matrix deterministic_section(const Matrix& inj, const Matrix& surj)
{
    const Matrix comp = complement_basis(inj);
    const auto inv = inverse(surj * comp);
    if (!inv)
        throw CertificateError("split_grid: complement of the subspace does not map onto the quotient");
    return comp * *inv;
}

Matrix coordinates_or_fail(const Matrix& basis, const Matrix& v, const std::string& what)
{
    try {
        return coordinates(basis, v);
    } catch (const PreconditionError&) {
        throw CertificateError("split_grid: " + what);
    }
}

/// Verifies the block-diagonal form of every conjugated map.
GridReport check_basis(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& b)
{
    GridReport rep;
    if (b.basis.size() != g.m || b.inverse.size() != g.m) {
        add_issue(rep, "basis", {}, "change of basis does not match the grid");
        return rep;
    }
    for (std::size_t r = 0; r < g.m; ++r) {
        if (b.basis[r].size() != g.n || b.inverse[r].size() != g.n) {
            add_issue(rep, "basis", {r + 1}, "change of basis row has the wrong length");
            return rep;
        }
        for (std::size_t c = 0; c < g.n; ++c) {
            const std::size_t d = g.dims[r][c];
            if (!has_shape(b.basis[r][c], d, d) || !has_shape(b.inverse[r][c], d, d) ||
                !(b.basis[r][c] * b.inverse[r][c] == Matrix::identity(g.field, d))) {
                add_issue(rep, "basis", {r + 1, c + 1}, "change of basis at " + cell_name(r, c) + " is not invertible");
                return rep;
            }
        }
    }
    for (std::size_t r = 0; r < g.m; ++r)
        for (std::size_t c = 0; c + 1 < g.n; ++c)
            check_equal(rep, "block-form", {r + 1, c + 1}, "right map at " + cell_name(r, c) + " is not diag(f, I)",
                        b.basis[r][c + 1] * g.right[r][c] * b.inverse[r][c],
                        block_diag(w.v_maps[c], Matrix::identity(g.field, w.w_dims[r])));
    for (std::size_t r = 0; r + 1 < g.m; ++r)
        for (std::size_t c = 0; c < g.n; ++c)
            check_equal(rep, "block-form", {r + 2, c + 1}, "up map from " + cell_name(r + 1, c) + " is not diag(I, g)",
                        b.basis[r][c] * g.up[r][c] * b.inverse[r + 1][c],
                        block_diag(Matrix::identity(g.field, w.v_dims[c]), w.w_maps[r]));
    return rep;
}

void require_valid(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis* b, const char* op)
{
    GridReport rep = validate_grid(g, &w);
    if (rep.ok && b)
        rep = check_basis(g, w, *b);
    if (!rep.ok)
        throw PreconditionError(std::string(op) + ": " + rep.issues.front().detail);
}

}  // namespace

GridReport validate_grid(const BidirectedGrid& g, const SESWitness* w)
{
    GridReport rep;
    check_grid_shapes(g, rep);
    if (!rep.ok)
        return rep;
    for (std::size_t r = 0; r + 1 < g.m; ++r)
        for (std::size_t c = 0; c + 1 < g.n; ++c)
            check_equal(rep, "square", {r + 1, c + 1},
                        "square with corner " + cell_name(r, c) + " does not commute",
                        g.up[r][c + 1] * g.right[r + 1][c], g.right[r][c] * g.up[r][c]);
    if (!w)
        return rep;
    check_witness_shapes(g, *w, rep);
    if (!rep.ok)
        return rep;
    for (std::size_t r = 0; r < g.m; ++r)
        for (std::size_t c = 0; c < g.n; ++c) {
            const Matrix& i = w->inj[r][c];
            const Matrix& p = w->surj[r][c];
            const bool exact = rank(i) == i.cols() && rank(p) == p.rows() && (p * i).is_zero() &&
                               i.cols() + p.rows() == g.dims[r][c];
            if (!exact)
                add_issue(rep, "exactness", {r + 1, c + 1}, "column at " + cell_name(r, c) + " is not short exact");
            if (c + 1 < g.n) {
                check_equal(rep, "naturality", {r + 1, c + 1}, "inj does not commute with the right map at " + cell_name(r, c),
                            g.right[r][c] * i, w->inj[r][c + 1] * w->v_maps[c]);
                check_equal(rep, "naturality", {r + 1, c + 1}, "surj does not commute with the right map at " + cell_name(r, c),
                            w->surj[r][c + 1] * g.right[r][c], p);
            }
            if (r + 1 < g.m) {
                check_equal(rep, "naturality", {r + 2, c + 1}, "inj does not commute with the up map from " + cell_name(r + 1, c),
                            g.up[r][c] * w->inj[r + 1][c], i);
                check_equal(rep, "naturality", {r + 2, c + 1}, "surj does not commute with the up map from " + cell_name(r + 1, c),
                            p * g.up[r][c], w->w_maps[r] * w->surj[r + 1][c]);
            }
        }
    return rep;
}

GridChangeOfBasis split_grid(const BidirectedGrid& g, const SESWitness& w)
{
    require_valid(g, w, nullptr, "split_grid");
    std::vector<std::vector<Matrix>> s(g.m, std::vector<Matrix>(g.n));

    // Row 1: push the section along the row, correcting a fresh deterministic
    // section by tau with inj tau = right s - s'.
    for (std::size_t c = 0; c < g.n; ++c) {
        const Matrix fresh = deterministic_section(w.inj[0][c], w.surj[0][c]);
        if (c == 0) {
            s[0][0] = fresh;
            continue;
        }
        const Matrix tau = coordinates_or_fail(w.inj[0][c], g.right[0][c - 1] * s[0][c - 1] - fresh,
                                               "right map moves the section off the quotient");
        s[0][c] = fresh + w.inj[0][c] * tau;
    }

    // Later rows: correct by sigma with inj sigma = up s' - s g, then confirm
    // that the corrected sections already commute with the right maps.
    for (std::size_t r = 1; r < g.m; ++r)
        for (std::size_t c = 0; c < g.n; ++c) {
            const Matrix fresh = deterministic_section(w.inj[r][c], w.surj[r][c]);
            const Matrix sigma = coordinates_or_fail(w.inj[r - 1][c], g.up[r - 1][c] * fresh - s[r - 1][c] * w.w_maps[r - 1],
                                                     "up map moves the section off the quotient");
            s[r][c] = fresh - w.inj[r][c] * sigma;
            if (!(g.up[r - 1][c] * s[r][c] == s[r - 1][c] * w.w_maps[r - 1]))
                throw CertificateError("split_grid: section at " + cell_name(r, c) + " does not commute with up");
            if (c > 0 && !(g.right[r][c - 1] * s[r][c - 1] == s[r][c]))
                throw CertificateError("split_grid: section at " + cell_name(r, c) + " does not commute with right");
        }

    GridChangeOfBasis out;
    out.basis.assign(g.m, std::vector<Matrix>(g.n));
    out.inverse.assign(g.m, std::vector<Matrix>(g.n));
    for (std::size_t r = 0; r < g.m; ++r)
        for (std::size_t c = 0; c < g.n; ++c) {
            if (!(w.surj[r][c] * s[r][c] == Matrix::identity(g.field, w.w_dims[r])))
                throw CertificateError("split_grid: section at " + cell_name(r, c) + " is not a section");
            out.inverse[r][c] = w.inj[r][c].hstack(s[r][c]);
            const auto inv = inverse(out.inverse[r][c]);
            if (!inv)
                throw CertificateError("split_grid: cell " + cell_name(r, c) + " is not V (+) W");
            out.basis[r][c] = *inv;
        }
    const GridReport post = check_basis(g, w, out);
    if (!post.ok)
        throw CertificateError("split_grid: " + post.issues.front().detail);
    return out;
}

namespace {

/// W_{m} -> W_r along the inverse system.
Matrix w_composite(const SESWitness& w, FieldSpec k, std::size_t r)
{
    const std::size_t last = w.w_dims.size() - 1;
    Matrix out = Matrix::identity(k, w.w_dims[last]);
    for (std::size_t i = last; i > r; --i)
        out = w.w_maps[i - 1] * out;
    return out;
}

}  // namespace

RFHDecomposition rfh_decompose(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& basis)
{
    require_valid(g, w, &basis, "rfh_decompose");
    const FieldSpec k = g.field;
    RFHDecomposition out{
        TateObj{Tower::from_prefix(Prefix{k, w.w_dims, w.w_maps}, TailDescriptor::unspecified()),
                IndTower::from_prefix(Prefix{k, w.v_dims, w.v_maps}, TailDescriptor::unspecified())},
        {}, {}, {}};
    const std::size_t dv = w.v_dims[g.n - 1];
    const Cell corner{g.m - 1, g.n - 1};
    for (std::size_t r = 0; r < g.m; ++r) {
        const Matrix gc = w_composite(w, k, r);
        Matrix pi = block_diag(Matrix::identity(k, dv), gc);
        const Matrix cell_pi = basis.basis[r][g.n - 1] * *cell_map(g, corner, {r, g.n - 1}) *
                               basis.inverse[corner.first][corner.second];
        if (!(cell_pi == pi))
            throw CertificateError("rfh_decompose: projection to row " + std::to_string(r + 1) +
                                   " disagrees with the grid");
        const Matrix ker = kernel_basis(gc);
        Matrix iota = Matrix::zero(k, dv, ker.cols()).vstack(ker);
        Matrix open = kernel_basis(pi);
        if (!(pi * iota).is_zero() || !same_span(iota, open))
            throw CertificateError("rfh_decompose: im iota != ker pi at row " + std::to_string(r + 1));
        out.pi.push_back(std::move(pi));
        out.opens.push_back(std::move(open));
        out.iota.push_back(std::move(iota));
    }
    return out;
}

namespace {

Matrix block_diag_all(FieldSpec k, const std::vector<Matrix>& blocks)
{
    Matrix out(k, 0, 0);
    for (const Matrix& b : blocks)
        out = block_diag(out, b);
    return out;
}

std::size_t sum(const std::vector<std::size_t>& v)
{
    std::size_t s = 0;
    for (std::size_t x : v)
        s += x;
    return s;
}

std::size_t offset(const std::vector<std::size_t>& dims, std::size_t i)
{
    std::size_t s = 0;
    for (std::size_t j = 0; j < i; ++j)
        s += dims[j];
    return s;
}

/// Limit of X_0 <- X_1 <- ... (maps[i] : X_{i+1} -> X_i) as the compatible
/// tuples inside the direct sum.
Matrix chain_limit(FieldSpec k, const std::vector<std::size_t>& dims, const std::vector<Matrix>& maps)
{
    const std::size_t total = sum(dims);
    Matrix constraints(k, 0, total);
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        Matrix row(k, dims[i], total);
        const std::size_t oi = offset(dims, i), on = offset(dims, i + 1);
        for (std::size_t a = 0; a < dims[i]; ++a) {
            row.set(a, oi + a, k.neg(1));
            for (std::size_t b = 0; b < dims[i + 1]; ++b)
                row.set(a, on + b, maps[i](a, b));
        }
        constraints = constraints.vstack(row);
    }
    return kernel_basis(constraints);
}

struct Colimit {
    Matrix quotient;  ///< direct sum -> colimit
    Matrix lift;      ///< colimit -> direct sum, quotient * lift = id
};

/// Colimit of X_0 -> X_1 -> ... (maps[i] : X_i -> X_{i+1}) as the direct sum
/// modulo x - maps(x).
Colimit chain_colimit(FieldSpec k, const std::vector<std::size_t>& dims, const std::vector<Matrix>& maps)
{
    const std::size_t total = sum(dims);
    Matrix relations(k, total, 0);
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        Matrix rel(k, total, dims[i]);
        const std::size_t oi = offset(dims, i), on = offset(dims, i + 1);
        for (std::size_t b = 0; b < dims[i]; ++b) {
            rel.set(oi + b, b, 1);
            for (std::size_t a = 0; a < dims[i + 1]; ++a)
                rel.set(on + a, b, k.neg(maps[i](a, b)));
        }
        relations = relations.hstack(rel);
    }
    const Matrix span = image_basis(relations);
    const Matrix lift = complement_basis(span);
    const auto inv = inverse(span.hstack(lift));
    return {inv->block(span.cols(), 0, lift.cols(), total), lift};
}

}  // namespace

KappaCertificate kappa_check(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& basis)
{
    require_valid(g, w, &basis, "kappa_check");
    const FieldSpec k = g.field;
    const std::size_t m = g.m, n = g.n;

    // colim_c lim_r
    std::vector<std::vector<std::size_t>> col_dims(n);
    std::vector<Matrix> lims(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Matrix> maps;
        for (std::size_t r = 0; r < m; ++r) {
            col_dims[c].push_back(g.dims[r][c]);
            if (r + 1 < m)
                maps.push_back(g.up[r][c]);
        }
        lims[c] = chain_limit(k, col_dims[c], maps);
    }
    std::vector<std::size_t> lim_dims;
    std::vector<Matrix> lim_maps;
    for (std::size_t c = 0; c < n; ++c) {
        lim_dims.push_back(lims[c].cols());
        if (c + 1 < n) {
            std::vector<Matrix> rights;
            for (std::size_t r = 0; r < m; ++r)
                rights.push_back(g.right[r][c]);
            lim_maps.push_back(coordinates(lims[c + 1], block_diag_all(k, rights) * lims[c]));
        }
    }
    const Colimit source = chain_colimit(k, lim_dims, lim_maps);

    // lim_r colim_c
    std::vector<std::vector<std::size_t>> row_dims(m);
    std::vector<Colimit> colims;
    for (std::size_t r = 0; r < m; ++r) {
        row_dims[r] = g.dims[r];
        colims.push_back(chain_colimit(k, g.dims[r], g.right[r]));
    }
    std::vector<std::size_t> colim_dims;
    std::vector<Matrix> colim_maps;
    for (std::size_t r = 0; r < m; ++r) {
        colim_dims.push_back(colims[r].lift.cols());
        if (r + 1 < m)
            colim_maps.push_back(colims[r].quotient * block_diag_all(k, g.up[r]) * colims[r + 1].lift);
    }
    const Matrix target = chain_limit(k, colim_dims, colim_maps);

    // kappa: a compatible column tuple at slot c goes to its classes in every row colimit.
    const std::size_t sdim = source.lift.cols();
    Matrix image(k, sum(colim_dims), sdim);
    for (std::size_t c = 0; c < n; ++c) {
        const Matrix part = source.lift.block(offset(lim_dims, c), 0, lim_dims[c], sdim);
        const Matrix tuples = lims[c] * part;
        for (std::size_t r = 0; r < m; ++r) {
            const Matrix x = tuples.block(offset(col_dims[c], r), 0, g.dims[r][c], sdim);
            const Matrix cls = colims[r].quotient.block(0, offset(row_dims[r], c), colim_dims[r], g.dims[r][c]) * x;
            const std::size_t o = offset(colim_dims, r);
            for (std::size_t i = 0; i < cls.rows(); ++i)
                for (std::size_t j = 0; j < sdim; ++j)
                    image.set(o + i, j, k.add(image(o + i, j), cls(i, j)));
        }
    }
    KappaCertificate out;
    out.source_dim = sdim;
    out.target_dim = target.cols();
    out.kappa = coordinates(target, image);

    // Both sides to the corner V[m][n], then to V_n (+) W_m.
    const Cell corner{m - 1, n - 1};
    Matrix phi_src(k, g.dims[m - 1][n - 1], sdim);
    for (std::size_t c = 0; c < n; ++c) {
        const Matrix part = source.lift.block(offset(lim_dims, c), 0, lim_dims[c], sdim);
        const Matrix deepest = (lims[c] * part).block(offset(col_dims[c], m - 1), 0, g.dims[m - 1][c], sdim);
        phi_src = phi_src + *cell_map(g, {m - 1, c}, corner) * deepest;
    }
    Matrix cocone(k, g.dims[m - 1][n - 1], 0);
    for (std::size_t c = 0; c < n; ++c)
        cocone = cocone.hstack(*cell_map(g, {m - 1, c}, corner));
    const Matrix phi_tgt =
        cocone * colims[m - 1].lift * target.block(offset(colim_dims, m - 1), 0, colim_dims[m - 1], target.cols());

    const Matrix& to_normal = basis.basis[m - 1][n - 1];
    const auto src_inv = inverse(to_normal * phi_src);
    if (!src_inv || !is_invertible(out.kappa))
        return out;
    out.normal_form = to_normal * phi_tgt * out.kappa * *src_inv;
    out.ok = out.normal_form == Matrix::identity(k, g.dims[m - 1][n - 1]);
    return out;
}

std::pair<BidirectedGrid, SESWitness> transpose_grid(const BidirectedGrid& g, const SESWitness& w)
{
    BidirectedGrid d;
    d.field = g.field;
    d.m = g.n;
    d.n = g.m;
    d.dims.assign(d.m, std::vector<std::size_t>(d.n));
    d.right.assign(d.m, std::vector<Matrix>(d.n - 1));
    d.up.assign(d.m - 1, std::vector<Matrix>(d.n));
    SESWitness dw;
    dw.inj.assign(d.m, std::vector<Matrix>(d.n));
    dw.surj.assign(d.m, std::vector<Matrix>(d.n));
    for (std::size_t r = 0; r < d.m; ++r)
        for (std::size_t c = 0; c < d.n; ++c) {
            d.dims[r][c] = g.dims[c][r];
            if (c + 1 < d.n)
                d.right[r][c] = g.up[c][r].transpose();
            if (r + 1 < d.m)
                d.up[r][c] = g.right[c][r].transpose();
            dw.inj[r][c] = w.surj[c][r].transpose();
            dw.surj[r][c] = w.inj[c][r].transpose();
        }
    dw.v_dims = w.w_dims;
    dw.w_dims = w.v_dims;
    for (const Matrix& a : w.w_maps)
        dw.v_maps.push_back(a.transpose());
    for (const Matrix& a : w.v_maps)
        dw.w_maps.push_back(a.transpose());
    return {std::move(d), std::move(dw)};
}

DualGrid dual_grid(const BidirectedGrid& g, const SESWitness& w)
{
    require_valid(g, w, nullptr, "dual_grid");
    auto [dg, dw] = transpose_grid(g, w);
    DualGrid out{dg, dw, false};
    const RFHDecomposition original = rfh_decompose(g, w, split_grid(g, w));
    const RFHDecomposition dual = rfh_decompose(dg, dw, split_grid(dg, dw));
    const TateObj expected = dual_object(original.tate);
    out.certified = dual.tate.c_lattice.materialize(dg.m) == expected.c_lattice.materialize(dg.m) &&
                    dual.tate.d_lattice.materialize(dg.n) == expected.d_lattice.materialize(dg.n);
    return out;
}

namespace {

bool in_grid(const BidirectedGrid& g, std::size_t r, std::size_t c)
{
    return r < g.m && c < g.n;
}

PairingAssembly assemble(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& basis,
                         const PairingFamily& p, PairingKind expected)
{
    const char* op = expected == PairingKind::product ? "assemble_product" : "assemble_coproduct";
    require_valid(g, w, &basis, op);
    PairingAssembly out;
    GridReport& rep = out.report;
    if (p.kind != expected) {
        add_issue(rep, "kind", {}, std::string(op) + ": pairing family has the other kind");
        return out;
    }
    const bool product = expected == PairingKind::product;

    std::map<Cell, std::size_t> by_source;
    for (std::size_t e = 0; e < p.entries.size(); ++e) {
        const PairingEntry& en = p.entries[e];
        if (!in_grid(g, en.src_r, en.src_c)) {
            add_issue(rep, "window", {en.src_r + 1, en.src_c + 1}, "pairing source lies outside the grid");
            continue;
        }
        if (!in_grid(g, en.tgt_r, en.tgt_c)) {
            out.skipped.push_back(e);
            continue;
        }
        const std::size_t ds = g.dims[en.src_r][en.src_c], dt = g.dims[en.tgt_r][en.tgt_c];
        const bool shape_ok = product ? has_shape(en.matrix, dt, ds * ds) : has_shape(en.matrix, dt * dt, ds);
        if (!shape_ok) {
            add_issue(rep, "shape", {en.src_r + 1, en.src_c + 1},
                      "pairing at " + cell_name(en.src_r, en.src_c) + " has the wrong shape");
            continue;
        }
        if (!by_source.emplace(Cell{en.src_r, en.src_c}, e).second)
            add_issue(rep, "window", {en.src_r + 1, en.src_c + 1},
                      "two pairings share the source " + cell_name(en.src_r, en.src_c));
    }

    auto naturality = [&](const PairingEntry& a, const PairingEntry& b, const Matrix& along, const char* dir) {
        const auto tmap = cell_map(g, {a.tgt_r, a.tgt_c}, {b.tgt_r, b.tgt_c});
        if (!tmap) {
            add_issue(rep, "window", {a.src_r + 1, a.src_c + 1, b.src_r + 1, b.src_c + 1},
                      "no grid map between the targets of " + cell_name(a.src_r, a.src_c) + " and " +
                          cell_name(b.src_r, b.src_c));
            return;
        }
        const Matrix lhs = product ? *tmap * a.matrix : kron(*tmap, *tmap) * a.matrix;
        const Matrix rhs = product ? b.matrix * kron(along, along) : b.matrix * along;
        check_equal(rep, "naturality", {a.src_r + 1, a.src_c + 1, b.src_r + 1, b.src_c + 1},
                    std::string("pairing does not commute with the ") + dir + " map from " +
                        cell_name(a.src_r, a.src_c),
                    lhs, rhs);
    };
    for (const auto& [cell, e] : by_source) {
        const auto [r, c] = cell;
        if (auto it = by_source.find({r, c + 1}); it != by_source.end())
            naturality(p.entries[e], p.entries[it->second], g.right[r][c], "right");
        if (r > 0)
            if (auto it = by_source.find({r - 1, c}); it != by_source.end())
                naturality(p.entries[e], p.entries[it->second], g.up[r - 1][c], "up");
    }

    for (const auto& [cell, e] : by_source) {
        const PairingEntry& en = p.entries[e];
        const auto [r, c] = cell;
        const std::size_t tr = en.tgt_r, tc = en.tgt_c;
        const std::size_t vs = w.v_dims[c];
        const Matrix& into_s = basis.inverse[r][c];
        const Matrix section_s = into_s.block(0, vs, into_s.rows(), into_s.cols() - vs);
        const Matrix& inj_s = w.inj[r][c];
        const Matrix& inj_t = w.inj[tr][tc];
        InducedPiece piece{r, c, tr, tc, Matrix(), Matrix()};
        if (product) {
            piece.normal_form = basis.basis[tr][tc] * en.matrix * kron(into_s, into_s);
            const Matrix& q = w.surj[tr][tc];
            const Matrix id = Matrix::identity(g.field, g.dims[r][c]);
            if (!(q * en.matrix * kron(inj_s, id)).is_zero() || !(q * en.matrix * kron(id, inj_s)).is_zero()) {
                add_issue(rep, "descent", {r + 1, c + 1},
                          "product at " + cell_name(r, c) + " does not preserve the discrete part");
                continue;
            }
            piece.induced = q * en.matrix * kron(section_s, section_s);
        } else {
            piece.normal_form = kron(basis.basis[tr][tc], basis.basis[tr][tc]) * en.matrix * into_s;
            try {
                piece.induced = coordinates(kron(inj_t, inj_t), en.matrix * inj_s);
            } catch (const PreconditionError&) {
                add_issue(rep, "descent", {r + 1, c + 1},
                          "coproduct at " + cell_name(r, c) + " does not preserve the discrete part");
                continue;
            }
        }
        out.pieces.push_back(std::move(piece));
    }
    return out;
}

}  // namespace

PairingAssembly assemble_product(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& basis,
                                 const PairingFamily& p)
{
    return assemble(g, w, basis, p, PairingKind::product);
}

PairingAssembly assemble_coproduct(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& basis,
                                   const PairingFamily& p)
{
    return assemble(g, w, basis, p, PairingKind::coproduct);
}

GridReport check_pd_intertwine(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& basis,
                               const PairingFamily& mu, const PairingFamily& lambda, const PDWitness& pd)
{
    require_valid(g, w, &basis, "check_pd_intertwine");
    GridReport rep;
    if (mu.kind != PairingKind::product || lambda.kind != PairingKind::coproduct) {
        add_issue(rep, "kind", {}, "expected a product family and a coproduct family");
        return rep;
    }
    // dual cell (r', c') holds V[c'][r']^*
    auto dual_dim = [&](std::size_t r, std::size_t c) -> std::optional<std::size_t> {
        if (c < g.m && r < g.n)
            return g.dims[c][r];
        return std::nullopt;
    };

    std::map<Cell, const PDEntry*> iso;
    for (const PDEntry& e : pd.entries) {
        const auto dd = dual_dim(e.dual_r, e.dual_c);
        if (!in_grid(g, e.r, e.c) || !dd) {
            add_issue(rep, "window", {e.r + 1, e.c + 1}, "duality isomorphism refers to a cell outside the grids");
            continue;
        }
        const std::size_t d = g.dims[e.r][e.c];
        if (!has_shape(e.f, *dd, d) || !has_shape(e.g, d, *dd) ||
            !(e.f * e.g == Matrix::identity(g.field, *dd)) || !(e.g * e.f == Matrix::identity(g.field, d))) {
            add_issue(rep, "inverse", {e.r + 1, e.c + 1}, "f and g at " + cell_name(e.r, e.c) + " are not inverse");
            continue;
        }
        iso[{e.r, e.c}] = &e;
    }
    std::map<std::pair<Cell, Cell>, const PairingEntry*> coproducts;
    for (const PairingEntry& e : lambda.entries)
        coproducts[{{e.src_r, e.src_c}, {e.tgt_r, e.tgt_c}}] = &e;

    for (const PairingEntry& e : mu.entries) {
        const std::vector<std::size_t> at{e.src_r + 1, e.src_c + 1};
        const auto fs = iso.find({e.src_r, e.src_c});
        const auto ft = iso.find({e.tgt_r, e.tgt_c});
        if (fs == iso.end() || ft == iso.end()) {
            add_issue(rep, "window", at, "no duality isomorphism for the product at " + cell_name(e.src_r, e.src_c));
            continue;
        }
        const Cell rs{fs->second->dual_r, fs->second->dual_c};
        const Cell rt{ft->second->dual_r, ft->second->dual_c};
        const auto lam = coproducts.find({rt, rs});
        if (lam == coproducts.end()) {
            add_issue(rep, "window", at, "no reflected coproduct for the product at " + cell_name(e.src_r, e.src_c));
            continue;
        }
        const Matrix& f_s = fs->second->f;
        const Matrix& f_t = ft->second->f;
        const Matrix& l = lam->second->matrix;
        if (!has_shape(e.matrix, f_t.cols(), f_s.cols() * f_s.cols()) ||
            !has_shape(l, f_s.rows() * f_s.rows(), f_t.rows())) {
            add_issue(rep, "shape", at, "pairings at " + cell_name(e.src_r, e.src_c) + " have the wrong shape");
            continue;
        }
        check_equal(rep, "pd", at, "duality does not intertwine the pairings at " + cell_name(e.src_r, e.src_c),
                    f_t * e.matrix, l.transpose() * kron(f_s, f_s));
    }
    return rep;
}

}  // namespace tatespace
