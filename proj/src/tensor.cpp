#include "tatespace/tensor.hpp"

#include "tatespace/duality.hpp"
#include "tatespace/errors.hpp"
#include "tatespace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tatespace {

std::pair<std::size_t, std::size_t> PairIndexing::at(std::size_t k)
{
    auto d = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0);
    while (d * (d + 1) / 2 > k)
        --d;
    while ((d + 1) * (d + 2) / 2 <= k)
        ++d;
    const std::size_t offset = k - d * (d + 1) / 2;
    return {offset, d - offset};
}

std::size_t PairIndexing::index_of(std::size_t i, std::size_t j)
{
    const std::size_t d = i + j;
    return d * (d + 1) / 2 + i;
}

bool PairIndexing::verify_prefix(std::size_t count)
{
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < count; ++k) {
        const auto ij = at(k);
        if (index_of(ij.first, ij.second) != k || !seen.insert(ij).second)
            return false;
    }
    return true;
}

LazySeq<std::pair<std::size_t, std::size_t>> paired_indices(std::optional<std::size_t> len_a,
                                                            std::optional<std::size_t> len_b)
{
    std::optional<std::size_t> length;
    if ((len_a && *len_a == 0) || (len_b && *len_b == 0))
        length = 0;
    else if (len_a && len_b)
        length = *len_a * *len_b;
    // LazySeq evaluates items in order under its lock, so a shared cursor
    // into the diagonal enumeration is enough.
    auto cursor = std::make_shared<std::size_t>(0);
    return LazySeq<std::pair<std::size_t, std::size_t>>(
        [cursor, len_a, len_b](std::size_t) {
            for (;;) {
                const auto ij = PairIndexing::at((*cursor)++);
                if ((!len_a || ij.first < *len_a) && (!len_b || ij.second < *len_b))
                    return ij;
            }
        },
        length);
}

namespace {

std::optional<std::size_t> min_available(std::optional<std::size_t> a, std::optional<std::size_t> b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    return std::min(*a, *b);
}

TailDescriptor product_tail(const TailDescriptor& a, const TailDescriptor& b)
{
    if (a.kind == TailKind::stabilizing && b.kind == TailKind::stabilizing)
        return TailDescriptor::stabilizing(std::max(a.bound, b.bound));
    return TailDescriptor::unspecified();
}

template <Direction D>
System<D> tensor_systems(const System<D>& a, const System<D>& b)
{
    require_same_field(a.level(0).link, b.level(0).link, "tensor");
    return System<D>(
        a.field(),
        [a, b](std::size_t i) -> Level {
            const Level& x = a.level(i);
            const Level& y = b.level(i);
            return {x.dim * y.dim, kron(x.link, y.link)};
        },
        product_tail(a.tail(), b.tail()), min_available(a.available_levels(), b.available_levels()));
}

/// Dimensions of the new pieces contributed at each level: level 0 itself,
/// then ker (towers) or coker (ind-towers) of each transition. Finite when
/// the tail stabilizes.
template <Direction D>
struct Increments {
    System<D> system;
    std::optional<std::size_t> finite_count;

    std::size_t at(std::size_t j) const
    {
        if (j == 0)
            return system.dim(0);
        const Matrix& link = system.level(j).link;
        return D == Direction::inverse ? kernel_dim(link) : cokernel_dim(link);
    }
};

template <Direction D>
Increments<D> increments(const System<D>& s)
{
    std::optional<std::size_t> count;
    if (s.tail().kind == TailKind::stabilizing)
        count = std::max<std::size_t>(s.tail().bound, 1);
    return {s, count};
}

/// Builds [head, constant pieces of the increments of `inc`].
template <class Head, Direction IncDir, class Piece>
LazySeq<Piece> head_then_increments(FieldSpec field, const Head& head, const Increments<IncDir>& inc,
                                    bool head_known_zero)
{
    using PieceSystem = Piece;
    if (inc.finite_count) {
        std::vector<Piece> items;
        if (!head_known_zero)
            items.push_back(head);
        for (std::size_t j = 0; j < *inc.finite_count; ++j)
            if (std::size_t d = inc.at(j))
                items.push_back(PieceSystem::constant(field, d));
        return LazySeq<Piece>::from_vector(std::move(items));
    }
    return LazySeq<Piece>(
        [field, head, inc](std::size_t k) -> Piece {
            if (k == 0)
                return head;
            return PieceSystem::constant(field, inc.at(k - 1));
        },
        std::nullopt);
}

}  // namespace

Tower tensor_star_towers(const Tower& a, const Tower& b)
{
    return tensor_systems(a, b);
}

IndTower tensor_indtowers(const IndTower& a, const IndTower& b)
{
    return tensor_systems(a, b);
}

IndLCObj tensor_star_indlc(const IndLCObj& a, const IndLCObj& b)
{
    if (!(a.field == b.field))
        throw FieldMismatch("tensor_star_indlc: operands over different fields");
    auto pairs = paired_indices(a.summands.length(), b.summands.length());
    auto sa = a.summands;
    auto sb = b.summands;
    return {a.field, LazySeq<Tower>(
                         [pairs, sa, sb](std::size_t k) {
                             const auto [i, j] = pairs.at(k);
                             return tensor_star_towers(sa.at(i), sb.at(j));
                         },
                         pairs.length())};
}

ProDiscObj tensor_bang_prodisc(const ProDiscObj& a, const ProDiscObj& b)
{
    if (!(a.field == b.field))
        throw FieldMismatch("tensor_bang_prodisc: operands over different fields");
    auto pairs = paired_indices(a.factors.length(), b.factors.length());
    auto fa = a.factors;
    auto fb = b.factors;
    return {a.field, LazySeq<IndTower>(
                         [pairs, fa, fb](std::size_t k) {
                             const auto [i, j] = pairs.at(k);
                             return tensor_indtowers(fa.at(i), fb.at(j));
                         },
                         pairs.length())};
}

IndLCObj embed_tate_indlc(const TateObj& v)
{
    const FieldSpec f = v.c_lattice.field();
    const auto inc = increments(v.d_lattice);
    const bool drop_head = inc.finite_count && v.c_lattice.known_zero();
    return {f, head_then_increments<Tower, Direction::direct, Tower>(f, v.c_lattice, inc, drop_head)};
}

ProDiscObj embed_tate_prodisc(const TateObj& v)
{
    const FieldSpec f = v.c_lattice.field();
    const auto inc = increments(v.c_lattice);
    const bool drop_head = inc.finite_count && v.d_lattice.known_zero();
    return {f, head_then_increments<IndTower, Direction::inverse, IndTower>(f, v.d_lattice, inc, drop_head)};
}

IndLCObj tensor_star_tate(const TateObj& a, const TateObj& b)
{
    return tensor_star_indlc(embed_tate_indlc(a), embed_tate_indlc(b));
}

ProDiscObj tensor_bang_tate(const TateObj& a, const TateObj& b)
{
    return tensor_bang_prodisc(embed_tate_prodisc(a), embed_tate_prodisc(b));
}

namespace {

/// Ev on level tensors of F (x) G with F = X^*: e_a (x) e_b |-> e_b e_a^T.
Matrix evaluation_matrix(FieldSpec f, std::size_t dim_x, std::size_t dim_y)
{
    Matrix ev(f, dim_x * dim_y, dim_x * dim_y);
    for (std::size_t a = 0; a < dim_x; ++a)
        for (std::size_t b = 0; b < dim_y; ++b)
            ev.set(b * dim_x + a, a * dim_y + b, 1);
    return ev;
}

Matrix reshape_hom(const Matrix& column, std::size_t dim_x, std::size_t dim_y)
{
    Matrix h(column.field(), dim_y, dim_x);
    for (std::size_t r = 0; r < dim_y; ++r)
        for (std::size_t c = 0; c < dim_x; ++c)
            h.set(r, c, column(r * dim_x + c, 0));
    return h;
}

Matrix vec_hom(const Matrix& h)
{
    Matrix v(h.field(), h.rows() * h.cols(), 1);
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t c = 0; c < h.cols(); ++c)
            v.set(r * h.cols() + c, 0, h(r, c));
    return v;
}

}  // namespace

HomPresentation hom_via_tensor(const TateObj& a, const TateObj& b, std::size_t depth)
{
    if (!(a.c_lattice.field() == b.c_lattice.field()))
        throw FieldMismatch("hom_via_tensor: operands over different fields");
    if (depth == 0)
        throw PreconditionError("hom_via_tensor: depth must be >= 1");
    const FieldSpec f = a.c_lattice.field();
    const ProDiscObj dual_a = embed_tate_prodisc(dual_object(a));
    const ProDiscObj bp = embed_tate_prodisc(b);
    HomPresentation out{tensor_bang_prodisc(dual_a, bp), {}, {}, {}};
    const auto pairs = paired_indices(dual_a.factors.length(), bp.factors.length());

    for (std::size_t k = 0; k < depth && pairs.contains(k); ++k) {
        const auto [i, j] = pairs.at(k);
        out.pairs.emplace_back(i, j);
        const IndTower& fi = dual_a.factors.at(i);
        const IndTower& gj = bp.factors.at(j);
        const IndTower& product = out.presentation.factors.at(k);
        std::vector<Matrix> evs;
        std::vector<std::size_t> dims;
        for (std::size_t n = 0; n < depth; ++n) {
            const std::size_t dx = fi.dim(n), dy = gj.dim(n);
            if (product.dim(n) != dx * dy)
                throw CertificateError("hom_via_tensor: factor dims disagree with the tensor product");
            Matrix ev = evaluation_matrix(f, dx, dy);
            // rank-one basis tensors: Ev(e_a (x) e_b) must be the map x |-> x_a e_b
            for (std::size_t ia = 0; ia < dx; ++ia)
                for (std::size_t ib = 0; ib < dy; ++ib) {
                    const Matrix h = reshape_hom(ev.col(ia * dy + ib), dx, dy);
                    const Matrix expected =
                        Matrix::unit_vector(f, dy, ib) * Matrix::unit_vector(f, dx, ia).transpose();
                    if (!(h == expected))
                        throw CertificateError("hom_via_tensor: Ev fails on a rank-one basis tensor");
                }
            if (rank(ev) != ev.cols())
                throw CertificateError("hom_via_tensor: Ev is not injective");
            if (n > 0) {
                // Ev_n+1 (F link (x) G link) z == G link . Ev_n z . X link, X link = F link^T
                const Matrix& flink = fi.level(n).link;
                const Matrix& glink = gj.level(n).link;
                const Matrix lhs = ev * product.level(n).link;
                const Matrix& prev_ev = evs.back();
                const std::size_t px = fi.dim(n - 1), py = gj.dim(n - 1);
                for (std::size_t z = 0; z < px * py; ++z) {
                    const Matrix h = glink * reshape_hom(prev_ev.col(z), px, py) * flink.transpose();
                    if (!(lhs.col(z) == vec_hom(h)))
                        throw CertificateError("hom_via_tensor: Ev does not intertwine transitions");
                }
            }
            evs.push_back(std::move(ev));
            dims.push_back(dx * dy);
        }
        out.ev.push_back(std::move(evs));
        out.hom_dims.push_back(std::move(dims));
    }
    return out;
}

TensorDualityReport check_tensor_duality(const IndLCObj& a, const IndLCObj& b, std::size_t depth)
{
    const TwoLayerPrefix lhs = materialize(dual_object(tensor_star_indlc(a, b)), depth, depth);
    const TwoLayerPrefix rhs = materialize(tensor_bang_prodisc(dual_object(a), dual_object(b)), depth, depth);
    TensorDualityReport out;
    const auto pairs = paired_indices(a.summands.length(), b.summands.length());
    for (std::size_t k = 0; k < depth && pairs.contains(k); ++k)
        out.alignment.push_back(pairs.at(k));
    if (lhs.pieces.size() != rhs.pieces.size()) {
        out.first_bad_piece = std::min(lhs.pieces.size(), rhs.pieces.size()) + 1;
        return out;
    }
    for (std::size_t k = 0; k < lhs.pieces.size(); ++k) {
        const Prefix& x = lhs.pieces[k];
        const Prefix& y = rhs.pieces[k];
        for (std::size_t n = 0; n < x.dims.size(); ++n) {
            const bool same = x.dims[n] == y.dims[n] && (n == 0 || x.transitions[n - 1] == y.transitions[n - 1]);
            if (!same) {
                out.first_bad_piece = k + 1;
                out.first_bad_level = n + 1;
                return out;
            }
        }
    }
    out.ok = true;
    return out;
}

Matrix swap_permutation(FieldSpec field, std::size_t m, std::size_t n)
{
    Matrix p(field, m * n, m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p.set(j * m + i, i * n + j, 1);
    return p;
}

Matrix curry(const Matrix& bilinear, std::size_t dim_a, std::size_t dim_b)
{
    if (bilinear.cols() != dim_a * dim_b)
        throw ShapeError("curry: bilinear map has the wrong number of columns");
    const std::size_t dim_c = bilinear.rows();
    Matrix out(bilinear.field(), dim_c * dim_b, dim_a);
    for (std::size_t a = 0; a < dim_a; ++a)
        for (std::size_t b = 0; b < dim_b; ++b)
            for (std::size_t c = 0; c < dim_c; ++c)
                out.set(c * dim_b + b, a, bilinear(c, a * dim_b + b));
    return out;
}

Matrix uncurry(const Matrix& curried, std::size_t dim_a, std::size_t dim_b)
{
    if (dim_b == 0)
        throw ShapeError("uncurry: dim C cannot be read off when B = 0");
    if (curried.cols() != dim_a || curried.rows() % dim_b)
        throw ShapeError("uncurry: shape does not match dim A, dim B");
    const std::size_t dim_c = curried.rows() / dim_b;
    Matrix out(curried.field(), dim_c, dim_a * dim_b);
    for (std::size_t a = 0; a < dim_a; ++a)
        for (std::size_t b = 0; b < dim_b; ++b)
            for (std::size_t c = 0; c < dim_c; ++c)
                out.set(c, a * dim_b + b, curried(c * dim_b + b, a));
    return out;
}

std::vector<Matrix> mixed_comparison(const Tower& a, const Tower& b, const Tower& c, std::size_t depth)
{
    const Tower lhs = tensor_star_towers(a, tensor_star_towers(b, c));
    const Tower rhs = tensor_star_towers(tensor_star_towers(a, b), c);
    std::vector<Matrix> out;
    for (std::size_t n = 0; n < depth; ++n) {
        if (lhs.dim(n) != rhs.dim(n))
            throw CertificateError("mixed_comparison: level dims differ");
        out.push_back(Matrix::identity(a.field(), lhs.dim(n)));
        if (n > 0 && !(out[n - 1] * lhs.level(n).link == rhs.level(n).link * out[n]))
            throw CertificateError("mixed_comparison: comparison does not intertwine transitions");
    }
    return out;
}

}  // namespace tatespace
