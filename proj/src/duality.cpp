#include "tatespace/duality.hpp"

#include "tatespace/errors.hpp"
#include "tatespace/linalg.hpp"

namespace tatespace {

LinMap dual_object(const LinMap& f)
{
    return LinMap(f.mat.transpose());
}

namespace {

template <Direction To, Direction From>
System<To> dual_system(const System<From>& t)
{
    return System<To>(
        t.field(),
        [t](std::size_t i) -> Level {
            const Level& lv = t.level(i);
            return {lv.dim, lv.link.transpose()};
        },
        dual_tail(t.tail()), t.available_levels());
}

template <class S>
BidualReport bidual_system(const S& t, std::size_t depth)
{
    const Prefix original = t.materialize(depth);
    const Prefix twice = dual_object(dual_object(t)).materialize(depth);
    BidualReport out;
    out.witness.description = "level n of X paired with level n of X** by the coordinate double-dual basis";
    for (std::size_t i = 0; i < depth; ++i) {
        const bool same = original.dims[i] == twice.dims[i] && (i == 0 || original.transitions[i - 1] == twice.transitions[i - 1]);
        if (!same) {
            out.first_mismatch = i + 1;
            return out;
        }
        out.witness.pairings.push_back(Matrix::identity(t.field(), original.dims[i]));
    }
    out.ok = true;
    return out;
}

}  // namespace

IndTower dual_object(const Tower& t)
{
    return dual_system<Direction::direct>(t);
}

Tower dual_object(const IndTower& t)
{
    return dual_system<Direction::inverse>(t);
}

TateObj dual_object(const TateObj& v)
{
    return {dual_object(v.d_lattice), dual_object(v.c_lattice)};
}

ProDiscObj dual_object(const IndLCObj& v)
{
    auto summands = v.summands;
    return {v.field, LazySeq<IndTower>([summands](std::size_t i) { return dual_object(summands.at(i)); },
                                       summands.length())};
}

IndLCObj dual_object(const ProDiscObj& v)
{
    auto factors = v.factors;
    return {v.field,
            LazySeq<Tower>([factors](std::size_t i) { return dual_object(factors.at(i)); }, factors.length())};
}

BidualReport bidual_check(const FinVect& v, std::size_t)
{
    BidualReport out;
    out.ok = dual_object(dual_object(v)) == v;
    // A bare FinVect carries no field, so the identity pairing is described
    // rather than stored.
    out.witness.description = "identity pairing of k^" + std::to_string(v.dim) + " with its double dual";
    if (!out.ok)
        out.first_mismatch = 1;
    return out;
}

BidualReport bidual_check(const Tower& t, std::size_t depth)
{
    return bidual_system(t, depth);
}

BidualReport bidual_check(const IndTower& t, std::size_t depth)
{
    return bidual_system(t, depth);
}

BidualReport bidual_check(const TateObj& v, std::size_t depth)
{
    BidualReport c = bidual_system(v.c_lattice, depth);
    BidualReport d = bidual_system(v.d_lattice, depth);
    BidualReport out;
    out.ok = c.ok && d.ok;
    if (!c.ok || !d.ok)
        out.first_mismatch = std::min(c.first_mismatch.value_or(depth + 1), d.first_mismatch.value_or(depth + 1));
    out.witness.description = "c-lattice and d-lattice levels paired with their double duals";
    for (std::size_t i = 0; i < c.witness.pairings.size() && i < d.witness.pairings.size(); ++i)
        out.witness.pairings.push_back(block_diag(c.witness.pairings[i], d.witness.pairings[i]));
    return out;
}

SelfDualDecomposition self_dual_decompose(const FilteredSpace& v, const Matrix& phi, const Matrix& l)
{
    const FieldSpec f = v.field();
    const std::size_t n = v.ambient();
    if (phi.rows() != n || phi.cols() != n || !is_invertible(phi))
        throw PreconditionError("self_dual_decompose: phi is not an invertible map V -> V*");
    const LatticeVerdict lv = lattice_check(v, l, LatticeMode::c);
    if (!lv.holds)
        throw PreconditionError("self_dual_decompose: L is not a c-lattice (" + lv.note + ")");

    // phi^-1(L^perp) = { x : L^T phi x = 0 }
    const Matrix pre_l_perp = kernel_basis(l.transpose() * phi);
    SelfDualDecomposition out{span_intersection(l, pre_l_perp), Matrix(f, n, 0), Matrix(f, n, 0), Matrix(f, 0, 0),
                              Matrix(f, 0, 0), *lv.witness, false, false};
    out.d = complement_basis(out.k);
    const Matrix pre_k_perp = kernel_basis(out.k.transpose() * phi);
    if (!span_contains(pre_k_perp, out.k))
        throw CertificateError("self_dual_decompose: K is not contained in phi^-1(K^perp)");
    // F: greedy completion of K inside phi^-1(K^perp) using its own basis vectors
    Matrix span = out.k;
    for (std::size_t j = 0; j < pre_k_perp.cols(); ++j) {
        Matrix trial = span.hstack(pre_k_perp.col(j));
        if (rank(trial) > span.cols()) {
            span = trial;
            out.f = out.f.hstack(pre_k_perp.col(j));
        }
    }

    out.iso = out.d.transpose() * phi * out.k.hstack(out.f);
    auto inv = inverse(out.iso);
    if (!inv)
        throw CertificateError("self_dual_decompose: K (+) F -> D* is not an isomorphism");
    out.iso_inverse = *inv;
    if (!(out.iso * out.iso_inverse == Matrix::identity(f, out.iso.rows())) ||
        !is_invertible(out.k.hstack(out.d)))
        throw CertificateError("self_dual_decompose: certificate check failed");
    out.k_zero = out.k.cols() == 0;
    out.d_zero = out.d.cols() == 0;
    return out;
}

Matrix extend_functional(const FilteredSpace& b, const Matrix& a, const Matrix& f, std::size_t k)
{
    const FieldSpec field = b.field();
    const std::size_t n = b.ambient();
    if (a.rows() != n)
        throw ShapeError("extend_functional: A lives in the wrong ambient space");
    if (!has_independent_columns(a))
        throw PreconditionError("extend_functional: A has dependent columns");
    if (f.rows() != 1 || f.cols() != a.cols())
        throw ShapeError("extend_functional: f must be a 1 x dim(A) row");
    if (k == 0 || k > b.flag_count())
        throw PreconditionError("extend_functional: continuity witness index out of range");
    const Matrix& u = b.flag(k);

    const Matrix meet = span_intersection(a, u);
    if (!(f * coordinates(a, meet)).is_zero())
        throw PreconditionError("extend_functional: f does not vanish on A ∩ U_" + std::to_string(k));

    // Descend to B/U_k: the columns of A independent modulo U_k carry f,
    // U_k and a greedy complement of A + U_k are sent to 0.
    std::vector<std::size_t> carriers;
    Matrix span = u;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Matrix trial = span.hstack(a.col(j));
        if (rank(trial) > span.cols()) {
            span = trial;
            carriers.push_back(j);
        }
    }
    const Matrix rest = complement_basis(span);
    const Matrix basis = a.cols_subset(carriers).hstack(u).hstack(rest);
    Matrix values(field, 1, n);
    for (std::size_t i = 0; i < carriers.size(); ++i)
        values.set(0, i, f(0, carriers[i]));
    const Matrix g = values * *inverse(basis);

    if (!(g * a == f) || !(g * u).is_zero())
        throw CertificateError("extend_functional: extension check failed");
    return g;
}

EvWitness ev_witness(const TateObj& v, std::size_t depth)
{
    const std::size_t c = v.c_lattice.dim(depth - 1);
    const std::size_t d = v.d_lattice.dim(depth - 1);
    const FieldSpec f = v.c_lattice.field();
    EvWitness out{depth, Matrix::identity(f, c + d).block(0, 0, c + d, c), Matrix(f, 0, 0), false};
    out.annihilator = kernel_basis(out.open.transpose());
    out.verified = (out.annihilator.transpose() * out.open).is_zero() && out.annihilator.cols() == d;
    return out;
}

}  // namespace tatespace
