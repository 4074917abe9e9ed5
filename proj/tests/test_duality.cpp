#include "doctest.h"
#include "oracle.hpp"

#include "tatespace/duality.hpp"
#include "tatespace/errors.hpp"
#include "tatespace/generators.hpp"
#include "tatespace/linalg.hpp"

using namespace tatespace;

namespace {
const FieldSpec gf2(2), gf5(5);

Matrix cols(const Matrix& m, std::initializer_list<std::size_t> which)
{
    const std::vector<std::size_t> v(which);
    return m.cols_subset(v);
}
}  // namespace

TEST_CASE("dual of the power series tower is zero padding")
{
    const Prefix d = dual_object(power_series(gf2)).materialize(3);
    CHECK(d.dims == std::vector<std::size_t>{1, 2, 3});
    CHECK(d.transitions[0] == Matrix(gf2, {{1}, {0}}));
    CHECK(d.transitions[1] == Matrix(gf2, {{1, 0}, {0, 1}, {0, 0}}));

    // <phi, g v> = <g^T phi, v> on every basis pair
    const Matrix g = power_series(gf2).transition(1);
    const Matrix gt = d.transitions[1];
    for (std::size_t phi = 0; phi < 2; ++phi)
        for (std::size_t v = 0; v < 3; ++v) {
            const Matrix lhs = Matrix::unit_vector(gf2, 2, phi).transpose() * g * Matrix::unit_vector(gf2, 3, v);
            const Matrix rhs = (gt * Matrix::unit_vector(gf2, 2, phi)).transpose() * Matrix::unit_vector(gf2, 3, v);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("dual of laurent swaps the lattices")
{
    const TateObj l = laurent(gf5);
    const TateObj d = dual_object(l);
    CHECK(d.c_lattice.materialize(4) == dual_object(l.d_lattice).materialize(4));
    CHECK(d.d_lattice.materialize(4) == dual_object(l.c_lattice).materialize(4));
    CHECK(dual_object(FinVect{0}) == FinVect{0});
    const LinMap f(Matrix(gf5, {{1, 2, 3}}));
    CHECK(dual_object(f).src == FinVect{1});
    CHECK(dual_object(f).dst == FinVect{3});
}

TEST_CASE("bidual witnesses")
{
    const BidualReport ps = bidual_check(power_series(gf2), 6);
    CHECK(ps.ok);
    REQUIRE(ps.witness.pairings.size() == 6);
    CHECK(ps.witness.pairings[5] == Matrix::identity(gf2, 6));
    CHECK(bidual_check(laurent(gf2), 4).ok);
    CHECK(bidual_check(FinVect{3}, 1).ok);
}

TEST_CASE("self-duality on the laurent window with the residue pairing")
{
    // coordinates t^-2, t^-1, 1, t; <t^a, t^b> = 1 iff a + b = -1
    const Matrix phi(gf2, {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
    const Matrix e = Matrix::identity(gf2, 4);
    const FilteredSpace v(gf2, 4, {cols(e, {2, 3}), cols(e, {3}), Matrix::zero(gf2, 4, 0)});
    const SelfDualDecomposition out = self_dual_decompose(v, phi, cols(e, {2, 3}));
    CHECK(same_span(out.k, cols(e, {2, 3})));
    CHECK(out.d == cols(e, {0, 1}));
    CHECK(out.f.cols() == 0);
    CHECK(out.iso * out.iso_inverse == Matrix::identity(gf2, 2));
    CHECK(oracle::rank(out.k.hstack(out.d)) == 4);
}

TEST_CASE("self-duality small cases")
{
    const Matrix phi(gf2, {{0, 1}, {1, 0}});
    const Matrix e = Matrix::identity(gf2, 2);
    const FilteredSpace v(gf2, 2, {cols(e, {0}), Matrix::zero(gf2, 2, 0)});
    const SelfDualDecomposition out = self_dual_decompose(v, phi, cols(e, {0}));
    CHECK(out.k == cols(e, {0}));
    CHECK(out.d == cols(e, {1}));

    // presented as D0 (+) D0^* with L = D0^*: D comes back as D0
    const Matrix e4 = Matrix::identity(gf5, 4);
    const Matrix hyper(gf5, {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
    const FilteredSpace w(gf5, 4, {cols(e4, {2, 3}), Matrix::zero(gf5, 4, 0)});
    const SelfDualDecomposition dd = self_dual_decompose(w, hyper, cols(e4, {2, 3}));
    CHECK(dd.d == cols(e4, {0, 1}));

    CHECK_THROWS_AS(self_dual_decompose(v, Matrix::zero(gf2, 2, 2), cols(e, {0})), PreconditionError);
    CHECK_THROWS_AS(self_dual_decompose(v, phi, Matrix::zero(gf2, 2, 0)), PreconditionError);
}

TEST_CASE("extend_functional on k[t]/t^3")
{
    // coordinates 1, t, t^2
    const Matrix e = Matrix::identity(gf2, 3);
    const FilteredSpace b(gf2, 3, {cols(e, {1, 2}), cols(e, {2}), Matrix::zero(gf2, 3, 0)});
    const Matrix a(gf2, {{1}, {1}, {0}});
    const Matrix g = extend_functional(b, a, Matrix(gf2, {{1}}), 3);
    const Matrix adapted = a.hstack(cols(e, {1, 2}));
    // greedy complement of span{1 + t} is {1, t^2}, so g(t) = g(1 + t) - g(1) = 1
    CHECK(g * adapted == Matrix(gf2, {{1, 1, 0}}));

    CHECK(extend_functional(b, a, Matrix(gf2, {{0}}), 3).is_zero());
    const Matrix h(gf2, {{1, 1, 0}});
    CHECK(extend_functional(b, e, h, 3) == h);
    // t lies in U_1, so f(t) = 1 cannot vanish on A ∩ U_1
    CHECK_THROWS_AS(extend_functional(b, cols(e, {1}), Matrix(gf2, {{1}}), 1), PreconditionError);
}

TEST_CASE("evaluation continuity witness")
{
    const EvWitness l = ev_witness(laurent(gf2), 3);
    CHECK(l.verified);
    CHECK(l.open.cols() == 3);
    CHECK(l.annihilator.cols() == 3);

    const EvWitness fin = ev_witness(finite_tate(gf2, 3), 2);
    CHECK(fin.verified);
    CHECK(fin.open == Matrix::identity(gf2, 3));

    const EvWitness disc = ev_witness(TateObj{Tower::zero(gf2), polynomial(gf2)}, 2);
    CHECK(disc.verified);
    CHECK(disc.open.cols() == 0);
}

TEST_CASE("dual is contravariant and keeps invertibility")
{
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        const FieldSpec& f = t % 2 ? gf5 : gf2;
        const Matrix g = rng.matrix(f, rng.range(0, 4), rng.range(0, 4));
        const Matrix h = rng.matrix(f, rng.range(0, 4), g.rows());
        CHECK(dual_object(LinMap(h * g)).mat == dual_object(LinMap(g)).mat * dual_object(LinMap(h)).mat);
        const Matrix sq = rng.matrix(f, 3, 3);
        CHECK((oracle::rank(sq) == 3) == is_invertible(dual_object(LinMap(sq)).mat));
    }
}
