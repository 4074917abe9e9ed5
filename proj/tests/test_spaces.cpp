#include "doctest.h"
#include "oracle.hpp"

#include "tatespace/filtered.hpp"
#include "tatespace/generators.hpp"
#include "tatespace/linalg.hpp"
#include "tatespace/spaces.hpp"

using namespace tatespace;

namespace {

const FieldSpec gf2(2), gf5(5);

/// k[t]/t^(n+1) -> k[t]/t^n on monomial coordinates, built by hand.
Matrix drop_last(const FieldSpec& f, std::size_t n)
{
    Matrix m(f, n, n + 1);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

/// Tower with kernel dims 1, 2, 3, ... and an unbounded tail.
Tower growing_kernels(const FieldSpec& f)
{
    return Tower(
        f,
        [f](std::size_t i) -> Level {
            const std::size_t dim = 1 + i * (i + 1) / 2;
            if (i == 0)
                return {dim, Matrix(f, 0, dim)};
            Matrix link(f, dim - i, dim);
            for (std::size_t r = 0; r < dim - i; ++r)
                link.set(r, r, 1);
            return {dim, link};
        },
        TailDescriptor::unbounded());
}

}  // namespace

TEST_CASE("power series tower at depth 3")
{
    const Prefix p = power_series(gf2).materialize(3);
    CHECK(p.dims == std::vector<std::size_t>{1, 2, 3});
    REQUIRE(p.transitions.size() == 2);
    CHECK(p.transitions[0] == drop_last(gf2, 1));
    CHECK(p.transitions[1] == drop_last(gf2, 2));
}

TEST_CASE("constant tower and depth-1 materialization")
{
    const Prefix p = Tower::constant(gf5, 1).materialize(5);
    CHECK(p.dims == std::vector<std::size_t>(5, 1));
    for (const Matrix& m : p.transitions)
        CHECK(m == Matrix::identity(gf5, 1));
    const Prefix one = power_series(gf5).materialize(1);
    CHECK(one.dims == std::vector<std::size_t>{1});
    CHECK(one.transitions.empty());
    CHECK_THROWS_AS(power_series(gf5).materialize(0), PreconditionError);
}

TEST_CASE("builtin spaces")
{
    const TatePrefix l = materialize(laurent(gf2), 4);
    CHECK(l.c_lattice.dims == std::vector<std::size_t>{1, 2, 3, 4});
    CHECK(l.d_lattice.dims == std::vector<std::size_t>{1, 2, 3, 4});

    const Prefix poly = polynomial(gf2).materialize(4);
    CHECK(poly.dims == std::vector<std::size_t>{1, 2, 3, 4});
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(poly.transitions[i] == drop_last(gf2, i + 1).transpose());

    CHECK(std::get<FinVect>(builtin_space("constant", gf2, 0)) == FinVect{0});
    CHECK(std::holds_alternative<TateObj>(builtin_space("laurent", gf2)));
    CHECK_THROWS_AS(builtin_space("banach", gf2), PreconditionError);
}

TEST_CASE("tail descriptors are enforced lazily")
{
    Prefix p{gf2, {1, 3}, {Matrix(gf2, {{1, 0, 0}})}};
    const Tower bad = Tower::from_prefix(p, TailDescriptor::bounded_ker(1));
    CHECK(bad.dim(0) == 1);
    CHECK_THROWS_AS(bad.materialize(2), DescriptorViolation);

    const Tower short_prefix = Tower::from_prefix(power_series(gf2).materialize(2), TailDescriptor::unspecified());
    CHECK_THROWS_AS(short_prefix.materialize(3), PrefixExhausted);

    const Tower stable = Tower::from_prefix(power_series(gf2).materialize(2), TailDescriptor::stabilizing(2));
    CHECK(stable.materialize(5).dims == std::vector<std::size_t>{1, 2, 2, 2, 2});
}

TEST_CASE("normalize_indtower examples")
{
    const Prefix zeros{gf2, {1, 1, 1}, {Matrix(gf2, {{0}}), Matrix(gf2, {{0}})}};
    const NormalizedIndTower n = normalize_indtower(IndTower::from_prefix(zeros, TailDescriptor::unspecified()), 3);
    CHECK(n.system.materialize(3).dims == std::vector<std::size_t>{0, 0, 1});

    const Prefix onto{gf2, {2, 1}, {Matrix(gf2, {{1, 1}})}};
    CHECK(normalize_indtower(IndTower::from_prefix(onto, TailDescriptor::unspecified()), 2).system.materialize(2).dims ==
          std::vector<std::size_t>{1, 1});

    const NormalizedIndTower same = normalize_indtower(polynomial(gf5), 4);
    CHECK(same.system.materialize(4) == polynomial(gf5).materialize(4));
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(same.comparison[i] == Matrix::identity(gf5, i + 1));
}

TEST_CASE("normalize_tower examples")
{
    const Prefix zeros{gf2, {3, 3}, {Matrix::zero(gf2, 3, 3)}};
    const NormalizedTower n = normalize_tower(Tower::from_prefix(zeros, TailDescriptor::unspecified()), 2);
    CHECK(n.system.materialize(2).dims == std::vector<std::size_t>{0, 3});

    const NormalizedTower id = normalize_tower(Tower::constant(gf2, 2), 3);
    CHECK(id.system.materialize(3) == Tower::constant(gf2, 2).materialize(3));

    // rank-1 maps: the image chain at level 1 is cut down to one dimension
    const Matrix e(gf2, {{1, 0}, {0, 0}});
    const Prefix rank_one{gf2, {2, 2, 2}, {e, e}};
    const NormalizedTower r = normalize_tower(Tower::from_prefix(rank_one, TailDescriptor::unspecified()), 3);
    CHECK(r.system.materialize(3).dims == std::vector<std::size_t>{1, 1, 2});
    for (const Matrix& m : r.system.materialize(3).transitions)
        CHECK(oracle::rank(m) == m.rows());
}

TEST_CASE("lattice_check on the laurent window")
{
    // coordinates t^-2, t^-1, 1, t
    const Matrix e = Matrix::identity(gf2, 4);
    const std::size_t one_t[] = {2, 3}, t_only[] = {3}, negative[] = {1, 0}, inv_t[] = {1};
    const FilteredSpace w(gf2, 4, {e.cols_subset(one_t), e.cols_subset(t_only), Matrix::zero(gf2, 4, 0)});

    const LatticeVerdict c = lattice_check(w, e.cols_subset(one_t), LatticeMode::c);
    CHECK(c.holds);
    CHECK(c.witness == std::optional<std::size_t>(1));
    const LatticeVerdict d = lattice_check(w, e.cols_subset(negative), LatticeMode::d);
    CHECK(d.holds);
    CHECK(d.witness == std::optional<std::size_t>(1));
    CHECK_FALSE(lattice_check(w, e.cols_subset(inv_t), LatticeMode::c).holds);
    CHECK_THROWS_AS(lattice_check(w, Matrix(gf2, {{1, 1}, {0, 0}, {0, 0}, {0, 0}}), LatticeMode::c),
                    PreconditionError);
}

TEST_CASE("tate verdicts")
{
    const TateVerdict ps = is_tate_verdict(power_series(gf2), 5);
    CHECK(ps.verdict == Verdict::tate);
    CHECK(ps.profile == std::vector<std::size_t>{1, 1, 1, 1});

    const TateVerdict grow = is_tate_verdict(growing_kernels(gf2), 4);
    CHECK(grow.verdict == Verdict::not_tate);
    CHECK(grow.profile == std::vector<std::size_t>{1, 2, 3});

    const Tower anon = Tower::from_prefix(power_series(gf2).materialize(3), TailDescriptor::unspecified());
    CHECK(is_tate_verdict(anon, 3).verdict == Verdict::inconclusive);
}

TEST_CASE("truncation functoriality on random systems")
{
    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        const FieldSpec& f = t % 2 ? gf5 : gf2;
        const std::size_t depth = rng.range(2, 6);
        const Tower a = random_tower(rng, f, 5, depth);
        const IndTower b = random_indtower(rng, f, 5, depth);
        const Prefix pa = a.materialize(depth), pb = b.materialize(depth);
        for (std::size_t n = 1; n < depth; ++n) {
            const Prefix sa = a.materialize(n), sb = b.materialize(n);
            CHECK(std::equal(sa.dims.begin(), sa.dims.end(), pa.dims.begin()));
            CHECK(std::equal(sa.transitions.begin(), sa.transitions.end(), pa.transitions.begin()));
            CHECK(std::equal(sb.transitions.begin(), sb.transitions.end(), pb.transitions.begin()));
        }
    }
}

TEST_CASE("normalized ind-towers have injective transitions and the same top")
{
    Rng rng(22);
    for (int t = 0; t < 100; ++t) {
        const FieldSpec& f = t % 2 ? gf5 : gf2;
        const std::size_t depth = rng.range(1, 5);
        const IndTower x = random_indtower(rng, f, 4, depth);
        const Prefix n = normalize_indtower(x, depth).system.materialize(depth);
        CHECK(n.dims.back() == x.dim(depth - 1));
        for (const Matrix& m : n.transitions)
            CHECK(oracle::kernel_dim(m) == 0);
    }
}
