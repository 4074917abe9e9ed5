#include "doctest.h"
#include "oracle.hpp"

#include "tatespace/duality.hpp"
#include "tatespace/errors.hpp"
#include "tatespace/generators.hpp"
#include "tatespace/linalg.hpp"
#include "tatespace/tensor.hpp"

using namespace tatespace;

namespace {
const FieldSpec gf2(2), gf3(3);

IndLCObj single(const Tower& t)
{
    return {t.field(), LazySeq<Tower>::from_vector({t})};
}
}  // namespace

TEST_CASE("diagonal pair indexing")
{
    CHECK(PairIndexing::at(0) == std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(PairIndexing::at(1) == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(PairIndexing::at(2) == std::pair<std::size_t, std::size_t>{1, 0});
    CHECK(PairIndexing::at(3) == std::pair<std::size_t, std::size_t>{0, 2});
    const auto expected = oracle::diagonal_pairs(100, 100, 1000);
    for (std::size_t k = 0; k < expected.size(); ++k) {
        CHECK(PairIndexing::at(k) == expected[k]);
        CHECK(PairIndexing::index_of(expected[k].first, expected[k].second) == k);
    }
    CHECK(PairIndexing::verify_prefix(5000));

    const auto finite = paired_indices(2, 3);
    REQUIRE(finite.length() == std::optional<std::size_t>(6));
    const auto want = oracle::diagonal_pairs(2, 3, 6);
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(finite.at(k) == want[k]);
    const auto mixed = paired_indices(1, std::nullopt);
    CHECK_FALSE(mixed.length());
    CHECK(mixed.at(4) == std::pair<std::size_t, std::size_t>{0, 4});
}

TEST_CASE("k[[s,t]] as the tensor of two power series towers")
{
    const Tower st = tensor_star_towers(power_series(gf2), power_series(gf2));
    const Prefix p = st.materialize(6);
    for (std::size_t n = 0; n < 6; ++n)
        CHECK(p.dims[n] == (n + 1) * (n + 1));
    const Prefix ps = power_series(gf2).materialize(6);
    for (std::size_t n = 0; n < 5; ++n)
        CHECK(p.transitions[n] == kron(ps.transitions[n], ps.transitions[n]));

    const Tower one = Tower::constant(gf2, 1);
    CHECK(tensor_star_towers(one, power_series(gf2)).materialize(4) == power_series(gf2).materialize(4));
}

TEST_CASE("tensor of ind-towers")
{
    const Prefix p = tensor_indtowers(polynomial(gf3), polynomial(gf3)).materialize(4);
    CHECK(p.dims == std::vector<std::size_t>{1, 4, 9, 16});
    const Prefix z = tensor_indtowers(IndTower::zero(gf3), polynomial(gf3)).materialize(4);
    CHECK(z.dims == std::vector<std::size_t>{0, 0, 0, 0});
    CHECK(tensor_indtowers(IndTower::constant(gf3, 1), polynomial(gf3)).materialize(3) ==
          polynomial(gf3).materialize(3));
}

TEST_CASE("tensor of ind-linearly-compact objects enumerates summands diagonally")
{
    const Tower a0 = Tower::constant(gf2, 1), a1 = Tower::constant(gf2, 2);
    const Tower b0 = Tower::constant(gf2, 3), b1 = Tower::constant(gf2, 5);
    const IndLCObj a{gf2, LazySeq<Tower>::from_vector({a0, a1})};
    const IndLCObj b{gf2, LazySeq<Tower>::from_vector({b0, b1})};
    const IndLCObj ab = tensor_star_indlc(a, b);
    REQUIRE(ab.summands.length() == std::optional<std::size_t>(4));
    const std::size_t want[] = {3, 5, 6, 10};  // (0,0) (0,1) (1,0) (1,1)
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(ab.summands.at(k).dim(0) == want[k]);

    const IndLCObj empty{gf2, LazySeq<Tower>::from_vector({})};
    CHECK(tensor_star_indlc(empty, a).summands.length() == std::optional<std::size_t>(0));
    CHECK(tensor_star_indlc(single(power_series(gf2)), single(power_series(gf2))).summands.at(0).materialize(3) ==
          tensor_star_towers(power_series(gf2), power_series(gf2)).materialize(3));
}

TEST_CASE("Tate objects embedded in both categories")
{
    const IndLCObj l = embed_tate_indlc(laurent(gf2));
    CHECK_FALSE(l.summands.length());
    CHECK(l.summands.at(0).materialize(3) == power_series(gf2).materialize(3));
    for (std::size_t k = 1; k < 5; ++k)
        CHECK(l.summands.at(k).materialize(3).dims == std::vector<std::size_t>{1, 1, 1});

    const IndLCObj disc = embed_tate_indlc(TateObj{Tower::zero(gf2), IndTower::constant(gf2, 2)});
    CHECK(disc.summands.length() == std::optional<std::size_t>(1));
    CHECK(disc.summands.at(0).dim(0) == 2);

    const ProDiscObj comp = embed_tate_prodisc(finite_tate(gf2, 3));
    CHECK(comp.factors.length() == std::optional<std::size_t>(1));
    CHECK(comp.factors.at(0).dim(0) == 3);
}

TEST_CASE("tensor products of Tate objects")
{
    const IndLCObj ll = tensor_star_tate(laurent(gf2), laurent(gf2));
    CHECK(ll.summands.at(0).materialize(4) == tensor_star_towers(power_series(gf2), power_series(gf2)).materialize(4));

    const IndLCObj ff = tensor_star_tate(finite_tate(gf3, 2), finite_tate(gf3, 3));
    REQUIRE(ff.summands.length() == std::optional<std::size_t>(1));
    CHECK(ff.summands.at(0).materialize(2).dims == std::vector<std::size_t>{6, 6});

    // k[[s]] against k[t]: both sides list one piece per monomial t^j, each a copy of k[[s]]
    const TateObj s{power_series(gf2), IndTower::zero(gf2)};
    const TateObj t{Tower::zero(gf2), polynomial(gf2)};
    const IndLCObj star = tensor_star_tate(s, t);
    CHECK_FALSE(star.summands.length());
    CHECK(star.summands.at(0).materialize(3).dims == std::vector<std::size_t>{0, 0, 0});
    CHECK(star.summands.at(2).materialize(3) == power_series(gf2).materialize(3));
    const ProDiscObj bang = tensor_bang_tate(s, t);
    CHECK_FALSE(bang.factors.length());
    CHECK(bang.factors.at(3).materialize(3).dims == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("hom presentations of small Tate objects")
{
    const HomPresentation kk = hom_via_tensor(finite_tate(gf2, 1), finite_tate(gf2, 1), 4);
    REQUIRE(kk.hom_dims.size() == 1);
    CHECK(kk.hom_dims[0] == std::vector<std::size_t>{1, 1, 1, 1});

    // Hom(k((t)), k) is the dual of k((t)) factor by factor
    const HomPresentation lk = hom_via_tensor(laurent(gf2), finite_tate(gf2, 1), 3);
    const ProDiscObj dual_l = embed_tate_prodisc(dual_object(laurent(gf2)));
    REQUIRE(lk.hom_dims.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(lk.pairs[k] == std::pair<std::size_t, std::size_t>{k, 0});
        CHECK(lk.hom_dims[k] == dual_l.factors.at(k).materialize(3).dims);
    }
}

TEST_CASE("tensor duality examples")
{
    CHECK(check_tensor_duality(single(power_series(gf2)), single(power_series(gf2)), 4).ok);
    const IndLCObj zero{gf2, LazySeq<Tower>::from_vector({})};
    CHECK(check_tensor_duality(zero, single(power_series(gf2)), 4).ok);
    CHECK(check_tensor_duality(embed_tate_indlc(laurent(gf2)), embed_tate_indlc(laurent(gf2)), 3).ok);
}

TEST_CASE("swap permutation exchanges tensor factors")
{
    Rng rng(41);
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = rng.range(0, 4), n = rng.range(0, 4);
        const Matrix x = rng.matrix(gf3, m, 1), y = rng.matrix(gf3, n, 1);
        CHECK(swap_permutation(gf3, m, n) * kron(x, y) == kron(y, x));
    }
}

TEST_CASE("curry and uncurry are inverse")
{
    Rng rng(42);
    for (int t = 0; t < 50; ++t) {
        const std::size_t a = rng.range(0, 3), b = rng.range(1, 3), c = rng.range(0, 3);
        const Matrix bil = rng.matrix(gf3, c, a * b);
        const Matrix cur = curry(bil, a, b);
        CHECK(uncurry(cur, a, b) == bil);
        // curried(x) applied to y is the bilinear map on x (x) y
        const Matrix x = rng.matrix(gf3, a, 1), y = rng.matrix(gf3, b, 1);
        const Matrix hom = cur * x;
        Matrix applied(gf3, c, 1);
        for (std::size_t i = 0; i < c; ++i) {
            Matrix row(gf3, 1, b);
            for (std::size_t j = 0; j < b; ++j)
                row.set(0, j, hom(i * b + j, 0));
            applied.set(i, 0, (row * y)(0, 0));
        }
        CHECK(applied == bil * kron(x, y));
    }
    CHECK_THROWS_AS(uncurry(Matrix::zero(gf3, 0, 2), 2, 0), ShapeError);
}
