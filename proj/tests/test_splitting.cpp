#include "doctest.h"
#include "oracle.hpp"

#include "tatespace/errors.hpp"
#include "tatespace/generators.hpp"
#include "tatespace/linalg.hpp"
#include "tatespace/splitting.hpp"

using namespace tatespace;

namespace {
const FieldSpec gf2(2), gf3(3);
}

TEST_CASE("lift_splitting: the 2 x 2 example over GF(2)")
{
    const Matrix id1 = Matrix::identity(gf2, 1);
    const Matrix inc(gf2, {{1}, {0}});
    const Matrix second(gf2, {{0, 1}});
    const SplitLadder ladder{inc, second, inc, second, id1, Matrix(gf2, {{1, 1}, {0, 1}}), id1, Matrix(gf2, {{1, 0}})};
    const LiftedSplitting out = lift_splitting(ladder);
    CHECK(out.pi2 == Matrix(gf2, {{1, 1}}));
    CHECK(out.pi2 * inc == id1);
    CHECK(ladder.f * out.pi2 == ladder.pi1 * ladder.g);
    CHECK(out.s1 == Matrix(gf2, {{0}, {1}}));
    CHECK(out.s2 == Matrix(gf2, {{1}, {1}}));
    CHECK(ladder.g * out.s2 == out.s1 * ladder.h);
}

TEST_CASE("lift_splitting: block-diagonal g needs no correction")
{
    const Matrix id1 = Matrix::identity(gf3, 1);
    const Matrix inc(gf3, {{1}, {0}});
    const Matrix second(gf3, {{0, 1}});
    const Matrix g(gf3, {{2, 0}, {0, 1}});
    const SplitLadder ladder{inc, second, inc, second, Matrix(gf3, {{2}}), g, id1, Matrix(gf3, {{1, 0}})};
    CHECK(lift_splitting(ladder).pi2 == Matrix(gf3, {{1, 0}}));
}

TEST_CASE("lift_splitting: zero quotient")
{
    const Matrix id1 = Matrix::identity(gf2, 1);
    const Matrix none = Matrix::zero(gf2, 0, 1);
    const SplitLadder ladder{id1, none, id1, none, id1, id1, Matrix::zero(gf2, 0, 0), id1};
    const LiftedSplitting out = lift_splitting(ladder);
    CHECK(out.pi2 == id1);
    CHECK(out.s2.cols() == 0);
}

TEST_CASE("lift_splitting rejects a non-commuting ladder")
{
    const Matrix id1 = Matrix::identity(gf2, 1);
    const Matrix inc(gf2, {{1}, {0}});
    const Matrix second(gf2, {{0, 1}});
    const SplitLadder bad{inc, second, inc, second, id1, Matrix(gf2, {{0, 1}, {1, 0}}), id1, Matrix(gf2, {{1, 0}})};
    CHECK_THROWS_AS(lift_splitting(bad), PreconditionError);
}

TEST_CASE("split_filtered_ses on k[t]/t^3")
{
    const FilteredSpace b = FilteredSpace::coordinate_tails(gf2, 3, {1, 2});
    const SplitCertificate t2 = split_filtered_ses(b, Matrix(gf2, {{0}, {0}, {1}}));
    CHECK(t2.pi == Matrix(gf2, {{0, 0, 1}}));
    CHECK(t2.flag_compatible == std::vector<bool>{true, true, true});

    CHECK(split_filtered_ses(b, Matrix::identity(gf2, 3)).pi == Matrix::identity(gf2, 3));
    const SplitCertificate zero = split_filtered_ses(b, Matrix::zero(gf2, 3, 0));
    CHECK(zero.pi.rows() == 0);
    CHECK(zero.s == Matrix::identity(gf2, 3));
}

TEST_CASE("topological complements")
{
    const FilteredSpace b(gf2, 2, {Matrix(gf2, {{0}, {1}}), Matrix::zero(gf2, 2, 0)});
    const Matrix a(gf2, {{1}, {1}});
    const ComplementCertificate c = topological_complement(b, a);
    CHECK(c.direct_sum);
    CHECK(c.flags_compatible);
    CHECK(oracle::rank(a.hstack(c.complement)) == 2);
    CHECK(c.projection_a + c.projection_s == Matrix::identity(gf2, 2));

    const ComplementCertificate all = topological_complement(b, Matrix::zero(gf2, 2, 0));
    CHECK(all.complement.cols() == 2);

    const FilteredSpace w = FilteredSpace::coordinate_tails(gf3, 4, {2, 3});
    const Matrix open = Matrix::identity(gf3, 4).block(0, 1, 4, 3);
    const ComplementCertificate oc = topological_complement(w, open);
    CHECK(oc.complement.cols() == 1);
    CHECK(oc.flags_compatible);
}

TEST_CASE("continuous bijections that are not open are refused")
{
    const FilteredSpace adic = FilteredSpace::coordinate_tails(gf2, 3, {1, 2});
    const FilteredSpace discrete(gf2, 3, {Matrix::zero(gf2, 3, 0)});
    const Matrix id = Matrix::identity(gf2, 3);

    const IsomorphismVerdict forward = certify_isomorphism(discrete, adic, id);
    CHECK(forward.bijective);
    CHECK(forward.continuous);
    CHECK_FALSE(forward.open);
    CHECK_FALSE(forward.certified);
    CHECK_FALSE(certify_isomorphism(adic, discrete, id).continuous);

    const IsomorphismVerdict same = certify_isomorphism(adic, adic, id);
    CHECK(same.certified);
    CHECK(same.inverse == std::optional<Matrix>(id));
    CHECK_FALSE(certify_isomorphism(adic, adic, Matrix::zero(gf2, 3, 3)).bijective);
}

TEST_CASE("random splittings checked by enumeration")
{
    Rng rng(51);
    for (int t = 0; t < 80; ++t) {
        const FieldSpec& f = t % 2 ? gf3 : gf2;
        const FilteredSpace b = random_filtered(rng, f, rng.range(1, f.p() == 2 ? 6 : 4), 4);
        const Matrix a = rng.injective(f, b.ambient(), rng.range(0, b.ambient()));
        const SplitCertificate cert = split_filtered_ses(b, a);
        CHECK(cert.pi * a == Matrix::identity(f, a.cols()));
        CHECK((cert.pi * cert.s).is_zero());
        for (std::size_t k = 1; k <= b.flag_count(); ++k) {
            const Matrix image = a * cert.pi * b.flag(k);
            CHECK(oracle::span_contains(a, image));
            CHECK(oracle::span_contains(b.flag(k), image));
        }
    }
}
