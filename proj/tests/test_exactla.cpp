#include "doctest.h"
#include "oracle.hpp"

#include "tatespace/errors.hpp"
#include "tatespace/generators.hpp"
#include "tatespace/linalg.hpp"

using namespace tatespace;

namespace {
const FieldSpec gf2(2), gf3(3), gf5(5);
}

TEST_CASE("field arithmetic")
{
    CHECK(gf5.inv(2) == 3);
    CHECK(gf5.reduce(-1) == 4);
    CHECK(gf3.mul(2, 2) == 1);
    CHECK_THROWS_AS(FieldSpec(4), PreconditionError);
    CHECK_THROWS_AS(FieldSpec(1), PreconditionError);
}

TEST_CASE("matrix shape and field errors")
{
    const Matrix a(gf2, {{1, 0}});
    CHECK_THROWS_AS(a * a, ShapeError);
    CHECK_THROWS_AS(a + Matrix(gf3, {{1, 0}}), FieldMismatch);
    CHECK(Matrix(gf5, {{7, -1}}) == Matrix(gf5, {{2, 4}}));
    CHECK((Matrix::zero(gf2, 3, 0) * Matrix::zero(gf2, 0, 2)).is_zero());
}

TEST_CASE("solve: canonical solution sets free variables to zero")
{
    const auto x = solve_linear(Matrix(gf2, {{1, 1}}), Matrix(gf2, {{1}}));
    REQUIRE(x);
    CHECK(*x == Matrix(gf2, {{1}, {0}}));

    const Matrix id = Matrix::identity(gf5, 3);
    const Matrix b(gf5, {{1}, {2}, {3}});
    CHECK(*solve_linear(id, b) == b);

    CHECK_FALSE(solve_linear(Matrix(gf2, {{1, 1}, {1, 1}}), Matrix(gf2, {{0}, {1}})));
}

TEST_CASE("kernel, image and complement examples")
{
    CHECK(kernel_basis(Matrix(gf2, {{1, 1}})) == Matrix(gf2, {{1}, {1}}));
    CHECK(image_basis(Matrix(gf5, {{2, 4}, {1, 2}})) == Matrix(gf5, {{2}, {1}}));
    const Matrix s(gf2, {{1, 0}, {1, 0}, {0, 1}});
    CHECK(complement_basis(s) == Matrix(gf2, {{1}, {0}, {0}}));
    CHECK(subspace_basis(s, SubspaceMode::complement) == complement_basis(s));
    CHECK_THROWS_AS(complement_basis(Matrix(gf2, {{1, 1}, {0, 0}})), PreconditionError);
    CHECK(complement_basis(Matrix::zero(gf3, 2, 0)) == Matrix::identity(gf3, 2));
}

TEST_CASE("factor_through examples")
{
    CHECK(factor_through(Matrix(gf2, {{1, 1}}), Matrix(gf2, {{1}})) == Matrix(gf2, {{1}, {0}}));
    CHECK(factor_through(Matrix(gf3, {{1, 0, 2}}), Matrix(gf3, {{2}})) == Matrix(gf3, {{2}, {0}, {0}}));
    CHECK_THROWS_AS(factor_through(Matrix(gf2, {{1, 1}, {1, 1}}), Matrix(gf2, {{1}, {1}})), PreconditionError);
}

TEST_CASE("kron examples")
{
    CHECK(kron(Matrix(gf2, {{1, 1}}), Matrix::identity(gf2, 2)) == Matrix(gf2, {{1, 0, 1, 0}, {0, 1, 0, 1}}));
    CHECK(kron(Matrix(gf3, {{2}}), Matrix(gf3, {{2}})) == Matrix(gf3, {{1}}));
    CHECK(kron(Matrix::zero(gf2, 0, 2), Matrix::identity(gf2, 3)).rows() == 0);
}

TEST_CASE("rank, kernel and solvability agree with brute-force enumeration")
{
    Rng rng(11);
    for (std::uint64_t p : {2, 3, 5}) {
        const FieldSpec f(p);
        for (int t = 0; t < 150; ++t) {
            const std::size_t cols = rng.range(0, p == 5 ? 4 : 5);
            const Matrix m = rng.matrix(f, rng.range(0, 5), cols);
            CAPTURE(p);
            CAPTURE(t);
            CHECK(rank(m) == oracle::rank(m));
            CHECK(kernel_basis(m).cols() == oracle::kernel_dim(m));
            CHECK(oracle::span_contains(m, image_basis(m)));
            CHECK(oracle::span_contains(image_basis(m), m));
            const Matrix b = rng.matrix(f, m.rows(), 1);
            const auto x = solve_linear(m, b);
            CHECK(x.has_value() == oracle::solvable(m, b));
            if (x)
                CHECK(m * *x == b);
        }
    }
}

TEST_CASE("complement completes to a basis, checked by enumeration")
{
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        const FieldSpec& f = t % 2 ? gf3 : gf2;
        const std::size_t n = rng.range(1, 5);
        const Matrix s = rng.injective(f, n, rng.range(0, n));
        const Matrix both = s.hstack(complement_basis(s));
        CHECK(both.cols() == n);
        CHECK(oracle::rank(both) == n);
    }
}

TEST_CASE("inverse and span helpers")
{
    const Matrix m(gf5, {{1, 2}, {3, 4}});
    const auto inv = inverse(m);
    REQUIRE(inv);
    CHECK(m * *inv == Matrix::identity(gf5, 2));
    CHECK_FALSE(inverse(Matrix(gf5, {{1, 2}, {2, 4}})));
    const Matrix a(gf2, {{1, 0}, {0, 1}, {0, 0}});
    const Matrix b(gf2, {{0}, {1}, {1}});
    CHECK(span_intersection(a, b).cols() == 0);
    CHECK(span_sum(a, b).cols() == 3);
    CHECK(coordinates(a, Matrix(gf2, {{1}, {1}, {0}})) == Matrix(gf2, {{1}, {1}}));
    CHECK_THROWS_AS(coordinates(a, b), PreconditionError);
}
