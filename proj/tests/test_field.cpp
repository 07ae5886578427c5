#include <doctest.h>

#include "helpers.hpp"

using namespace permres;
using testing_support::random_matrix;

TEST_CASE("rref of identity and zero")
{
    const FieldSpec f2(2), f3(3);
    const auto id = rref(Matrix::identity(f2, 3));
    CHECK(id.reduced == Matrix::identity(f2, 3));
    CHECK(id.rank == 3);
    CHECK(id.pivots == std::vector<Index>{0, 1, 2});

    const auto zero = rref(Matrix(f3, 2, 4));
    CHECK(zero.reduced.is_zero());
    CHECK(zero.rank == 0);
    CHECK(zero.pivots.empty());
}

TEST_CASE("rref of a rank-one matrix over F_5")
{
    const FieldSpec f5(5);
    const auto r = rref(Matrix::from_rows(f5, {{1, 2}, {2, 4}}));
    CHECK(r.reduced == Matrix::from_rows(f5, {{1, 2}, {0, 0}}));
    CHECK(r.rank == 1);
}

TEST_CASE("nullspace conventions")
{
    const FieldSpec f2(2);
    CHECK(nullspace(Matrix::identity(f2, 4)).cols() == 0);
    CHECK(nullspace(Matrix(f2, 2, 3)) == Matrix::identity(f2, 3));
    CHECK(nullspace(Matrix::from_rows(f2, {{1, 1}})) == Matrix::column(f2, {1, 1}));
}

TEST_CASE("solve")
{
    const FieldSpec f3(3);
    const Matrix b = Matrix::from_rows(f3, {{1, 2}, {0, 1}, {2, 2}});
    CHECK(*solve(Matrix::identity(f3, 3), b) == b);
    CHECK_FALSE(solve(Matrix(f3, 2, 2), Matrix::column(f3, {1, 0})).has_value());
    CHECK(*solve(Matrix::from_rows(f3, {{1, 1}, {0, 1}}), Matrix::column(f3, {2, 1})) == Matrix::column(f3, {1, 1}));
    CHECK_THROWS_AS(solve(Matrix(f3, 2, 2), Matrix(f3, 3, 1)), Error);
}

TEST_CASE("solve returns the particular solution with free variables zero")
{
    const FieldSpec f2(2);
    // x + y = 1 has solutions (1,0) and (0,1); the free variable y is set to 0
    CHECK(*solve(Matrix::from_rows(f2, {{1, 1}}), Matrix::column(f2, {1})) == Matrix::column(f2, {1, 0}));
}

TEST_CASE("rank, nullspace and solve agree with exhaustive enumeration")
{
    std::mt19937_64 rng(11);
    for (int p : {2, 3, 5})
    {
        const FieldSpec f(p);
        for (int trial = 0; trial < 40; ++trial)
        {
            const Index rows = 1 + static_cast<Index>(rng() % 4);
            const Index cols = 1 + static_cast<Index>(rng() % (p == 5 ? 4 : 5));
            Matrix a = random_matrix(f, rows, cols, rng);
            if (trial % 4 == 0)
                a.set_block(rows - 1, 0, a.row(0));   // force dependencies
            const auto mat = oracle::to_mat(a);
            const auto cols_u = static_cast<std::size_t>(cols);

            CHECK(rank(a) == oracle::rank(mat, cols_u, p));
            const Matrix n = nullspace(a);
            CHECK(n.cols() == oracle::nullity(mat, cols_u, p));
            CHECK((a * n).is_zero());
            CHECK(rank(n) == n.cols());

            const auto r = rref(a);
            CHECK(rref(r.reduced).reduced == r.reduced);
            CHECK(rank(vstack(a, r.reduced)) == r.rank);

            const Matrix b = random_matrix(f, rows, 1, rng);
            oracle::Vec bv(static_cast<std::size_t>(rows));
            for (Index i = 0; i < rows; ++i)
                bv[static_cast<std::size_t>(i)] = b(i, 0);
            const auto x = solve(a, b);
            CHECK(x.has_value() == oracle::solvable(mat, bv, cols_u, p));
            if (x)
                CHECK(a * *x == b);
        }
    }
}

TEST_CASE("products and inverses match naive arithmetic")
{
    std::mt19937_64 rng(5);
    for (int p : {2, 3, 7})
    {
        const FieldSpec f(p);
        for (int trial = 0; trial < 20; ++trial)
        {
            const Matrix a = random_matrix(f, 3, 4, rng);
            const Matrix b = random_matrix(f, 4, 2, rng);
            CHECK(oracle::to_mat(a * b) == oracle::mul(oracle::to_mat(a), oracle::to_mat(b), p, 4));
            const Matrix sq = random_matrix(f, 3, 3, rng);
            const auto inv = inverse(sq);
            CHECK(inv.has_value() == (oracle::rank(oracle::to_mat(sq), 3, p) == 3));
            if (inv)
                CHECK((sq * *inv).is_identity());
        }
    }
}

TEST_CASE("field construction rejects composites")
{
    CHECK_THROWS_AS(FieldSpec(4), Error);
    CHECK_THROWS_AS(FieldSpec(1), Error);
    CHECK(FieldSpec(7).inverse(3) == 5);
}
