#include <doctest.h>

#include <tcone/errors.hpp>
#include <tcone/exactla.hpp>

#include "oracles.hpp"

using namespace tcone;

TEST_CASE("rank and kernel") {
    SUBCASE("identity") {
        const RankKernel rk = rank_kernel(Matrix::identity(2));
        CHECK(rk.rank == 2);
        CHECK(rk.kernel.dim() == 0);
    }
    SUBCASE("single row") {
        const RankKernel rk = rank_kernel(Matrix::from_rows(2, {{1, 1}}));
        CHECK(rk.rank == 1);
        REQUIRE(rk.kernel.dim() == 1);
        CHECK(rk.kernel.basis()[0] == Vector{-1, 1});
        CHECK(rk.kernel.contains(Vector{1, -1}));
    }
    SUBCASE("zero matrix") {
        const RankKernel rk = rank_kernel(Matrix(3, 3));
        CHECK(rk.rank == 0);
        CHECK(rk.kernel.same_span(SubspaceBasis::full(3)));
    }
    SUBCASE("fractions") {
        const Matrix a = Matrix::from_rows(3, {{Scalar(1, 2), Scalar(1, 3), 1}, {1, Scalar(2, 3), 2}});
        const RankKernel rk = rank_kernel(a);
        CHECK(rk.rank == 1);
        for (const auto& v : rk.kernel.basis()) CHECK(is_zero(a * v));
    }
}

TEST_CASE("row reduction") {
    const RowEchelon e = row_reduce(Matrix::from_rows(3, {{0, 2, 4}, {1, 1, 1}, {1, 2, 3}}));
    CHECK(e.rank() == 2);
    CHECK(e.pivots == std::vector<std::size_t>{0, 1});
    CHECK(e.reduced.row(0) == Vector{1, 0, -1});
    CHECK(e.reduced.row(1) == Vector{0, 1, 2});
}

TEST_CASE("affine solve") {
    SUBCASE("underdetermined") {
        auto s = solve_affine(Matrix::from_rows(2, {{1, 1}}), {1});
        REQUIRE(s);
        CHECK(s->particular == Vector{1, 0});
        CHECK(s->kernel.same_span(SubspaceBasis::span(2, {{1, -1}})));
    }
    SUBCASE("inconsistent") { CHECK(!solve_affine(Matrix(1, 1), {1})); }
    SUBCASE("identity") {
        auto s = solve_affine(Matrix::identity(3), {1, Scalar(-2, 5), 7});
        REQUIRE(s);
        CHECK(s->particular == Vector{1, Scalar(-2, 5), 7});
        CHECK(s->kernel.dim() == 0);
    }
    SUBCASE("no unknowns") {
        CHECK(solve_affine(Matrix(2, 0), {0, 0}));
        CHECK(!solve_affine(Matrix(2, 0), {0, 1}));
    }
    CHECK_THROWS_AS(solve_affine(Matrix::identity(2), {1}), DimensionError);
}

TEST_CASE("subspace membership") {
    const SubspaceBasis s = SubspaceBasis::span(2, {{1, 0}});
    CHECK(subspace_contains(s, {2, 0}));
    CHECK(!subspace_contains(s, {0, 1}));
    CHECK(subspace_contains(s, {0, 0}));
    CHECK(subspace_contains(SubspaceBasis(2), {0, 0}));
    CHECK_THROWS_AS(subspace_contains(s, {1, 0, 0}), DimensionError);
}

TEST_CASE("subspace bookkeeping") {
    SubspaceBasis s(3);
    CHECK(s.insert({1, 2, 3}));
    CHECK(!s.insert({2, 4, 6}));
    CHECK(s.insert({0, 1, 0}));
    CHECK(s.basis()[0] == Vector{1, 2, 3});
    const auto c = s.coordinates({1, 5, 3});
    REQUIRE(c);
    CHECK(*c == Vector{1, 3});
    CHECK(!s.coordinates({0, 0, 1}));
    const SubspaceBasis sum = s + SubspaceBasis::span(3, {{0, 0, 1}});
    CHECK(sum.dim() == 3);
    CHECK(sum.contains(s));
    CHECK(!s.contains(sum));
}

TEST_CASE("inverse and products") {
    const Matrix a = Matrix::from_rows(2, {{2, 1}, {1, 1}});
    CHECK(a * inverse(a) == Matrix::identity(2));
    CHECK_THROWS_AS(inverse(Matrix::from_rows(2, {{1, 2}, {2, 4}})), PreconditionError);
    CHECK(a.transpose().row(0) == Vector{2, 1});
    CHECK(dot({1, 2}, {3, 4}) == 11);
}

TEST_CASE("rank agrees with the minor oracle") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> rows(1, 4), cols(1, 5);
    for (int trial = 0; trial < 60; ++trial) {
        const Matrix a = oracle::random_matrix(rng, rows(rng), cols(rng));
        const RankKernel rk = rank_kernel(a);
        CHECK(rk.rank == oracle::minor_rank(a));
        CHECK(rk.kernel.dim() == a.cols() - rk.rank);
        for (const auto& v : rk.kernel.basis()) CHECK(is_zero(a * v));
    }
}
