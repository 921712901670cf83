/**
 * Tests for the exact linear algebra layer: sparse rational matrices,
 * fraction-free rank, kernel/image bases, the reusable solver, and homology
 * of two-step complexes.  Ranks are checked against an independent dense
 * Gaussian elimination oracle on pseudorandom matrices.
 */

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "brkz/elimination.hpp"
#include "brkz/homology.hpp"
#include "brkz/matrix.hpp"

using namespace brkz;
using namespace brkz::exactla;

namespace {

/** Dense Gaussian elimination over the rationals; the reference rank. */
int dense_rank_oracle(const RationalMatrix& m)
{
    std::vector<std::vector<Rational>> a(m.rows, std::vector<Rational>(m.cols, Rational(0)));
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [i, v] : m.col[j]) a[i][j] = v;
    int r = 0;
    for (int j = 0; j < m.cols && r < m.rows; ++j) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (a[i][j] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[p], a[r]);
        for (int i = r + 1; i < m.rows; ++i) {
            if (a[i][j] == 0) continue;
            Rational f = a[i][j] / a[r][j];
            for (int k = j; k < m.cols; ++k) a[i][k] -= f * a[r][k];
        }
        ++r;
    }
    return r;
}

RationalMatrix random_matrix(int rows, int cols, int density_pct, std::mt19937& rng)
{
    RationalMatrix m(rows, cols);
    std::uniform_int_distribution<int> pct(0, 99), val(-4, 4), den(1, 3);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            if (pct(rng) < density_pct) {
                int v = val(rng);
                if (v) m.add_entry(i, j, Rational(v, den(rng)));
            }
    return m;
}

} // namespace

TEST_CASE("sparse matrix arithmetic basics")
{
    RationalMatrix a(2, 3);
    a.add_entry(0, 0, 1);
    a.add_entry(0, 0, 1);          // accumulates to 2
    a.add_entry(1, 2, Rational(1, 2));
    a.add_entry(0, 1, 3);
    a.add_entry(0, 1, -3);         // cancels to zero, entry pruned
    REQUIRE(a.at(0, 0) == 2);
    REQUIRE(a.at(0, 1) == 0);
    REQUIRE(a.nnz() == 2);

    RationalMatrix b(3, 2);
    b.add_entry(0, 0, 1);
    b.add_entry(2, 1, 4);
    RationalMatrix c = a * b;      // 2x2: c(0,0)=2, c(1,1)=2
    REQUIRE(c.at(0, 0) == 2);
    REQUIRE(c.at(1, 1) == 2);
    REQUIRE(c.at(0, 1) == 0);

    REQUIRE(a.transpose().transpose() == a);
    REQUIRE((a - a).is_zero());
    REQUIRE(a.scaled(Rational(3)).at(0, 0) == 6);
    REQUIRE(RationalMatrix::identity(3) * b == b);
    REQUIRE(a.apply({1, 0, 2}) == std::vector<Rational>{2, 1});
    REQUIRE(RationalMatrix::hcat(a, a).cols == 6);
}

TEST_CASE("fraction-free rank agrees with the dense oracle")
{
    std::mt19937 rng(20260814);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + (int)(rng() % 8), cols = 1 + (int)(rng() % 8);
        RationalMatrix m = random_matrix(rows, cols, 40, rng);
        int expect = dense_rank_oracle(m);
        REQUIRE(rank(m) == expect);
        REQUIRE(rank(m.transpose()) == expect);
    }
}

TEST_CASE("rank on structured matrices")
{
    // rank-1 outer product plus a frozen singular example
    RationalMatrix outer(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) outer.add_entry(i, j, Rational((i + 1) * (j + 2)));
    REQUIRE(rank(outer) == 1);

    RationalMatrix s(3, 3);
    int vals[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};   // rows in arithmetic progression
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s.add_entry(i, j, vals[i][j]);
    REQUIRE(rank(s) == 2);
    REQUIRE(rank(RationalMatrix::identity(5)) == 5);
    REQUIRE(rank(RationalMatrix(3, 7)) == 0);
}

TEST_CASE("kernel and image bases")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        RationalMatrix m = random_matrix(2 + (int)(rng() % 6), 2 + (int)(rng() % 6), 45, rng);
        int r = rank(m);
        RationalMatrix k = kernel_basis(m);
        RationalMatrix im = image_basis(m);
        REQUIRE(k.cols == m.cols - r);
        REQUIRE(im.cols == r);
        REQUIRE((m * k).is_zero());
        REQUIRE(rank(k) == k.cols);
        REQUIRE(rank(im) == r);
        REQUIRE(rank(RationalMatrix::hcat(im, m)) == r);   // image spans all columns
    }
}

TEST_CASE("solver finds exact solutions and rejects inconsistent systems")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        RationalMatrix a = random_matrix(3 + (int)(rng() % 5), 3 + (int)(rng() % 5), 40, rng);
        Solver solver(a);
        REQUIRE(solver.rank() == rank(a));

        // consistent: b = A y for random y
        std::vector<Rational> y(a.cols);
        for (auto& v : y) v = Rational((int)(rng() % 7) - 3);
        auto b = a.apply(y);
        auto x = solver.solve(b);
        REQUIRE(x.has_value());
        REQUIRE(a.apply(*x) == b);
    }

    RationalMatrix a(2, 1);
    a.add_entry(0, 0, 1);          // column (1, 0)
    Solver solver(a);
    REQUIRE_FALSE(solver.solve({0, 1}).has_value());
    REQUIRE(solver.solve({5, 0}).has_value());
}

TEST_CASE("modular rank pre-pass")
{
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 15; ++trial) {
        RationalMatrix m = random_matrix(6, 6, 40, rng);
        int modular = rank_mod_p(m, 1000003);
        if (modular >= 0) REQUIRE(modular <= rank(m));
    }
    // integer matrices: equality holds for a prime not dividing any minor ratio
    RationalMatrix s(3, 3);
    int vals[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s.add_entry(i, j, vals[i][j]);
    REQUIRE(rank_mod_p(s, 1000003) == 2);
}

TEST_CASE("homology of the triangle (simplicial circle)")
{
    // vertices 0,1,2; edges e0={0,1}, e1={1,2}, e2={0,2}; boundary C1 -> C0
    RationalMatrix d1(3, 3);
    d1.add_entry(1, 0, 1); d1.add_entry(0, 0, -1);
    d1.add_entry(2, 1, 1); d1.add_entry(1, 1, -1);
    d1.add_entry(2, 2, 1); d1.add_entry(0, 2, -1);

    // H_1: in degree 1 the incoming differential is zero
    SubquotientBasis h1 = homology(RationalMatrix(3, 0), d1);
    REQUIRE(h1.dim() == 1);
    // H_0: outgoing differential is zero
    SubquotientBasis h0 = homology(d1, RationalMatrix(0, 3));
    REQUIRE(h0.dim() == 1);

    // rotation v -> v+1 on oriented edges: e0 -> e1, e1 -> (2,0) = -e2, e2 -> (1,0) = -e0
    RationalMatrix rot(3, 3);
    rot.add_entry(1, 0, 1);
    rot.add_entry(2, 1, -1);
    rot.add_entry(0, 2, -1);
    REQUIRE(trace_on_homology(h1, rot) == 1);   // fundamental class is fixed

    RationalMatrix rot0(3, 3);     // induced rotation on vertices
    rot0.add_entry(1, 0, 1); rot0.add_entry(2, 1, 1); rot0.add_entry(0, 2, 1);
    REQUIRE(trace_on_homology(h0, rot0) == 1);
}

TEST_CASE("homology validates its inputs")
{
    RationalMatrix d_in(2, 1);
    d_in.add_entry(0, 0, 1);
    RationalMatrix d_out(1, 2);
    d_out.add_entry(0, 0, 1);      // d_out * d_in != 0
    REQUIRE_THROWS_AS(homology(d_in, d_out), invariant_error);
    REQUIRE_THROWS_AS(homology(RationalMatrix(2, 1), RationalMatrix(1, 3)), validation_error);
}

TEST_CASE("homology dimension matches kernel and image ranks on random complexes")
{
    // build complexes A --d_in--> B --d_out--> C with d_out * d_in = 0 by
    // construction: pick d_out at random, then d_in with columns in ker(d_out)
    std::mt19937 rng(555);
    for (int trial = 0; trial < 12; ++trial) {
        int nb = 4 + (int)(rng() % 4), nc = 2 + (int)(rng() % 3);
        RationalMatrix d_out = random_matrix(nc, nb, 35, rng);
        RationalMatrix ker = kernel_basis(d_out);
        RationalMatrix mix = random_matrix(ker.cols, 3, 60, rng);
        RationalMatrix d_in = ker * mix;
        SubquotientBasis h = homology(d_in, d_out);
        REQUIRE(h.dim() == ker.cols - rank(d_in));
        REQUIRE(h.dim() >= 0);

        // identity chain map induces the identity on homology
        RationalMatrix id = RationalMatrix::identity(nb);
        RationalMatrix ind = induced_action_on_homology(h, id);
        REQUIRE(ind == RationalMatrix::identity(h.dim()));
    }
}
