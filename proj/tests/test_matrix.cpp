#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "catamatch/harness.hpp"
#include "catamatch/matrix.hpp"

using namespace cm;

namespace {

SkewMatrix random_skew(const PrimeField& F, std::size_t n, std::mt19937_64& rng) {
    SkewMatrix M(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            M.set_pair(F, i, j, rng() % F.modulus());
    return M;
}

} // namespace

TEST_CASE("rank and determinant basics") {
    const PrimeField F(101);
    DenseMatrix A(3, 3);
    A.at(0, 0) = 1;
    A.at(1, 1) = 2;
    A.at(2, 2) = 3;
    CHECK(rank_of(F, A) == 3);
    CHECK(det_of(F, A) == 6);
    A.at(2, 2) = 0;
    CHECK(rank_of(F, A) == 2);
    CHECK(det_of(F, A) == 0);
    CHECK(rank_of(F, DenseMatrix::identity(5)) == 5);
}

TEST_CASE("rank cross-validated against det on square cases") {
    const PrimeField F(101);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 5;
        DenseMatrix A(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) A.at(i, j) = rng() % 101;
        CHECK((rank_of(F, A) == n) == (det_of(F, A) != 0));
    }
}

TEST_CASE("random 5x5 determinant equals the permutation sum") {
    const PrimeField F((1ull << 61) - 1);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        DenseMatrix A(5, 5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) A.at(i, j) = rng() % F.modulus();
        CHECK(det_of(F, A) == det_brute(F, A));
    }
}

TEST_CASE("4x4 Pfaffian formula") {
    const PrimeField F((1ull << 61) - 1);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        SkewMatrix M = random_skew(F, 4, rng);
        // Pf = a12 a34 - a13 a24 + a14 a23 (1-based indices)
        const u64 want = F.add(F.sub(F.mul(M.at(0, 1), M.at(2, 3)), F.mul(M.at(0, 2), M.at(1, 3))),
                               F.mul(M.at(0, 3), M.at(1, 2)));
        CHECK(pfaffian(F, M) == want);
    }
}

TEST_CASE("Pfaffian squared equals the determinant") {
    const PrimeField F((1ull << 61) - 1);
    std::mt19937_64 rng(9);
    for (std::size_t n : {2u, 4u, 6u, 8u})
        for (int t = 0; t < 50; ++t) {
            SkewMatrix M = random_skew(F, n, rng);
            const u64 pf = pfaffian(F, M);
            CHECK(F.mul(pf, pf) == det_of(F, M.dense()));
        }
}

TEST_CASE("Pfaffian matches the expansion oracle") {
    const PrimeField F(101);
    std::mt19937_64 rng(11);
    for (std::size_t n : {2u, 4u, 6u})
        for (int t = 0; t < 30; ++t) {
            SkewMatrix M = random_skew(F, n, rng);
            CHECK(pfaffian(F, M) == pfaffian_brute(F, M));
        }
    SkewMatrix odd(3);
    odd.set_pair(F, 0, 1, 5);
    CHECK(pfaffian(F, odd) == 0);
}

TEST_CASE("polynomial Pfaffian agrees with the scalar Pfaffian pointwise") {
    const PrimeField F((1ull << 61) - 1);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + 2 * (rng() % 3);
        PolySkewMatrix A(n);
        std::size_t dmax = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const std::size_t d = rng() % 4;
                A.set_pair(F, i, j, UniPoly::monomial(1 + rng() % 100, d));
                dmax += d;
            }
        const UniPoly pf = pfaffian_poly(F, A, dmax);
        for (u64 z : {0ull, 1ull, 2ull, 77ull})
            CHECK(poly_eval(F, pf, z) == pfaffian(F, A.evaluated(F, z)));
    }
}

TEST_CASE("skew validation") {
    const PrimeField F(101);
    DenseMatrix bad(2, 2);
    bad.at(0, 1) = 3;
    bad.at(1, 0) = 3;  // not the negation
    CHECK_THROWS_AS(SkewMatrix(F, bad), InvalidInput);
}

TEST_CASE("deficiency of a skew matrix") {
    const PrimeField F(101);
    // P3 Tutte evaluation: edges (0,1), (1,2) both nonzero -> rank 2, D = {0, 2}
    SkewMatrix T(3);
    T.set_pair(F, 0, 1, 1);
    T.set_pair(F, 1, 2, 1);
    CHECK(rank_of(F, T) == 2);
    CHECK(deficiency(F, T) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("deficiency of a dense matrix indexes rows then columns") {
    const PrimeField F(101);
    DenseMatrix A(1, 2);
    A.at(0, 0) = 1;
    A.at(0, 1) = 1;
    // removing either column keeps rank 1; removing the row does not
    CHECK(deficiency(F, A) == std::vector<std::size_t>{1, 2});
}
