#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catamatch/edmonds.hpp"
#include "catamatch/harness.hpp"

using namespace cm;

namespace {

const PrimeField F((1ull << 61) - 1);
Runtime desk_runtime() { return Runtime(RunParams{}); }

DenseMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    DenseMatrix M(n, n);
    M.at(i, j) = 1;
    return M;
}

MatrixPencil identity_pencil(std::size_t n) {
    MatrixPencil P;
    for (std::size_t i = 0; i < n; ++i) P.mats.push_back(unit(n, i, i));
    return P;
}

// {E11, E12, E21}: single moves from the greedy trajectory stall at rank 1,
// but the pair (x2, x3) reaches the full rank 2
MatrixPencil corner_pencil() {
    MatrixPencil P;
    P.mats.push_back(unit(2, 0, 0));
    P.mats.push_back(unit(2, 0, 1));
    P.mats.push_back(unit(2, 1, 0));
    return P;
}

} // namespace

TEST_CASE("epsilon determines l and c") {
    const Runtime rt = desk_runtime();
    CHECK(approx_params(rt, 0.5, 4).l == 1);
    CHECK(approx_params(rt, 0.5, 4).c == 5);
    CHECK(approx_params(rt, 1.0 / 3.0, 4).l == 2);
    CHECK(approx_params(rt, 1.0 / 3.0, 4).c == 7);
    CHECK(approx_params(rt, 0.25, 4).l == 3);
    CHECK(approx_params(rt, 0.25, 4).c == 9);
    CHECK(approx_params(rt, 0.9, 4).l == 1);
    CHECK_THROWS_AS(approx_params(rt, 0.0, 4), InvalidInput);
    CHECK_THROWS_AS(approx_params(rt, 1.0, 4), InvalidInput);
}

TEST_CASE("pencil evaluation") {
    MatrixPencil P = identity_pencil(2);
    const DenseMatrix A = evaluate_pencil(F, P, {3, 0});
    CHECK(A.at(0, 0) == 3);
    CHECK(A.at(1, 1) == 0);
    CHECK(rank_of(F, A) == 1);
}

TEST_CASE("tuple case split finds the lexicographically first witness") {
    const Runtime rt = desk_runtime();
    const ApproxParams params = approx_params(rt, 0.5, 2);
    const MatrixPencil P = identity_pencil(2);
    const auto w = tuple_case_split(F, P, {0, 1}, params);
    REQUIRE(w.has_value());
    CHECK(w->I == std::vector<std::size_t>{0});
    CHECK(w->lambda == std::vector<u64>{1});
    CHECK(!tuple_case_split(F, P, {1, 1}, params).has_value());
}

TEST_CASE("tuple ordinal counts rank-k tuples lexicographically") {
    const Runtime rt = desk_runtime();
    ApproxParams params = approx_params(rt, 0.5, 2);
    params.s = 8;
    const MatrixPencil P = identity_pencil(2);
    // with a = (v, 1) the rank is 1 only at v = 0, so the ordinal of 0 is 1
    CHECK(tuple_ordinal(F, P, {0, 1}, {0}, 1, params) == 1);
    // with a = (v, 0): rank 1 for all v != 0 -> ordinal of v counts 1..v
    for (u64 v = 1; v < 8; ++v)
        CHECK(tuple_ordinal(F, P, {static_cast<u64>(v), 0}, {0}, 1, params) == v);
    CHECK_THROWS_AS(tuple_ordinal(F, P, {1, 1}, {0}, 1, params), ContractViolation);
}

TEST_CASE("greedy dichotomy iteration reaches full rank on the identity pencil") {
    const Runtime rt = desk_runtime();
    const MatrixPencil P = identity_pencil(4);
    const ApproxParams params = approx_params(rt, 0.5, 4);
    const std::vector<u64> a = bjp_greedy(F, P, params);
    CHECK(rank_of(F, evaluate_pencil(F, P, a)) == 4);
}

TEST_CASE("zero pencil has approximate rank 0") {
    MatrixPencil P;
    P.mats.push_back(DenseMatrix(3, 3));
    const ApproxRankResult res = pencil_approx_rank(desk_runtime(), P, 0.5);
    CHECK(res.rank == 0);
    CHECK(res.tape_verified);
}

TEST_CASE("identity pencil approximates to full rank") {
    const ApproxRankResult res = pencil_approx_rank(desk_runtime(), identity_pencil(4), 0.5);
    CHECK(res.rank == 4);
    CHECK(res.tape_verified);
}

TEST_CASE("l = 1 stalls below (2/3) of the optimum; l = 2 clears the bound") {
    const Runtime rt = desk_runtime();
    const MatrixPencil P = corner_pencil();
    const std::size_t r_star = oracle_symbolic_rank(F, P, 30, 64, 123);
    CHECK(r_star == 2);

    const ApproxParams p1 = approx_params(rt, 0.5, 2);  // l = 1
    const std::vector<u64> a1 = bjp_greedy(F, P, p1);
    const std::size_t stalled = rank_of(F, evaluate_pencil(F, P, a1));
    CHECK(stalled == 1);
    CHECK(stalled < (2 * r_star + 2) / 3);  // strictly below ceil((2/3) r*)

    const ApproxRankResult res = pencil_approx_rank(rt, P, 1.0 / 3.0);
    CHECK(res.params.l == 2);
    CHECK(res.rank >= (2 * r_star + 2) / 3);
    CHECK(res.tape_verified);
}

TEST_CASE("approximation bound against the randomized oracle") {
    const Runtime rt = desk_runtime();
    for (u64 seed = 1; seed <= 20; ++seed) {
        const std::size_t n = 3 + seed % 5;
        const std::size_t m = 2 + seed % 3;
        const MatrixPencil P = gen_pencil(seed, m, n, {}, F.modulus());
        for (double eps : {0.5, 1.0 / 3.0}) {
            const ApproxRankResult res = pencil_approx_rank(rt, P, eps);
            const std::size_t r = oracle_symbolic_rank(F, P, 30, res.params.s,
                                                       mix_seed(7, seed));
            const std::size_t bound =
                eps == 0.5 ? (r + 1) / 2 : (2 * r + 2) / 3;
            CHECK(res.rank >= bound);
            CHECK(res.tape_verified);
        }
    }
}

TEST_CASE("ED-TUPLE compression fires on an adversarial tape and restores") {
    const Runtime rt = desk_runtime();
    const MatrixPencil P = corner_pencil();
    const ApproxParams params = approx_params(rt, 0.5, 2);
    const FieldSpec spec(rt.params().prime, params.s);
    // all-zero blocks never certify (rank 0 < max); each compresses
    CatalyticTape tape =
        CatalyticTape::from_values(std::vector<std::vector<u64>>(3, {0, 0, 0}), spec);
    const ApproxRankResult res = pencil_approx_rank_on_tape(rt, P, tape, params);
    CHECK(res.used_fallback);
    CHECK(res.compressions == 3);
    CHECK(res.rank >= 1);
    CHECK(res.tape_verified);
    for (const auto& rec : tape.journal()) {
        CHECK(rec.tag == CaseTag::EdTuple);
        CHECK(rec.restored);
    }
}

TEST_CASE("matroid matching with an identity representation reduces to graph matching") {
    const Runtime rt = desk_runtime();
    for (const char* name : {"P3", "C4", "K4", "C5"}) {
        const Graph g = named_graph(name);
        const DenseMatrix I = DenseMatrix::identity(g.vertex_count());
        const std::size_t approx = matroid_matching_approx(rt, I, g, 0.5);
        const std::size_t nu = oracle_max_matching(g);
        CHECK(approx >= (nu + 1) / 2);
        CHECK(approx <= nu);
    }
}

TEST_CASE("pencil validation") {
    MatrixPencil P;
    P.mats.push_back(DenseMatrix(2, 2));
    P.mats.push_back(DenseMatrix(3, 3));
    CHECK_THROWS_AS(P.validate(), InvalidInput);
}
