#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "catamatch/harness.hpp"
#include "catamatch/io.hpp"

using namespace cm;

TEST_CASE("matching oracle on the named corpus") {
    CHECK(oracle_max_matching(named_graph("P3")) == 1);
    CHECK(oracle_max_matching(named_graph("K4")) == 2);
    CHECK(oracle_max_matching(named_graph("K5")) == 2);
    CHECK(oracle_max_matching(named_graph("C6")) == 3);
    CHECK(oracle_max_matching(named_graph("C7")) == 3);
    CHECK(oracle_max_matching(named_graph("Petersen")) == 5);
    CHECK_THROWS_AS(named_graph("K6"), InvalidInput);
}

TEST_CASE("Gallai-Edmonds oracle by definition") {
    const GallaiEdmondsResult p3 = oracle_gallai_edmonds(named_graph("P3"));
    CHECK(p3.D == std::vector<int>{0, 2});
    CHECK(p3.A == std::vector<int>{1});
    CHECK(p3.C.empty());

    const GallaiEdmondsResult k4 = oracle_gallai_edmonds(named_graph("K4"));
    CHECK(k4.D.empty());
    CHECK(k4.A.empty());
    CHECK(k4.C == std::vector<int>{0, 1, 2, 3});

    const GallaiEdmondsResult c5 = oracle_gallai_edmonds(named_graph("C5"));
    CHECK(c5.D.size() == 5);  // odd cycles are factor-critical
    CHECK(c5.A.empty());
}

TEST_CASE("bipartite oracle") {
    CHECK(oracle_bipartite_matching(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}) == 2);
    CHECK(oracle_bipartite_matching(3, 1, {{0, 0}, {1, 0}, {2, 0}}) == 1);
    CHECK(oracle_bipartite_matching(2, 2, {}) == 0);
}

TEST_CASE("randomized rank oracle basics") {
    const PrimeField F(101);
    MixedMatrix M(2, 2);
    M.set_var(0, 0);
    M.set_const(0, 1, 1);
    M.set_const(1, 0, 1);
    M.set_const(1, 1, 1);
    CHECK(oracle_symbolic_rank(F, M, 30, 16, 1) == 2);

    MatrixPencil zero;
    zero.mats.push_back(DenseMatrix(3, 3));
    CHECK(oracle_symbolic_rank(F, zero, 5, 16, 1) == 0);

    MatrixPencil ident;
    for (std::size_t i = 0; i < 3; ++i) {
        DenseMatrix E(3, 3);
        E.at(i, i) = 1;
        ident.mats.push_back(E);
    }
    CHECK(oracle_symbolic_rank(F, ident, 30, 16, 1) == 3);
}

TEST_CASE("generators are deterministic") {
    const Graph g1 = gen_random_graph(1, 6, 0.5);
    const Graph g2 = gen_random_graph(1, 6, 0.5);
    CHECK(g1.edges() == g2.edges());
    CHECK(gen_random_graph(2, 6, 0.5).edges() != g1.edges());

    const Graph pm = gen_pm_graph(3, 8, 0.4);
    CHECK(oracle_max_matching(pm) == 4);
    CHECK(pm.edges() == gen_pm_graph(3, 8, 0.4).edges());

    const MatrixPencil p1 = gen_pencil(1, 2, 4, {}, 101);
    const MatrixPencil p2 = gen_pencil(1, 2, 4, {}, 101);
    CHECK(p1.mats[0] == p2.mats[0]);
    CHECK(p1.mats[1] == p2.mats[1]);
    const PrimeField F(101);
    for (const auto& M : p1.mats) CHECK(rank_of(F, M) <= 1);  // rank-1 summands
}

TEST_CASE("matroid oracles") {
    const PrimeField F(101);
    const DenseMatrix I3 = DenseMatrix::identity(3);
    CHECK(oracle_matroid_intersection(F, I3, I3) == 3);
    DenseMatrix ones(1, 3);
    for (std::size_t j = 0; j < 3; ++j) ones.at(0, j) = 1;
    CHECK(oracle_matroid_intersection(F, I3, ones) == 1);

    const Graph c4 = named_graph("C4");
    CHECK(oracle_matroid_matching(F, DenseMatrix::identity(4), c4) == 2);
    // rank-1 representation: no two columns independent -> no edge usable
    DenseMatrix flat(1, 4);
    for (std::size_t j = 0; j < 4; ++j) flat.at(0, j) = 1;
    CHECK(oracle_matroid_matching(F, flat, c4) == 0);
}

TEST_CASE("graph file round trip") {
    const Graph g = named_graph("Petersen");
    std::stringstream ss;
    write_graph(ss, g);
    const Graph h = read_graph(ss);
    CHECK(h.vertex_count() == g.vertex_count());
    CHECK(h.edges() == g.edges());
}

TEST_CASE("graph file validation") {
    std::stringstream bad("3 1\n0 2\n");  // labels are 1-based
    CHECK_THROWS_AS(read_graph(bad), InvalidInput);
    std::stringstream truncated("3 2\n1 2\n");
    CHECK_THROWS_AS(read_graph(truncated), InvalidInput);
}

TEST_CASE("mixed matrix file round trip") {
    const MixedMatrix M = gen_mixed(5, 3, 4, 0.5, 101);
    std::stringstream ss;
    write_mixed(ss, M, 101);
    const MixedFile f = read_mixed(ss);
    CHECK(f.p == 101);
    CHECK(f.matrix.rows() == 3);
    CHECK(f.matrix.var_count() == M.var_count());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(f.matrix.is_var(i, j) == M.is_var(i, j));
            if (!M.is_var(i, j)) CHECK(f.matrix.const_at(i, j) == M.const_at(i, j));
        }
}

TEST_CASE("dense reader rejects indeterminates") {
    std::stringstream ss("1 2 101\n3 ?\n");
    CHECK_THROWS_AS(read_dense(ss), InvalidInput);
}

TEST_CASE("pencil file round trip") {
    const MatrixPencil P = gen_pencil(9, 3, 4, {1, 2, 1}, 101);
    std::stringstream ss;
    write_pencil(ss, P, 101);
    const PencilFile f = read_pencil(ss);
    CHECK(f.p == 101);
    REQUIRE(f.pencil.size() == 3);
    for (std::size_t t = 0; t < 3; ++t) CHECK(f.pencil.mats[t] == P.mats[t]);
}

TEST_CASE("run report JSON sidecar is machine readable") {
    RunReport rep;
    rep.instance = "x.txt";
    rep.algorithm = "matching-size";
    rep.result = "nu=2";
    rep.oracle = "nu=2";
    rep.events_by_case["2A"] = 3;
    rep.bits_saved = 17;
    rep.tape_touched = true;
    rep.restoration_verdict = true;
    rep.wall_ms = 1.5;
    const auto j = nlohmann::json::parse(report_to_json(rep));
    CHECK(j["instance"] == "x.txt");
    CHECK(j["oracle"] == "nu=2");
    CHECK(j["journal"]["events_by_case"]["2A"] == 3);
    CHECK(j["journal"]["bits_saved"] == 17);
    CHECK(j["restoration_verdict"] == true);
}

TEST_CASE("tape summary aggregates the journal") {
    const FieldSpec spec(101, 16);
    CatalyticTape t = CatalyticTape::from_values({{7, 9, 3}, {1, 2, 3}}, spec);
    t.compress_block(0, CaseTag::TwoA, 1, 0, {1}, {2}, {2});
    RunReport rep;
    summarize_tape(rep, t);
    CHECK(rep.tape_touched);
    CHECK(rep.events_by_case["2A"] == 1);
    CHECK(rep.bits_saved == 1);
    CHECK(!rep.restoration_verdict);  // not yet restored
}
