#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catamatch/harness.hpp"
#include "catamatch/tutte.hpp"

using namespace cm;

namespace {

Runtime desk_runtime() { return Runtime(RunParams{}); }

const PrimeField F((1ull << 61) - 1);

} // namespace

TEST_CASE("tutte matrix shape") {
    const Graph g = named_graph("P3");
    const SkewMatrix T = tutte_matrix(F, g, {3, 4});
    CHECK(T.at(0, 1) == 3);
    CHECK(T.at(1, 0) == F.neg(3));
    CHECK(T.at(1, 2) == 4);
    CHECK(T.at(0, 2) == 0);
    CHECK_THROWS_AS(tutte_matrix(F, g, {1}), InvalidInput);
}

TEST_CASE("K2: any nonzero value is a max-rank assignment") {
    const Graph k2(2, {{0, 1}});
    for (u64 a : {1ull, 2ull, 57ull})
        CHECK(rank_of(F, tutte_matrix(F, k2, {a})) == 2);
    CHECK(rank_of(F, tutte_matrix(F, k2, {0})) == 0);
}

TEST_CASE("case split trichotomy on P3") {
    const Graph p3 = named_graph("P3");
    const u64 s = tutte_desk_s(p3);

    // generic: both edges nonzero
    const CaseSplit generic = tutte_case_split(F, p3, {1, 1}, s);
    CHECK(generic.kind == CaseKind::MaxRank);
    CHECK(generic.rank == 2);
    CHECK(generic.deficiency == std::vector<std::size_t>{0, 2});

    // all-zero: raising any edge raises the rank by 2
    const CaseSplit zero = tutte_case_split(F, p3, {0, 0}, s);
    CHECK(zero.kind == CaseKind::TwoA);
    CHECK(zero.rank == 0);
    CHECK(zero.edge == 0);

    // a = (1, 0): rank 2 = generic but D = {2} is strictly smaller -> 2B
    const CaseSplit def = tutte_case_split(F, p3, {1, 0}, s);
    CHECK(def.kind == CaseKind::TwoB);
    CHECK(def.rank == 2);
    CHECK(def.edge == 1);
    CHECK(def.def_vertex == 0);
}

TEST_CASE("fired cases have exactly one preserving value") {
    const Graph p3 = named_graph("P3");
    const u64 s = tutte_desk_s(p3);
    // 2A at the all-zero evaluation: only a_0 = 0 keeps rank 0
    CHECK(tutte_candidates_2A(F, p3, {0, 0}, 0, 0, s) == std::vector<u64>{0});
    // 2B at (1, 0): only a_1 = 0 keeps vertex 0 outside D
    CHECK(tutte_candidates_2B(F, p3, {1, 0}, 1, 0, s) == std::vector<u64>{0});
}

TEST_CASE("greedy assignment reaches the generic rank") {
    for (const auto& name : named_graph_list()) {
        const Graph g = named_graph(name);
        const u64 s = tutte_desk_s(g);
        const std::vector<u64> a = geelen_greedy(F, g, s);
        CHECK(rank_of(F, tutte_matrix(F, g, a)) == 2 * oracle_max_matching(g));
    }
    for (u64 seed = 1; seed <= 20; ++seed) {
        const Graph g = gen_random_graph(seed, 10, 0.4);
        if (g.edge_count() == 0) continue;
        const std::vector<u64> a = geelen_greedy(F, g, tutte_desk_s(g));
        CHECK(rank_of(F, tutte_matrix(F, g, a)) == 2 * oracle_max_matching(g));
    }
}

TEST_CASE("matching size matches the enumeration oracle") {
    const Runtime rt = desk_runtime();
    for (const auto& name : named_graph_list()) {
        const Graph g = named_graph(name);
        const MatchingSizeResult res = matching_size(rt, g);
        CHECK(res.nu == oracle_max_matching(g));
        CHECK(res.tape_verified);
    }
    for (u64 seed = 1; seed <= 30; ++seed) {
        const Graph g = gen_random_graph(seed, 4 + seed % 6, 0.5);
        const MatchingSizeResult res = matching_size(rt, g);
        CHECK(res.nu == oracle_max_matching(g));
        CHECK(res.tape_verified);
    }
}

TEST_CASE("Petersen graph has a perfect matching") {
    const Graph g = named_graph("Petersen");
    CHECK(matching_size(desk_runtime(), g).nu == 5);
}

TEST_CASE("deficiency set matches the definition") {
    const Runtime rt = desk_runtime();
    // P3: internal vertex always matched, endpoints exposed in some maximum matching
    CHECK(matching_size(rt, named_graph("P3")).D == std::vector<int>{0, 2});
    // odd cycles are factor-critical
    for (const char* name : {"C3", "C5", "C7"}) {
        const Graph g = named_graph(name);
        const MatchingSizeResult res = matching_size(rt, g);
        CHECK(res.D.size() == g.vertex_count());
    }
    // two disjoint triangles joined by one edge: D is all six vertices
    const Graph two_tri(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
    const GallaiEdmondsResult want = oracle_gallai_edmonds(two_tri);
    CHECK(matching_size(rt, two_tri).D == want.D);
}

TEST_CASE("Gallai-Edmonds decomposition matches the oracle") {
    const Runtime rt = desk_runtime();
    for (const auto& name : named_graph_list()) {
        const Graph g = named_graph(name);
        const GallaiEdmondsResult got = gallai_edmonds(rt, g);
        const GallaiEdmondsResult want = oracle_gallai_edmonds(g);
        CHECK(got.D == want.D);
        CHECK(got.A == want.A);
        CHECK(got.C == want.C);
        CHECK(got.d_components == want.d_components);
    }
    for (u64 seed = 50; seed < 70; ++seed) {
        const Graph g = gen_random_graph(seed, 4 + seed % 5, 0.4);
        const GallaiEdmondsResult got = gallai_edmonds(rt, g);
        const GallaiEdmondsResult want = oracle_gallai_edmonds(g);
        CHECK(got.D == want.D);
        CHECK(got.A == want.A);
        CHECK(got.C == want.C);
    }
}

TEST_CASE("C4 with one edge forced to zero still reports nu = 2") {
    // Adversarial tape: every block zeroes edge 0; each block compresses or
    // certifies, and the tape restores bit-exactly.
    const Graph c4 = named_graph("C4");
    const Runtime rt = desk_runtime();
    const u64 s = tutte_desk_s(c4);
    const FieldSpec spec(rt.params().prime, s);
    std::vector<std::vector<u64>> blocks;
    for (u64 t = 0; t < 4; ++t) blocks.push_back({0, 1 + t, 2 + t, 3 + t});
    CatalyticTape tape = CatalyticTape::from_values(blocks, spec);
    const MatchingSizeResult res = matching_size_on_tape(rt, c4, tape, s);
    CHECK(res.nu == 2);
    CHECK(res.tape_verified);
    CHECK(tape.verify_restored());
}

TEST_CASE("fallback path: all-zero tape compresses every block") {
    const Graph c3 = named_graph("C3");
    const Runtime rt = desk_runtime();
    const u64 s = tutte_desk_s(c3);
    const FieldSpec spec(rt.params().prime, s);
    CatalyticTape tape =
        CatalyticTape::from_values(std::vector<std::vector<u64>>(3, {0, 0, 0}), spec);
    const MatchingSizeResult res = matching_size_on_tape(rt, c3, tape, s);
    CHECK(res.nu == 1);
    CHECK(res.used_fallback);
    CHECK(res.compressions == 3);
    CHECK(res.tape_verified);
    CHECK(tape.verify_restored());
    CHECK(tape.journal().size() == 3);
    for (const auto& rec : tape.journal()) CHECK(rec.restored);
}

TEST_CASE("edgeless graphs are trivial") {
    const Graph empty(4, {});
    const MatchingSizeResult res = matching_size(desk_runtime(), empty);
    CHECK(res.nu == 0);
    CHECK(res.D == std::vector<int>{0, 1, 2, 3});
}
