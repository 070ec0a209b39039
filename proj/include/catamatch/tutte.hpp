#pragma once

#include <cstddef>
#include <vector>

#include "catamatch/graph.hpp"
#include "catamatch/matrix.hpp"
#include "catamatch/run.hpp"

namespace cm {

/// Tutte matrix of G evaluated at the edge values a (indexed like G.edges()):
/// T[u][v] = a_i, T[v][u] = -a_i for edge i = {u,v} with u < v.
SkewMatrix tutte_matrix(const PrimeField& F, const Graph& G, const std::vector<u64>& a);

enum class CaseKind { MaxRank, TwoA, TwoB };

/// Outcome of the rank dichotomy for one evaluation: either it already has
/// the generic rank (and the generic deficiency set), or a single edge value
/// can raise the rank by 2 (TwoA) or add a vertex to the deficiency set at
/// equal rank (TwoB).
struct CaseSplit {
    CaseKind kind = CaseKind::MaxRank;
    std::size_t rank = 0;        // rank of the given evaluation
    std::size_t edge = 0;        // witnessing edge index (TwoA / TwoB)
    std::size_t def_vertex = 0;  // new deficiency vertex u (TwoB)
    u64 probe = 0;               // substituted value that exhibited the case
    std::vector<std::size_t> deficiency;  // D of the given evaluation
};

/// Decides the trichotomy for evaluation a over the value set {0..s-1}.
/// One probe value per edge suffices: the relevant Pfaffian minors are
/// linear in a single edge variable, so a case that holds for some
/// substitute holds for every substitute other than a_i. All TwoA edges are
/// scanned before any TwoB edge; within a pass edges are tried in index
/// order and the smallest new deficiency vertex is reported.
CaseSplit tutte_case_split(const PrimeField& F, const Graph& G,
                           const std::vector<u64>& a, u64 s);

/// All v in {0..s-1} such that substituting v at edge j keeps rank == k.
/// Exactly one candidate on a legitimate run (uniqueness lemma for TwoA).
std::vector<u64> tutte_candidates_2A(const PrimeField& F, const Graph& G,
                                     std::vector<u64> a, std::size_t j,
                                     std::size_t k, u64 s);
/// All v in {0..s-1} such that substituting v at edge j leaves vertex u
/// outside the deficiency set (uniqueness lemma for TwoB).
std::vector<u64> tutte_candidates_2B(const PrimeField& F, const Graph& G,
                                     std::vector<u64> a, std::size_t j,
                                     std::size_t u, u64 s);

/// Deterministic greedy max-rank assignment: starting from all zeros, apply
/// rank-raising single-edge moves, then deficiency-enlarging moves, until
/// the case split certifies generic rank. For the deficiency moves it
/// suffices to scan n+3 values per edge: each vertex of D can be knocked out
/// of D by at most one substituted value (the witness minors are linear), so
/// any n+2 values beyond a_i contain a strictly improving one whenever one
/// exists. Serves as both the compute-branch fallback and the independent
/// oracle. Requires s >= n+4.
std::vector<u64> geelen_greedy(const PrimeField& F, const Graph& G, u64 s);

struct MatchingSizeResult {
    std::size_t nu = 0;              // maximum matching size
    std::vector<int> D;              // vertices missed by some maximum matching
    std::vector<u64> assignment;     // max-rank edge values
    u64 s = 0;                       // value set size used
    bool used_fallback = false;      // no tape block was generic
    std::size_t blocks_used = 0;     // blocks processed before the answer
    std::size_t compressions = 0;
    long long freed_bits = 0;        // peak net bits freed on the tape
    bool tape_verified = false;      // bit-exact restoration check result
};

/// Value set size and block count used by matching_size for a given graph
/// (before any explicit overrides).
u64 tutte_desk_s(const Graph& G);
u64 tutte_paper_s(const Graph& G);

/// Catalytic computation of nu(G) and D(G): walk the tape blocks, taking a
/// generic block as the answer and compressing every non-generic block via
/// its uniqueness case; if all blocks compress, compact the freed space and
/// fall back to direct computation. Every compressed block is restored and
/// the tape is compared bit-for-bit against its snapshot.
MatchingSizeResult matching_size(const Runtime& rt, const Graph& G, u64 tape_salt = 1);

/// Variant that runs on a caller-supplied tape (adversarial tape tests).
MatchingSizeResult matching_size_on_tape(const Runtime& rt, const Graph& G,
                                         CatalyticTape& tape, u64 s);

struct GallaiEdmondsResult {
    std::vector<int> D, A, C;
    std::vector<std::vector<int>> d_components;  // components of G[D], original labels
    std::size_t nu = 0;
};

GallaiEdmondsResult gallai_edmonds(const Runtime& rt, const Graph& G);

/// Edge values giving the Tutte matrix its generic rank.
std::vector<u64> max_rank_assignment(const Runtime& rt, const Graph& G, u64 tape_salt = 1);

} // namespace cm
