#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "catamatch/graph.hpp"
#include "catamatch/matrix.hpp"
#include "catamatch/run.hpp"
#include "catamatch/tutte.hpp"

namespace cm {

/// A = T' o W: the full-rank Tutte evaluation with entry (u,v) scaled by
/// z^{W(uv)}.
PolySkewMatrix weighted_tutte(const PrimeField& F, const Graph& G,
                              const std::vector<u64>& assignment,
                              const std::vector<u64>& W);

/// Degree bound for every Pfaffian polynomial in this module: a perfect
/// matching has n/2 edges of weight <= w_max.
std::size_t pm_degree_bound(const Graph& G, u64 w_max);

/// Pf(A_e) = P0 + y*P1: P0 is the Pfaffian polynomial of A with edge e
/// deleted; P1 is Pf(A with W(e) zeroed) minus P0. Requires rank(T') = n
/// (PreconditionViolation otherwise).
std::pair<UniPoly, UniPoly> split_P0_P1(const PrimeField& F, const Graph& G,
                                        const std::vector<u64>& assignment,
                                        const std::vector<u64>& W, std::size_t e,
                                        std::size_t d_max);

struct ThresholdEdge {
    std::size_t edge;
    std::size_t w_ebar;  // min degree of P0
    std::size_t w_e;     // min degree of P1
};

/// First edge (canonical order) with P0, P1 both nonzero and
/// W(e) = w_ebar - w_e; empty when no edge qualifies.
std::optional<ThresholdEdge> find_threshold_edge(const PrimeField& F, const Graph& G,
                                                 const std::vector<u64>& assignment,
                                                 const std::vector<u64>& W, u64 w_max);

/// The edge set {e : P0 lacks the monomial z^{w0}} where w0 is the least
/// degree of Pf(A). Validates that it is a perfect matching of weight w0;
/// LemmaViolation otherwise (that would falsify the case-2 extraction).
std::vector<std::size_t> extract_matching(const PrimeField& F, const Graph& G,
                                          const std::vector<u64>& assignment,
                                          const std::vector<u64>& W, u64 w_max);

/// Perfect matching by rank-guided self-reduction: fix the smallest vertex,
/// find the first neighbor whose joint removal keeps a perfect matching
/// (checked exactly via the greedy max-rank assignment), recurse. The
/// compute-branch fallback. Requires that G has a perfect matching.
std::vector<std::size_t> pm_self_reduction(const PrimeField& F, const Graph& G);

u64 pm_desk_wmax(const Graph& G);
u64 pm_paper_wmax(const Graph& G);

struct PerfectMatchingResult {
    std::vector<std::size_t> edges;  // edge indices, sorted
    std::size_t weight = 0;          // w0 for an extracted matching, 0 for fallback
    u64 w_max = 0;
    bool used_fallback = false;
    std::size_t blocks_used = 0;
    std::size_t compressions = 0;
    long long freed_bits = 0;
    bool tape_verified = false;
};

/// Catalytic perfect-matching search: per tape block of edge weights, try
/// the threshold-edge compression (PM-EDGE record: the weight W(e) is
/// dropped and only the edge index kept, recomputable as w_ebar - w_e);
/// otherwise extract the matching. Full compression falls back to
/// self-reduction in the freed arena. Tape restoration is bit-checked.
/// Throws PreconditionViolation when G has no perfect matching.
PerfectMatchingResult perfect_matching(const Runtime& rt, const Graph& G, u64 tape_salt = 5);
PerfectMatchingResult perfect_matching_on_tape(const Runtime& rt, const Graph& G,
                                               const std::vector<u64>& assignment,
                                               CatalyticTape& tape, u64 w_max);

/// Maximum matching of the bipartite graph with left vertices 0..nl-1 and
/// right vertices 0..nr-1, by the max-rank sidestep: complete the
/// indeterminate biadjacency matrix to max rank, greedily pick row and
/// column sets where the rank grows, and run the perfect-matching search on
/// the resulting square subgraph. Saturates the left side when possible.
std::vector<std::pair<int, int>> bipartite_max_matching(
    const Runtime& rt, std::size_t nl, std::size_t nr,
    const std::vector<std::pair<int, int>>& edges);

struct MaximumMatchingResult {
    std::vector<std::size_t> edges;  // edge indices into G.edges(), sorted
    std::size_t nu = 0;
    GallaiEdmondsResult decomposition;
};

/// Maximum matching assembled over the Gallai-Edmonds decomposition:
/// a perfect matching of C, a bipartite matching of A against the
/// components of D (one vertex per component, so the per-component perfect
/// matchings below stay disjoint), and a near-perfect matching of each D
/// component minus its matched vertex (or its smallest vertex).
MaximumMatchingResult maximum_matching(const Runtime& rt, const Graph& G);

} // namespace cm
