#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "catamatch/edmonds.hpp"
#include "catamatch/graph.hpp"
#include "catamatch/mixedrank.hpp"
#include "catamatch/tutte.hpp"

namespace cm {

// ---- brute-force oracles (enumeration only; no shared solver kernels) ----

/// Exact nu(G) by bitmask dynamic programming over vertex subsets. n <= 16.
std::size_t oracle_max_matching(const Graph& g);

/// Whether g has a perfect matching (n even and nu = n/2).
bool oracle_has_pm(const Graph& g);

/// D/A/C by the definition: v is in D iff removing v does not lower nu. n <= 12.
GallaiEdmondsResult oracle_gallai_edmonds(const Graph& g);

/// Maximum bipartite matching by augmenting paths (Kuhn's algorithm).
std::size_t oracle_bipartite_matching(std::size_t nl, std::size_t nr,
                                      const std::vector<std::pair<int, int>>& edges);

/// Max rank over `trials` uniform substitutions from {0..s-1}; a randomized
/// lower bound (per-trial failure probability <= deg/s).
std::size_t oracle_symbolic_rank(const PrimeField& F, const MixedMatrix& M,
                                 std::size_t trials, u64 s, u64 seed);
std::size_t oracle_symbolic_rank(const PrimeField& F, const MatrixPencil& P,
                                 std::size_t trials, u64 s, u64 seed);

/// Largest common independent set by subset enumeration. Ground set <= 20.
std::size_t oracle_matroid_intersection(const PrimeField& F, const DenseMatrix& A1,
                                        const DenseMatrix& A2);

/// Largest matching whose endpoint columns are linearly independent, by
/// enumeration over matchings. n <= 16.
std::size_t oracle_matroid_matching(const PrimeField& F, const DenseMatrix& A, const Graph& g);

/// Pfaffian by first-row expansion (exponential; test oracle).
u64 pfaffian_brute(const PrimeField& F, const SkewMatrix& M);

/// Determinant by the permutation sum (n <= 8; test oracle).
u64 det_brute(const PrimeField& F, const DenseMatrix& M);

// ---- deterministic instance generators ----

Graph gen_random_graph(u64 seed, std::size_t n, double edge_prob);
/// Random graph conditioned on a perfect matching (oracle-checked rejection).
Graph gen_pm_graph(u64 seed, std::size_t n, double edge_prob);
MixedMatrix gen_mixed(u64 seed, std::size_t r, std::size_t c, double var_density, u64 p);
std::pair<DenseMatrix, DenseMatrix> gen_matroid_pair(u64 seed, std::size_t r1,
                                                     std::size_t r2, std::size_t n, u64 p);
/// Pencil of m summands; summand t has rank min(rank_profile[t], n), or 1
/// for every summand when the profile is empty.
MatrixPencil gen_pencil(u64 seed, std::size_t m, std::size_t n,
                        const std::vector<std::size_t>& rank_profile, u64 p);

/// Named corpus graphs: P3, C3..C7, K4, K5, Petersen. InvalidInput otherwise.
Graph named_graph(const std::string& name);
std::vector<std::string> named_graph_list();

// ---- run reports ----

struct RunReport {
    std::string instance;
    std::string algorithm;
    std::string result;
    std::string oracle;   // empty when no oracle ran
    std::map<std::string, std::size_t> events_by_case;
    long long bits_saved = 0;
    bool tape_touched = false;
    bool restoration_verdict = false;
    double wall_ms = 0.0;
};

/// Journal summary of one tape into the report's case counters.
void summarize_tape(RunReport& rep, const CatalyticTape& tape);

std::string report_to_json(const RunReport& rep);
void append_report(const std::string& path, const RunReport& rep);
void print_report(std::ostream& out, const RunReport& rep);

} // namespace cm
