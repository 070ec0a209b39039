#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "catamatch/graph.hpp"
#include "catamatch/matrix.hpp"
#include "catamatch/run.hpp"

namespace cm {

/// Matrix pencil A(x) = sum A_i x_i with uniform square dimensions.
struct MatrixPencil {
    std::vector<DenseMatrix> mats;

    std::size_t size() const noexcept { return mats.size(); }
    std::size_t dim() const { return mats.empty() ? 0 : mats.front().rows(); }
    void validate() const;
};

DenseMatrix evaluate_pencil(const PrimeField& F, const MatrixPencil& P,
                            const std::vector<u64>& a);

/// epsilon with the derived tuple length l = ceil(1/eps - 1), the exponent
/// c = 2l+3, and the value set size s. Overriding l or c away from the
/// derived values requires the unsafe flag (the c = 2l+3 arithmetic is what
/// makes ED-TUPLE records shrink).
struct ApproxParams {
    double epsilon = 0.5;
    std::size_t l = 1;
    std::size_t c = 5;
    u64 s = 64;
};

/// Derives l and c from epsilon and picks s: desk default max(64, 4n),
/// paper default n^c. Throws InvalidInput for epsilon outside (0,1).
ApproxParams approx_params(const Runtime& rt, double epsilon, std::size_t n);

struct TupleWitness {
    std::vector<std::size_t> I;  // l indices, ascending
    std::vector<u64> lambda;     // l values from S
};

/// Approx (empty) iff no l-tuple substitution raises the rank; otherwise the
/// lexicographically first witness over ([m] choose l) x S^l.
std::optional<TupleWitness> tuple_case_split(const PrimeField& F, const MatrixPencil& P,
                                             const std::vector<u64>& a,
                                             const ApproxParams& params);

/// 1-based ordinal of (a_{i_1},...,a_{i_l}) among the lambda in S^l
/// (lexicographic) that keep rank == k with the other coordinates fixed.
/// ContractViolation if the original tuple is not itself rank-k.
std::size_t tuple_ordinal(const PrimeField& F, const MatrixPencil& P,
                          const std::vector<u64>& a, const std::vector<std::size_t>& I,
                          std::size_t k, const ApproxParams& params);

/// Serialized width of the stored (j-1): the Schwartz-Zippel cardinality
/// bound n * s^(l-1) on the rank-k tuple family, derivable at restore time.
unsigned ed_ordinal_width(std::size_t n, const ApproxParams& params);

/// Greedy (1-eps)-approximation: repeatedly apply the dichotomy, improving
/// by l-tuples until no witness remains. Fallback and independent oracle.
std::vector<u64> bjp_greedy(const PrimeField& F, const MatrixPencil& P,
                            const ApproxParams& params);

struct ApproxRankResult {
    std::size_t rank = 0;
    std::vector<u64> assignment;
    ApproxParams params;
    bool used_fallback = false;
    std::size_t blocks_used = 0;
    std::size_t compressions = 0;
    long long freed_bits = 0;   // may be negative at desk parameters
    bool tape_verified = false;
};

/// Catalytic (1-eps)-approximate pencil rank. Non-approximating blocks are
/// rewritten as ED-TUPLE records (i_1..i_l, j, k, a^{-I}); at desk
/// parameters the record may be wider than the dropped values (accounted
/// honestly; strictly shrinking under --paper-params). Restoration
/// re-enumerates S^l to the j-th rank-k tuple and is bit-checked.
ApproxRankResult pencil_approx_rank(const Runtime& rt, const MatrixPencil& P,
                                    double epsilon, u64 tape_salt = 17);
ApproxRankResult pencil_approx_rank_on_tape(const Runtime& rt, const MatrixPencil& P,
                                            CatalyticTape& tape, const ApproxParams& params);

/// Pencil A * T_e * A^T over the edge variables of g (one matrix per edge).
MatrixPencil matroid_matching_pencil(const PrimeField& F, const DenseMatrix& A, const Graph& g);

/// (1-eps)-approximate maximum independent matching size: half the
/// approximated rank of A * T(x) * A^T.
std::size_t matroid_matching_approx(const Runtime& rt, const DenseMatrix& A,
                                    const Graph& g, double epsilon);

} // namespace cm
