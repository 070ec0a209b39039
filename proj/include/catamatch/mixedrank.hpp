#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "catamatch/matrix.hpp"
#include "catamatch/run.hpp"

namespace cm {

/// Matrix whose entries are either fixed field constants or pairwise
/// distinct indeterminates. Variables are numbered in the row-major order
/// they are declared in.
class MixedMatrix {
public:
    MixedMatrix(std::size_t rows, std::size_t cols)
        : r_(rows), c_(cols), var_(rows * cols, -1), val_(rows * cols, 0) {}

    std::size_t rows() const noexcept { return r_; }
    std::size_t cols() const noexcept { return c_; }
    std::size_t lines() const noexcept { return r_ + c_; }
    std::size_t var_count() const noexcept { return pos_.size(); }

    void set_const(std::size_t i, std::size_t j, u64 v) { val_[i * c_ + j] = v; var_[i * c_ + j] = -1; }
    /// Declares entry (i, j) as a fresh indeterminate; returns its index.
    std::size_t set_var(std::size_t i, std::size_t j);

    bool is_var(std::size_t i, std::size_t j) const { return var_[i * c_ + j] >= 0; }
    u64 const_at(std::size_t i, std::size_t j) const { return val_[i * c_ + j]; }
    std::pair<std::size_t, std::size_t> var_pos(std::size_t k) const { return pos_[k]; }

private:
    std::size_t r_, c_;
    std::vector<int> var_;
    std::vector<u64> val_;
    std::vector<std::pair<std::size_t, std::size_t>> pos_;
};

DenseMatrix evaluate(const PrimeField& F, const MixedMatrix& M, const std::vector<u64>& a);

enum class MixedCaseKind { MaxRank, TwoAPrime, TwoBPrime };

struct MixedSplit {
    MixedCaseKind kind = MixedCaseKind::MaxRank;
    std::size_t rank = 0;
    std::size_t var = 0;        // witnessing variable index
    std::size_t def_line = 0;   // new deficiency line (rows 0..r-1, cols r..r+c-1)
    u64 probe = 0;
    std::vector<std::size_t> deficiency;
};

/// Rank dichotomy for one evaluation of a mixed matrix over {0..s-1}; the
/// single-probe argument of the Tutte case applies verbatim with
/// determinants (linear in one entry) in place of Pfaffians and rank steps
/// of 1 in place of 2.
MixedSplit mixed_case_split(const PrimeField& F, const MixedMatrix& M,
                            const std::vector<u64>& a, u64 s);

/// All v keeping rank == k after substituting at variable j (unique on a
/// legitimate run), resp. keeping line u outside the deficiency set.
std::vector<u64> mixed_candidates_2A(const PrimeField& F, const MixedMatrix& M,
                                     std::vector<u64> a, std::size_t j,
                                     std::size_t k, u64 s);
std::vector<u64> mixed_candidates_2B(const PrimeField& F, const MixedMatrix& M,
                                     std::vector<u64> a, std::size_t j,
                                     std::size_t u, u64 s);

/// Deterministic greedy max-rank completion: rank-raising single-variable
/// moves, then deficiency-enlarging moves (lines+3 trial values per
/// variable suffice, as each deficiency line has at most one bad value).
/// Fallback for the compute branch and independent oracle.
std::vector<u64> geelen99_greedy(const PrimeField& F, const MixedMatrix& M, u64 s);

u64 mixed_desk_s(const MixedMatrix& M);
u64 mixed_paper_s(const MixedMatrix& M);

struct MixedRankResult {
    std::size_t rank = 0;
    std::vector<u64> assignment;
    std::vector<std::size_t> deficiency;
    u64 s = 0;
    bool used_fallback = false;
    std::size_t blocks_used = 0;
    std::size_t compressions = 0;
    long long freed_bits = 0;
    bool tape_verified = false;
};

/// Catalytic maximum-rank completion, mirroring matching_size: generic block
/// wins, non-generic blocks compress under 2A'/2B', full compression falls
/// back to the greedy, and the tape must restore bit-exactly.
MixedRankResult mixed_max_rank(const Runtime& rt, const MixedMatrix& M, u64 tape_salt = 3);
MixedRankResult mixed_max_rank_on_tape(const Runtime& rt, const MixedMatrix& M,
                                       CatalyticTape& tape, u64 s);

/// Murota's block matrix for two matroid representations over a common
/// ground set of size n: [[0, A1], [A2^T, diag(x_1..x_n)]]; its completed
/// rank minus n is the maximum common independent set size.
MixedMatrix murota_block(const DenseMatrix& A1, const DenseMatrix& A2);

std::size_t matroid_intersection_size(const Runtime& rt, const DenseMatrix& A1,
                                      const DenseMatrix& A2);

} // namespace cm
