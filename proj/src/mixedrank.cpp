#include "catamatch/mixedrank.hpp"

#include <algorithm>

namespace cm {

std::size_t MixedMatrix::set_var(std::size_t i, std::size_t j) {
    var_[i * c_ + j] = static_cast<int>(pos_.size());
    pos_.emplace_back(i, j);
    return pos_.size() - 1;
}

DenseMatrix evaluate(const PrimeField& F, const MixedMatrix& M, const std::vector<u64>& a) {
    if (a.size() != M.var_count())
        throw InvalidInput("evaluate: need one value per indeterminate");
    DenseMatrix out(M.rows(), M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            out.at(i, j) = F.reduce(M.const_at(i, j));
    for (std::size_t k = 0; k < a.size(); ++k) {
        const auto [i, j] = M.var_pos(k);
        out.at(i, j) = F.reduce(a[k]);
    }
    return out;
}

static DenseMatrix with_var(const PrimeField& F, const MixedMatrix& M,
                            const DenseMatrix& A, std::size_t k, u64 v) {
    DenseMatrix A2 = A;
    const auto [i, j] = M.var_pos(k);
    A2.at(i, j) = F.reduce(v);
    return A2;
}

MixedSplit mixed_case_split(const PrimeField& F, const MixedMatrix& M,
                            const std::vector<u64>& a, u64 s) {
    if (s < 2) throw PreconditionViolation("case split needs a value set of size >= 2");
    const DenseMatrix A = evaluate(F, M, a);
    MixedSplit cs;
    cs.rank = rank_of(F, A);
    cs.deficiency = deficiency(F, A);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const u64 probe = (a[i] + 1) % s;
        if (rank_of(F, with_var(F, M, A, i, probe)) == cs.rank + 1) {
            cs.kind = MixedCaseKind::TwoAPrime;
            cs.var = i;
            cs.probe = probe;
            return cs;
        }
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const u64 probe = (a[i] + 1) % s;
        const DenseMatrix A2 = with_var(F, M, A, i, probe);
        if (rank_of(F, A2) != cs.rank) continue;
        for (std::size_t u : deficiency(F, A2)) {
            if (!std::binary_search(cs.deficiency.begin(), cs.deficiency.end(), u)) {
                cs.kind = MixedCaseKind::TwoBPrime;
                cs.var = i;
                cs.def_line = u;
                cs.probe = probe;
                return cs;
            }
        }
    }
    cs.kind = MixedCaseKind::MaxRank;
    return cs;
}

std::vector<u64> mixed_candidates_2A(const PrimeField& F, const MixedMatrix& M,
                                     std::vector<u64> a, std::size_t j,
                                     std::size_t k, u64 s) {
    std::vector<u64> out;
    for (u64 v = 0; v < s; ++v) {
        a[j] = v;
        if (rank_of(F, evaluate(F, M, a)) == k) out.push_back(v);
    }
    return out;
}

static bool line_in_deficiency(const PrimeField& F, const DenseMatrix& A, std::size_t u) {
    const DenseMatrix cut = u < A.rows() ? A.without_row(u) : A.without_col(u - A.rows());
    return rank_of(F, cut) == rank_of(F, A);
}

std::vector<u64> mixed_candidates_2B(const PrimeField& F, const MixedMatrix& M,
                                     std::vector<u64> a, std::size_t j,
                                     std::size_t u, u64 s) {
    std::vector<u64> out;
    for (u64 v = 0; v < s; ++v) {
        a[j] = v;
        if (!line_in_deficiency(F, evaluate(F, M, a), u)) out.push_back(v);
    }
    return out;
}

static bool strict_superset(const std::vector<std::size_t>& sub,
                            const std::vector<std::size_t>& sup) {
    if (sup.size() <= sub.size()) return false;
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
}

std::vector<u64> geelen99_greedy(const PrimeField& F, const MixedMatrix& M, u64 s) {
    const std::size_t lines = M.lines();
    if (s < lines + 4) throw PreconditionViolation("greedy needs a value set of size >= lines+4");
    std::vector<u64> a(M.var_count(), 0);
    for (;;) {
        const DenseMatrix A = evaluate(F, M, a);
        const std::size_t k = rank_of(F, A);
        const auto D = deficiency(F, A);
        bool moved = false;
        for (std::size_t i = 0; i < a.size() && !moved; ++i) {
            const u64 probe = (a[i] + 1) % s;
            if (rank_of(F, with_var(F, M, A, i, probe)) == k + 1) {
                a[i] = probe;
                moved = true;
            }
        }
        if (moved) continue;
        for (std::size_t i = 0; i < a.size() && !moved; ++i) {
            u64 tried = 0;
            for (u64 v = 0; v < s && tried < lines + 3; ++v) {
                if (v == a[i]) continue;
                ++tried;
                const DenseMatrix A2 = with_var(F, M, A, i, v);
                if (rank_of(F, A2) != k) continue;
                if (strict_superset(D, deficiency(F, A2))) {
                    a[i] = v;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) return a;
    }
}

u64 mixed_desk_s(const MixedMatrix& M) {
    const unsigned iw = width_for_count(M.var_count());
    const unsigned mw = std::max(width_for_count(std::min(M.rows(), M.cols()) + 1),
                                 width_for_count(M.lines()));
    return 1ull << (2 + iw + mw);
}

u64 mixed_paper_s(const MixedMatrix& M) {
    const u64 n = std::max<u64>(M.lines(), 2);
    u64 s = 1;
    for (int i = 0; i < 10; ++i) s *= n;
    return s;
}

MixedRankResult mixed_max_rank_on_tape(const Runtime& rt, const MixedMatrix& M,
                                       CatalyticTape& tape, u64 s) {
    const PrimeField F(rt.params().prime);
    const std::size_t m = M.var_count();
    if (tape.values_per_block() != m)
        throw PreconditionViolation("tape block shape does not match the variable count");
    const std::size_t N = tape.block_count();
    const unsigned iw = width_for_count(m);
    const unsigned kw = width_for_count(std::min(M.rows(), M.cols()) + 1);
    const unsigned uw = width_for_count(M.lines());

    MixedRankResult res;
    res.s = s;
    bool found = false;
    for (std::size_t t = 0; t < N && !found; ++t) {
        const std::vector<u64> a = tape.values(t);
        const MixedSplit cs = mixed_case_split(F, M, a, s);
        switch (cs.kind) {
            case MixedCaseKind::MaxRank:
                res.rank = cs.rank;
                res.deficiency = cs.deficiency;
                res.assignment = a;
                res.blocks_used = t + 1;
                found = true;
                break;
            case MixedCaseKind::TwoAPrime:
                tape.compress_block(t, CaseTag::TwoAPrime, 1, 0, {cs.var},
                                    {cs.var, cs.rank}, {iw, kw});
                break;
            case MixedCaseKind::TwoBPrime:
                tape.compress_block(t, CaseTag::TwoBPrime, 1, 1, {cs.var},
                                    {cs.var, cs.def_line}, {iw, uw});
                break;
        }
    }
    res.compressions = tape.compressed_count();
    res.freed_bits = tape.freed_bits();

    if (!found) {
        (void)tape.compact();
        res.assignment = geelen99_greedy(F, M, s);
        const DenseMatrix A = evaluate(F, M, res.assignment);
        res.rank = rank_of(F, A);
        res.deficiency = deficiency(F, A);
        res.used_fallback = true;
        res.blocks_used = N;
        tape.uncompact();
    }

    const CatalyticTape::Recompute recompute =
        [&](const CompressionRecord& rec, const std::vector<u64>& rest) {
            const std::size_t j = rec.meta[0];
            std::vector<u64> a(m);
            for (std::size_t i = 0, r = 0; i < m; ++i)
                if (i != j) a[i] = rest[r++];
            const std::vector<u64> cands =
                rec.tag == CaseTag::TwoAPrime
                    ? mixed_candidates_2A(F, M, a, j, rec.meta[1], s)
                    : mixed_candidates_2B(F, M, a, j, rec.meta[1], s);
            std::vector<std::vector<u64>> out;
            for (u64 v : cands) out.push_back({v});
            return out;
        };
    for (std::size_t t = 0; t < N; ++t)
        if (!tape.pristine(t)) tape.restore_block(t, recompute);
    res.tape_verified = tape.verify_restored();
    if (rt.check_restore() && !res.tape_verified)
        throw ContractViolation("catalytic tape is not bit-identical to its snapshot after restoration");
    return res;
}

MixedRankResult mixed_max_rank(const Runtime& rt, const MixedMatrix& M, u64 tape_salt) {
    const PrimeField F(rt.params().prime);
    if (M.var_count() == 0) {
        MixedRankResult res;
        const DenseMatrix A = evaluate(F, M, {});
        res.rank = rank_of(F, A);
        res.deficiency = deficiency(F, A);
        res.tape_verified = true;
        return res;
    }
    const u64 s = rt.value_set_size(mixed_desk_s(M), mixed_paper_s(M));
    const FieldSpec spec(rt.params().prime, s);
    const std::size_t lines = M.lines();
    const std::size_t N = rt.block_count(std::max<std::size_t>(lines, 1), lines * lines * lines);
    CatalyticTape tape = rt.make_tape(tape_salt, M.var_count(), N, spec);
    return mixed_max_rank_on_tape(rt, M, tape, s);
}

MixedMatrix murota_block(const DenseMatrix& A1, const DenseMatrix& A2) {
    if (A1.cols() != A2.cols())
        throw InvalidInput("matroid representations must share the ground set size");
    const std::size_t n = A1.cols();
    const std::size_t r1 = A1.rows(), r2 = A2.rows();
    MixedMatrix M(r1 + n, r2 + n);
    for (std::size_t i = 0; i < r1; ++i)
        for (std::size_t j = 0; j < n; ++j) M.set_const(i, r2 + j, A1.at(i, j));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < r2; ++j) M.set_const(r1 + i, j, A2.at(j, i));
    for (std::size_t i = 0; i < n; ++i) M.set_var(r1 + i, r2 + i);
    return M;
}

std::size_t matroid_intersection_size(const Runtime& rt, const DenseMatrix& A1,
                                      const DenseMatrix& A2) {
    const std::size_t n = A1.cols();
    const MixedRankResult res = mixed_max_rank(rt, murota_block(A1, A2), 4);
    if (res.rank < n)
        throw LemmaViolation("block matrix rank below ground set size; diag(x) should prevent this");
    return res.rank - n;
}

} // namespace cm
