#include "catamatch/edmonds.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include "catamatch/errors.hpp"

namespace cm {

void MatrixPencil::validate() const {
    const std::size_t n = dim();
    for (const auto& M : mats)
        if (M.rows() != n || M.cols() != n)
            throw InvalidInput("pencil matrices must be square with equal dimensions");
}

DenseMatrix evaluate_pencil(const PrimeField& F, const MatrixPencil& P,
                            const std::vector<u64>& a) {
    if (a.size() != P.size())
        throw InvalidInput("evaluate_pencil: need one value per pencil matrix");
    const std::size_t n = P.dim();
    DenseMatrix A(n, n);
    for (std::size_t t = 0; t < P.size(); ++t) {
        const u64 x = F.reduce(a[t]);
        if (x == 0) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                A.at(i, j) = F.add(A.at(i, j), F.mul(x, P.mats[t].at(i, j)));
    }
    return A;
}

static u64 sat_pow(u64 base, std::size_t e) {
    u64 r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (base != 0 && r > std::numeric_limits<u64>::max() / base)
            return std::numeric_limits<u64>::max();
        r *= base;
    }
    return r;
}

ApproxParams approx_params(const Runtime& rt, double epsilon, std::size_t n) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw InvalidInput("epsilon must lie in (0, 1)");
    ApproxParams ap;
    ap.epsilon = epsilon;
    ap.l = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(1.0 / epsilon - 1.0 - 1e-9)));
    ap.c = 2 * ap.l + 3;
    const u64 desk = std::max<u64>(64, 4 * static_cast<u64>(n));
    const u64 paper = sat_pow(std::max<u64>(n, 2), ap.c);
    ap.s = rt.value_set_size(desk, paper);
    if (ap.l > 3)
        std::cerr << "warning: tuple length " << ap.l
                  << " enumerates s^" << ap.l << " substitutions per subset\n";
    return ap;
}

// Base evaluation with the I coordinates zeroed; adding lambda back is then
// n^2 per tuple instead of a full re-evaluation.
static DenseMatrix base_without(const PrimeField& F, const MatrixPencil& P,
                                const std::vector<u64>& a,
                                const std::vector<std::size_t>& I) {
    std::vector<u64> b = a;
    for (std::size_t i : I) b[i] = 0;
    return evaluate_pencil(F, P, b);
}

static std::size_t rank_with(const PrimeField& F, const MatrixPencil& P,
                             const DenseMatrix& base, const std::vector<std::size_t>& I,
                             const std::vector<u64>& lambda) {
    const std::size_t n = base.rows();
    DenseMatrix A = base;
    for (std::size_t t = 0; t < I.size(); ++t) {
        const u64 x = F.reduce(lambda[t]);
        if (x == 0) continue;
        const DenseMatrix& M = P.mats[I[t]];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                A.at(i, j) = F.add(A.at(i, j), F.mul(x, M.at(i, j)));
    }
    return rank_of(F, A);
}

static bool next_combination(std::vector<std::size_t>& I, std::size_t m) {
    const std::size_t l = I.size();
    for (std::size_t t = l; t-- > 0;) {
        if (I[t] + (l - t) < m) {
            ++I[t];
            for (std::size_t u = t + 1; u < l; ++u) I[u] = I[u - 1] + 1;
            return true;
        }
    }
    return false;
}

static bool next_tuple(std::vector<u64>& v, u64 s) {
    for (std::size_t t = v.size(); t-- > 0;) {
        if (v[t] + 1 < s) {
            ++v[t];
            return true;
        }
        v[t] = 0;
    }
    return false;
}

std::optional<TupleWitness> tuple_case_split(const PrimeField& F, const MatrixPencil& P,
                                             const std::vector<u64>& a,
                                             const ApproxParams& params) {
    if (a.size() != P.size())
        throw InvalidInput("tuple_case_split: need one value per pencil matrix");
    const std::size_t m = P.size();
    const std::size_t l = params.l;
    if (l == 0 || l > m) return std::nullopt;
    const std::size_t k = rank_of(F, evaluate_pencil(F, P, a));

    std::vector<std::size_t> I(l);
    for (std::size_t t = 0; t < l; ++t) I[t] = t;
    do {
        const DenseMatrix base = base_without(F, P, a, I);
        std::vector<u64> lambda(l, 0);
        do {
            if (rank_with(F, P, base, I, lambda) > k)
                return TupleWitness{I, lambda};
        } while (next_tuple(lambda, params.s));
    } while (next_combination(I, m));
    return std::nullopt;
}

std::size_t tuple_ordinal(const PrimeField& F, const MatrixPencil& P,
                          const std::vector<u64>& a, const std::vector<std::size_t>& I,
                          std::size_t k, const ApproxParams& params) {
    const DenseMatrix base = base_without(F, P, a, I);
    std::vector<u64> own(I.size());
    for (std::size_t t = 0; t < I.size(); ++t) own[t] = a[I[t]];

    std::size_t j = 0;
    std::vector<u64> lambda(I.size(), 0);
    do {
        if (rank_with(F, P, base, I, lambda) == k) {
            ++j;
            if (lambda == own) return j;
        } else if (lambda == own) {
            throw ContractViolation("tuple_ordinal: the original tuple is not rank-k");
        }
    } while (next_tuple(lambda, params.s));
    throw ContractViolation("tuple_ordinal: the original tuple is outside the value set");
}

unsigned ed_ordinal_width(std::size_t n, const ApproxParams& params) {
    // |rank-k family| <= d * s^(l-1) with d <= n the degree of the witnessing
    // minor; the stored j-1 fits in this many bits.
    u64 bound = std::max<u64>(n, 1);
    for (std::size_t t = 1; t < params.l; ++t) {
        if (bound > std::numeric_limits<u64>::max() / params.s)
            return 64;
        bound *= params.s;
    }
    return width_for_count(bound);
}

std::vector<u64> bjp_greedy(const PrimeField& F, const MatrixPencil& P,
                            const ApproxParams& params) {
    std::vector<u64> a(P.size(), 0);
    // Each applied witness raises the rank, so at most dim(P) rounds.
    while (auto w = tuple_case_split(F, P, a, params))
        for (std::size_t t = 0; t < w->I.size(); ++t) a[w->I[t]] = w->lambda[t];
    return a;
}

ApproxRankResult pencil_approx_rank_on_tape(const Runtime& rt, const MatrixPencil& P,
                                            CatalyticTape& tape, const ApproxParams& params) {
    const PrimeField F(rt.params().prime);
    const std::size_t m = P.size();
    const std::size_t n = P.dim();
    if (tape.values_per_block() != m)
        throw PreconditionViolation("tape block shape does not match the pencil size");
    const std::size_t N = tape.block_count();
    const unsigned iw = width_for_count(m);
    const unsigned kw = width_for_count(n + 1);
    const unsigned jw = ed_ordinal_width(n, params);

    ApproxRankResult res;
    res.params = params;

    bool found = false;
    for (std::size_t t = 0; t < N && !found; ++t) {
        const std::vector<u64> a = tape.values(t);
        const auto w = tuple_case_split(F, P, a, params);
        if (!w) {
            res.rank = rank_of(F, evaluate_pencil(F, P, a));
            res.assignment = a;
            res.blocks_used = t + 1;
            found = true;
            break;
        }
        const std::size_t k = rank_of(F, evaluate_pencil(F, P, a));
        const std::size_t j = tuple_ordinal(F, P, a, w->I, k, params);
        std::vector<u64> meta;
        std::vector<unsigned> bits;
        for (std::size_t i : w->I) {
            meta.push_back(i);
            bits.push_back(iw);
        }
        meta.push_back(j - 1);
        bits.push_back(jw);
        meta.push_back(k);
        bits.push_back(kw);
        // Shrinks under the paper parameters; at desk scale the record may
        // grow and the accounting records the (negative) saving.
        tape.compress_block(t, CaseTag::EdTuple, 0, 0, w->I, std::move(meta),
                            std::move(bits), !rt.paper_params());
    }
    res.compressions = tape.compressed_count();
    res.freed_bits = tape.freed_bits();

    if (!found) {
        (void)tape.compact();
        res.assignment = bjp_greedy(F, P, params);
        res.rank = rank_of(F, evaluate_pencil(F, P, res.assignment));
        res.used_fallback = true;
        res.blocks_used = N;
        tape.uncompact();
    }

    const CatalyticTape::Recompute recompute =
        [&](const CompressionRecord& rec, const std::vector<u64>& rest) {
            const std::size_t l = rec.dropped.size();
            std::vector<u64> a(m, 0);
            for (std::size_t i = 0, r = 0, d = 0; i < m; ++i) {
                if (d < l && rec.dropped[d] == i)
                    ++d;
                else
                    a[i] = rest[r++];
            }
            const std::size_t target = static_cast<std::size_t>(rec.meta[l]) + 1;
            const std::size_t k = static_cast<std::size_t>(rec.meta[l + 1]);
            const DenseMatrix base = base_without(F, P, a, rec.dropped);

            std::vector<std::vector<u64>> out;
            std::size_t j = 0;
            std::vector<u64> lambda(l, 0);
            do {
                if (rank_with(F, P, base, rec.dropped, lambda) == k && ++j == target) {
                    out.push_back(lambda);
                    break;
                }
            } while (next_tuple(lambda, params.s));
            return out;
        };
    for (std::size_t t = 0; t < N; ++t)
        if (!tape.pristine(t)) tape.restore_block(t, recompute);
    res.tape_verified = tape.verify_restored();
    if (rt.check_restore() && !res.tape_verified)
        throw ContractViolation("catalytic tape is not bit-identical to its snapshot after restoration");
    return res;
}

ApproxRankResult pencil_approx_rank(const Runtime& rt, const MatrixPencil& P,
                                    double epsilon, u64 tape_salt) {
    P.validate();
    const std::size_t n = P.dim();
    const ApproxParams params = approx_params(rt, epsilon, n);
    if (P.size() == 0) {
        ApproxRankResult res;
        res.params = params;
        res.tape_verified = true;
        return res;
    }
    const FieldSpec spec(rt.params().prime, params.s);
    const std::size_t N = rt.block_count(std::max<std::size_t>(n, 1), n * n * n);
    CatalyticTape tape = rt.make_tape(tape_salt, P.size(), N, spec);
    return pencil_approx_rank_on_tape(rt, P, tape, params);
}

MatrixPencil matroid_matching_pencil(const PrimeField& F, const DenseMatrix& A, const Graph& g) {
    if (A.cols() != g.vertex_count())
        throw InvalidInput("matroid_matching_pencil: A needs one column per vertex");
    const std::size_t r = A.rows();
    MatrixPencil P;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edge(e);
        const std::size_t cu = static_cast<std::size_t>(u);
        const std::size_t cv = static_cast<std::size_t>(v);
        // A * (E_uv - E_vu) * A^T
        DenseMatrix B(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                B.at(i, j) = F.sub(F.mul(A.at(i, cu), A.at(j, cv)),
                                   F.mul(A.at(i, cv), A.at(j, cu)));
        P.mats.push_back(std::move(B));
    }
    return P;
}

std::size_t matroid_matching_approx(const Runtime& rt, const DenseMatrix& A,
                                    const Graph& g, double epsilon) {
    if (A.rows() == 0 || g.edge_count() == 0) return 0;
    const PrimeField F(rt.params().prime);
    const MatrixPencil P = matroid_matching_pencil(F, A, g);
    // Evaluations are skew, so the approximated rank is even.
    return pencil_approx_rank(rt, P, epsilon, 19).rank / 2;
}

} // namespace cm
