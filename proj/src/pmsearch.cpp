#include "catamatch/pmsearch.hpp"

#include <algorithm>

#include "catamatch/mixedrank.hpp"

namespace cm {

PolySkewMatrix weighted_tutte(const PrimeField& F, const Graph& G,
                              const std::vector<u64>& assignment,
                              const std::vector<u64>& W) {
    if (assignment.size() != G.edge_count() || W.size() != G.edge_count())
        throw InvalidInput("weighted_tutte: need one value and one weight per edge");
    PolySkewMatrix A(G.vertex_count());
    for (std::size_t i = 0; i < W.size(); ++i) {
        const auto [u, v] = G.edge(i);
        A.set_pair(F, static_cast<std::size_t>(u), static_cast<std::size_t>(v),
                   UniPoly::monomial(F.reduce(assignment[i]), static_cast<std::size_t>(W[i])));
    }
    return A;
}

std::size_t pm_degree_bound(const Graph& G, u64 w_max) {
    return (G.vertex_count() / 2) * static_cast<std::size_t>(w_max);
}

static void require_full_rank(const PrimeField& F, const Graph& G,
                              const std::vector<u64>& assignment) {
    if (rank_of(F, tutte_matrix(F, G, assignment)) != G.vertex_count())
        throw PreconditionViolation("Tutte evaluation is not full rank (no perfect matching certified)");
}

std::pair<UniPoly, UniPoly> split_P0_P1(const PrimeField& F, const Graph& G,
                                        const std::vector<u64>& assignment,
                                        const std::vector<u64>& W, std::size_t e,
                                        std::size_t d_max) {
    require_full_rank(F, G, assignment);
    PolySkewMatrix A = weighted_tutte(F, G, assignment, W);
    const auto [u, v] = G.edge(e);
    PolySkewMatrix A_del = A;
    A_del.set_pair(F, static_cast<std::size_t>(u), static_cast<std::size_t>(v), UniPoly::zero());
    const UniPoly P0 = pfaffian_poly(F, A_del, d_max);
    // Pf(A_e) at y = 1 is A with the weight of e zeroed
    PolySkewMatrix A_w0 = A;
    A_w0.set_pair(F, static_cast<std::size_t>(u), static_cast<std::size_t>(v),
                  UniPoly::constant(F.reduce(assignment[e])));
    const UniPoly P1 = poly_sub(F, pfaffian_poly(F, A_w0, d_max), P0);
    return {P0, P1};
}

std::optional<ThresholdEdge> find_threshold_edge(const PrimeField& F, const Graph& G,
                                                 const std::vector<u64>& assignment,
                                                 const std::vector<u64>& W, u64 w_max) {
    const std::size_t d_max = pm_degree_bound(G, w_max);
    for (std::size_t e = 0; e < G.edge_count(); ++e) {
        const auto [P0, P1] = split_P0_P1(F, G, assignment, W, e, d_max);
        const auto t0 = min_degree_term(P0);
        const auto t1 = min_degree_term(P1);
        if (!t0 || !t1) continue;
        const std::size_t w_ebar = t0->first, w_e = t1->first;
        if (w_ebar >= w_e && W[e] == w_ebar - w_e)
            return ThresholdEdge{e, w_ebar, w_e};
    }
    return std::nullopt;
}

std::vector<std::size_t> extract_matching(const PrimeField& F, const Graph& G,
                                          const std::vector<u64>& assignment,
                                          const std::vector<u64>& W, u64 w_max) {
    require_full_rank(F, G, assignment);
    const std::size_t d_max = pm_degree_bound(G, w_max);
    const UniPoly PfA = pfaffian_poly(F, weighted_tutte(F, G, assignment, W), d_max);
    const auto low = min_degree_term(PfA);
    if (!low)
        throw LemmaViolation("Pf(A) vanished although the Tutte evaluation is full rank");
    const std::size_t w0 = low->first;
    std::vector<std::size_t> M;
    for (std::size_t e = 0; e < G.edge_count(); ++e) {
        const auto [P0, P1] = split_P0_P1(F, G, assignment, W, e, d_max);
        (void)P1;
        if (P0.coeff(w0) == 0) M.push_back(e);
    }
    // Validate the case-2 promise before returning anything.
    std::vector<unsigned> deg(G.vertex_count(), 0);
    u64 weight = 0;
    for (std::size_t e : M) {
        const auto [u, v] = G.edge(e);
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
        weight += W[e];
    }
    for (unsigned d : deg)
        if (d != 1) throw LemmaViolation("extracted edge set is not a perfect matching");
    if (weight != w0)
        throw LemmaViolation("extracted matching weight differs from the least degree w0");
    return M;
}

static std::vector<std::pair<int, int>> self_reduce(const PrimeField& F, const Graph& G,
                                                    std::vector<int> verts) {
    if (verts.empty()) return {};
    const Graph H = G.induced(verts);  // verts comes in sorted
    for (int v_local : H.neighbors(0)) {
        std::vector<int> rest;
        for (std::size_t i = 1; i < verts.size(); ++i)
            if (static_cast<int>(i) != v_local) rest.push_back(verts[static_cast<std::size_t>(i)]);
        bool ok;
        if (rest.empty()) {
            ok = true;
        } else {
            const Graph H2 = G.induced(rest);
            if (H2.edge_count() == 0) {
                ok = false;
            } else {
                const std::vector<u64> a2 = geelen_greedy(F, H2, tutte_desk_s(H2));
                ok = rank_of(F, tutte_matrix(F, H2, a2)) == H2.vertex_count();
            }
        }
        if (ok) {
            auto M = self_reduce(F, G, rest);
            M.emplace_back(verts[0], verts[static_cast<std::size_t>(v_local)]);
            return M;
        }
    }
    throw LemmaViolation("self-reduction: no edge at the smallest vertex extends to a perfect matching");
}

std::vector<std::size_t> pm_self_reduction(const PrimeField& F, const Graph& G) {
    std::vector<int> verts;
    for (std::size_t v = 0; v < G.vertex_count(); ++v) verts.push_back(static_cast<int>(v));
    std::vector<std::size_t> out;
    for (const auto& [u, v] : self_reduce(F, G, std::move(verts)))
        out.push_back(*G.edge_index(u, v));
    std::sort(out.begin(), out.end());
    return out;
}

u64 pm_desk_wmax(const Graph& G) {
    // One bit wider than the stored edge index so the PM-EDGE rewrite shrinks.
    return (1ull << (width_for_count(G.edge_count()) + 1)) - 1;
}

u64 pm_paper_wmax(const Graph& G) {
    const u64 n = std::max<u64>(G.vertex_count(), 2);
    u64 s = 1;
    for (int i = 0; i < 10; ++i) s *= n;
    return s - 1;
}

PerfectMatchingResult perfect_matching_on_tape(const Runtime& rt, const Graph& G,
                                               const std::vector<u64>& assignment,
                                               CatalyticTape& tape, u64 w_max) {
    const PrimeField F(rt.params().prime);
    require_full_rank(F, G, assignment);
    const std::size_t m = G.edge_count();
    if (tape.values_per_block() != m)
        throw PreconditionViolation("tape block shape does not match the edge count");
    const std::size_t N = tape.block_count();
    const unsigned iw = width_for_count(m);

    PerfectMatchingResult res;
    res.w_max = w_max;
    bool found = false;
    for (std::size_t t = 0; t < N && !found; ++t) {
        const std::vector<u64> W = tape.values(t);
        if (const auto th = find_threshold_edge(F, G, assignment, W, w_max)) {
            tape.compress_block(t, CaseTag::PmEdge, 0, 0, {th->edge}, {th->edge}, {iw});
            continue;
        }
        res.edges = extract_matching(F, G, assignment, W, w_max);
        for (std::size_t e : res.edges) res.weight += W[e];
        res.blocks_used = t + 1;
        found = true;
    }
    res.compressions = tape.compressed_count();
    res.freed_bits = tape.freed_bits();

    if (!found) {
        (void)tape.compact();
        res.edges = pm_self_reduction(F, G);
        res.used_fallback = true;
        res.blocks_used = N;
        tape.uncompact();
    }

    const std::size_t d_max = pm_degree_bound(G, w_max);
    const CatalyticTape::Recompute recompute =
        [&](const CompressionRecord& rec, const std::vector<u64>& rest) {
            const std::size_t j = rec.meta[0];
            std::vector<u64> W(m);
            for (std::size_t i = 0, r = 0; i < m; ++i)
                if (i != j) W[i] = rest[r++];
            W[j] = 0;  // P0 ignores W(e); P1 is defined with W(e) zeroed
            const auto [P0, P1] = split_P0_P1(F, G, assignment, W, j, d_max);
            const auto t0 = min_degree_term(P0);
            const auto t1 = min_degree_term(P1);
            std::vector<std::vector<u64>> out;
            if (t0 && t1 && t0->first >= t1->first) {
                const u64 w = t0->first - t1->first;
                if (w <= w_max) out.push_back({w});
            }
            return out;
        };
    for (std::size_t t = 0; t < N; ++t)
        if (!tape.pristine(t)) tape.restore_block(t, recompute);
    res.tape_verified = tape.verify_restored();
    if (rt.check_restore() && !res.tape_verified)
        throw ContractViolation("catalytic tape is not bit-identical to its snapshot after restoration");
    return res;
}

PerfectMatchingResult perfect_matching(const Runtime& rt, const Graph& G, u64 tape_salt) {
    const std::size_t n = G.vertex_count();
    PerfectMatchingResult res;
    if (n == 0) {
        res.tape_verified = true;
        return res;
    }
    if (n % 2 != 0)
        throw PreconditionViolation("odd vertex count: no perfect matching");
    const std::vector<u64> assignment = max_rank_assignment(rt, G, tape_salt);
    const u64 w_max = rt.weight_bound(pm_desk_wmax(G), pm_paper_wmax(G));
    const FieldSpec spec(rt.params().prime, w_max + 1);
    const std::size_t N = rt.block_count(n, n * n * n);
    CatalyticTape tape = rt.make_tape(tape_salt ^ 0x504d5441ull, G.edge_count(), N, spec);
    return perfect_matching_on_tape(rt, G, assignment, tape, w_max);
}

static DenseMatrix submatrix(const DenseMatrix& A, const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& cols) {
    DenseMatrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out.at(i, j) = A.at(rows[i], cols[j]);
    return out;
}

std::vector<std::pair<int, int>> bipartite_max_matching(
    const Runtime& rt, std::size_t nl, std::size_t nr,
    const std::vector<std::pair<int, int>>& edges) {
    if (nl == 0 || nr == 0 || edges.empty()) return {};
    std::vector<std::pair<int, int>> es = edges;
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());

    MixedMatrix B(nl, nr);
    for (const auto& [l, r] : es) {
        if (l < 0 || static_cast<std::size_t>(l) >= nl || r < 0 || static_cast<std::size_t>(r) >= nr)
            throw InvalidInput("bipartite edge endpoint out of range");
        B.set_var(static_cast<std::size_t>(l), static_cast<std::size_t>(r));
    }
    const MixedRankResult mr = mixed_max_rank(rt, B, 6);
    if (mr.rank == 0) return {};
    const PrimeField F(rt.params().prime);
    const DenseMatrix Bp = evaluate(F, B, mr.assignment);

    std::vector<std::size_t> all_cols;
    for (std::size_t j = 0; j < nr; ++j) all_cols.push_back(j);
    std::vector<std::size_t> R, S;
    for (std::size_t i = 0; i < nl; ++i) {
        auto cand = R;
        cand.push_back(i);
        if (rank_of(F, submatrix(Bp, cand, all_cols)) > R.size()) R = std::move(cand);
    }
    for (std::size_t j = 0; j < nr && S.size() < mr.rank; ++j) {
        auto cand = S;
        cand.push_back(j);
        if (rank_of(F, submatrix(Bp, R, cand)) > S.size()) S = std::move(cand);
    }
    if (R.size() != mr.rank || S.size() != mr.rank)
        throw ContractViolation("greedy line selection missed the completed rank");

    // Square subgraph on R x S contains a perfect matching (nonzero det).
    const std::size_t k = mr.rank;
    std::vector<std::pair<int, int>> sub_edges;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (B.is_var(R[i], S[j]))
                sub_edges.emplace_back(static_cast<int>(i), static_cast<int>(k + j));
    const Graph P(2 * k, sub_edges);
    const PerfectMatchingResult pm = perfect_matching(rt, P, 7);
    std::vector<std::pair<int, int>> out;
    for (std::size_t e : pm.edges) {
        const auto [u, v] = P.edge(e);
        out.emplace_back(static_cast<int>(R[static_cast<std::size_t>(u)]),
                         static_cast<int>(S[static_cast<std::size_t>(v) - k]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

MaximumMatchingResult maximum_matching(const Runtime& rt, const Graph& G) {
    MaximumMatchingResult res;
    res.decomposition = gallai_edmonds(rt, G);
    const GallaiEdmondsResult& ge = res.decomposition;

    if (!ge.C.empty()) {
        const Graph GC = G.induced(ge.C);
        for (std::size_t e : perfect_matching(rt, GC, 11).edges) {
            const auto [u, v] = GC.edge(e);
            res.edges.push_back(*G.edge_index(ge.C[static_cast<std::size_t>(u)],
                                              ge.C[static_cast<std::size_t>(v)]));
        }
    }

    const std::size_t k = ge.d_components.size();
    std::vector<int> d_of_comp(k, -1);
    if (!ge.A.empty() && k > 0) {
        // A is matched against whole components of D: one matched vertex per
        // component keeps the near-perfect matchings below disjoint.
        std::vector<std::pair<int, int>> contracted;
        for (std::size_t ai = 0; ai < ge.A.size(); ++ai) {
            for (std::size_t ci = 0; ci < k; ++ci) {
                bool adj = false;
                for (int v : ge.d_components[ci])
                    if (G.has_edge(ge.A[ai], v)) adj = true;
                if (adj) contracted.emplace_back(static_cast<int>(ai), static_cast<int>(ci));
            }
        }
        for (const auto& [ai, ci] : bipartite_max_matching(rt, ge.A.size(), k, contracted)) {
            const int a = ge.A[static_cast<std::size_t>(ai)];
            int d = -1;
            for (int v : ge.d_components[static_cast<std::size_t>(ci)])
                if (G.has_edge(a, v)) { d = v; break; }  // components are sorted
            res.edges.push_back(*G.edge_index(a, d));
            d_of_comp[static_cast<std::size_t>(ci)] = d;
        }
    }

    for (std::size_t ci = 0; ci < k; ++ci) {
        const auto& comp = ge.d_components[ci];
        const int d = d_of_comp[ci] >= 0 ? d_of_comp[ci] : comp[0];
        std::vector<int> rest;
        for (int v : comp)
            if (v != d) rest.push_back(v);
        if (rest.empty()) continue;
        const Graph GD = G.induced(rest);
        for (std::size_t e : perfect_matching(rt, GD, 13 + ci).edges) {
            const auto [u, v] = GD.edge(e);
            res.edges.push_back(*G.edge_index(rest[static_cast<std::size_t>(u)],
                                              rest[static_cast<std::size_t>(v)]));
        }
    }
    std::sort(res.edges.begin(), res.edges.end());
    res.nu = res.edges.size();
    return res;
}

} // namespace cm
