#include "catamatch/tutte.hpp"

#include <algorithm>

namespace cm {

SkewMatrix tutte_matrix(const PrimeField& F, const Graph& G, const std::vector<u64>& a) {
    if (a.size() != G.edge_count())
        throw InvalidInput("tutte_matrix: need one value per edge");
    SkewMatrix T(G.vertex_count());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto [u, v] = G.edge(i);
        T.set_pair(F, static_cast<std::size_t>(u), static_cast<std::size_t>(v), F.reduce(a[i]));
    }
    return T;
}

static SkewMatrix with_edge(const PrimeField& F, const Graph& G, const SkewMatrix& T,
                            std::size_t i, u64 v) {
    SkewMatrix T2 = T;
    const auto [x, y] = G.edge(i);
    T2.set_pair(F, static_cast<std::size_t>(x), static_cast<std::size_t>(y), F.reduce(v));
    return T2;
}

CaseSplit tutte_case_split(const PrimeField& F, const Graph& G,
                           const std::vector<u64>& a, u64 s) {
    if (s < 2) throw PreconditionViolation("case split needs a value set of size >= 2");
    const SkewMatrix T = tutte_matrix(F, G, a);
    CaseSplit cs;
    cs.rank = rank_of(F, T);
    cs.deficiency = deficiency(F, T);

    // One probe per edge decides each case: the witnessing Pfaffian minor is
    // linear in the edge value, vanishing only at a_i, so any other value
    // exhibits the case whenever some value does.
    for (std::size_t i = 0; i < a.size(); ++i) {
        const u64 probe = (a[i] + 1) % s;
        if (rank_of(F, with_edge(F, G, T, i, probe)) == cs.rank + 2) {
            cs.kind = CaseKind::TwoA;
            cs.edge = i;
            cs.probe = probe;
            return cs;
        }
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const u64 probe = (a[i] + 1) % s;
        const SkewMatrix T2 = with_edge(F, G, T, i, probe);
        if (rank_of(F, T2) != cs.rank) continue;
        const auto D2 = deficiency(F, T2);
        for (std::size_t u : D2) {
            if (!std::binary_search(cs.deficiency.begin(), cs.deficiency.end(), u)) {
                cs.kind = CaseKind::TwoB;
                cs.edge = i;
                cs.def_vertex = u;
                cs.probe = probe;
                return cs;
            }
        }
    }
    cs.kind = CaseKind::MaxRank;
    return cs;
}

std::vector<u64> tutte_candidates_2A(const PrimeField& F, const Graph& G,
                                     std::vector<u64> a, std::size_t j,
                                     std::size_t k, u64 s) {
    std::vector<u64> out;
    for (u64 v = 0; v < s; ++v) {
        a[j] = v;
        if (rank_of(F, tutte_matrix(F, G, a)) == k) out.push_back(v);
    }
    return out;
}

std::vector<u64> tutte_candidates_2B(const PrimeField& F, const Graph& G,
                                     std::vector<u64> a, std::size_t j,
                                     std::size_t u, u64 s) {
    std::vector<u64> out;
    for (u64 v = 0; v < s; ++v) {
        a[j] = v;
        const SkewMatrix T = tutte_matrix(F, G, a);
        // u outside the deficiency set: deleting u loses rank
        if (rank_of(F, T.without_vertex(u)) < rank_of(F, T)) out.push_back(v);
    }
    return out;
}

static bool strict_superset(const std::vector<std::size_t>& sub,
                            const std::vector<std::size_t>& sup) {
    if (sup.size() <= sub.size()) return false;
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
}

std::vector<u64> geelen_greedy(const PrimeField& F, const Graph& G, u64 s) {
    const std::size_t n = G.vertex_count();
    if (s < n + 4) throw PreconditionViolation("greedy needs a value set of size >= n+4");
    std::vector<u64> a(G.edge_count(), 0);
    for (;;) {
        const SkewMatrix T = tutte_matrix(F, G, a);
        const std::size_t k = rank_of(F, T);
        const auto D = deficiency(F, T);
        bool moved = false;
        for (std::size_t i = 0; i < a.size() && !moved; ++i) {
            const u64 probe = (a[i] + 1) % s;
            if (rank_of(F, with_edge(F, G, T, i, probe)) == k + 2) {
                a[i] = probe;
                moved = true;
            }
        }
        if (moved) continue;
        // Deficiency-enlarging move at equal rank; n+3 trial values per edge
        // are enough to dodge the at-most-one bad value of every D vertex.
        for (std::size_t i = 0; i < a.size() && !moved; ++i) {
            u64 tried = 0;
            for (u64 v = 0; v < s && tried < n + 3; ++v) {
                if (v == a[i]) continue;
                ++tried;
                const SkewMatrix T2 = with_edge(F, G, T, i, v);
                if (rank_of(F, T2) != k) continue;
                if (strict_superset(D, deficiency(F, T2))) {
                    a[i] = v;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) return a;  // neither case applies: generic rank reached
    }
}

u64 tutte_desk_s(const Graph& G) {
    // Smallest power of two whose width beats the compressed layout
    // [tag | edge index | rank-or-vertex] by at least one bit per value.
    const unsigned iw = width_for_count(G.edge_count());
    const unsigned mw = std::max(width_for_count(G.vertex_count() + 1),
                                 width_for_count(G.vertex_count()));
    return 1ull << (2 + iw + mw);
}

u64 tutte_paper_s(const Graph& G) {
    const u64 n = std::max<u64>(G.vertex_count(), 2);
    u64 s = 1;
    for (int i = 0; i < 10; ++i) s *= n;  // value set [n^10]
    return s;
}

static std::vector<int> to_int_vec(const std::vector<std::size_t>& v) {
    std::vector<int> out;
    out.reserve(v.size());
    for (std::size_t x : v) out.push_back(static_cast<int>(x));
    return out;
}

MatchingSizeResult matching_size_on_tape(const Runtime& rt, const Graph& G,
                                         CatalyticTape& tape, u64 s) {
    const PrimeField F(rt.params().prime);
    const std::size_t n = G.vertex_count();
    const std::size_t m = G.edge_count();
    if (tape.values_per_block() != m)
        throw PreconditionViolation("tape block shape does not match the edge count");
    const std::size_t N = tape.block_count();
    const unsigned iw = width_for_count(m);
    const unsigned kw = width_for_count(n + 1);
    const unsigned uw = width_for_count(n);

    MatchingSizeResult res;
    res.s = s;

    bool found = false;
    for (std::size_t t = 0; t < N && !found; ++t) {
        const std::vector<u64> a = tape.values(t);
        const CaseSplit cs = tutte_case_split(F, G, a, s);
        switch (cs.kind) {
            case CaseKind::MaxRank:
                res.nu = cs.rank / 2;
                res.D = to_int_vec(cs.deficiency);
                res.assignment = a;
                res.blocks_used = t + 1;
                found = true;
                break;
            case CaseKind::TwoA:
                tape.compress_block(t, CaseTag::TwoA, 1, 0, {cs.edge},
                                    {cs.edge, cs.rank}, {iw, kw});
                break;
            case CaseKind::TwoB:
                tape.compress_block(t, CaseTag::TwoB, 1, 1, {cs.edge},
                                    {cs.edge, cs.def_vertex}, {iw, uw});
                break;
        }
    }
    res.compressions = tape.compressed_count();
    res.freed_bits = tape.freed_bits();

    if (!found) {
        // Every block compressed: make the freed space contiguous and solve
        // directly in the arena.
        (void)tape.compact();
        res.assignment = geelen_greedy(F, G, s);
        const SkewMatrix T = tutte_matrix(F, G, res.assignment);
        res.nu = rank_of(F, T) / 2;
        res.D = to_int_vec(deficiency(F, T));
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
                rec.tag == CaseTag::TwoA
                    ? tutte_candidates_2A(F, G, a, j, rec.meta[1], s)
                    : tutte_candidates_2B(F, G, a, j, rec.meta[1], s);
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

MatchingSizeResult matching_size(const Runtime& rt, const Graph& G, u64 tape_salt) {
    const std::size_t n = G.vertex_count();
    if (G.edge_count() == 0) {
        MatchingSizeResult res;
        res.nu = 0;
        for (std::size_t v = 0; v < n; ++v) res.D.push_back(static_cast<int>(v));
        res.tape_verified = true;
        return res;
    }
    const u64 s = rt.value_set_size(tutte_desk_s(G), tutte_paper_s(G));
    const FieldSpec spec(rt.params().prime, s);
    const std::size_t N = rt.block_count(std::max<std::size_t>(n, 1), n * n * n);
    CatalyticTape tape = rt.make_tape(tape_salt, G.edge_count(), N, spec);
    return matching_size_on_tape(rt, G, tape, s);
}

GallaiEdmondsResult gallai_edmonds(const Runtime& rt, const Graph& G) {
    const MatchingSizeResult ms = matching_size(rt, G, 2);
    GallaiEdmondsResult ge;
    ge.nu = ms.nu;
    ge.D = ms.D;
    std::vector<char> inD(G.vertex_count(), 0);
    for (int v : ge.D) inD[static_cast<std::size_t>(v)] = 1;
    for (std::size_t v = 0; v < G.vertex_count(); ++v) {
        if (inD[v]) continue;
        bool adj = false;
        for (int w : G.neighbors(static_cast<int>(v)))
            if (inD[static_cast<std::size_t>(w)]) adj = true;
        if (adj)
            ge.A.push_back(static_cast<int>(v));
        else
            ge.C.push_back(static_cast<int>(v));
    }
    const Graph GD = G.induced(ge.D);  // ge.D is sorted (deficiency order)
    for (const auto& comp : GD.components()) {
        std::vector<int> orig;
        for (int v : comp) orig.push_back(ge.D[static_cast<std::size_t>(v)]);
        ge.d_components.push_back(std::move(orig));
    }
    return ge;
}

std::vector<u64> max_rank_assignment(const Runtime& rt, const Graph& G, u64 tape_salt) {
    return matching_size(rt, G, tape_salt).assignment;
}

} // namespace cm
