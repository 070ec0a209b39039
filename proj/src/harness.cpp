#include "catamatch/harness.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>

#include <json.hpp>

#include "catamatch/errors.hpp"

namespace cm {

// nu for every vertex subset, by include-the-lowest-vertex recursion.
static std::size_t nu_mask(const Graph& g, std::vector<int>& memo, unsigned mask) {
    if (mask == 0) return 0;
    if (memo[mask] >= 0) return static_cast<std::size_t>(memo[mask]);
    unsigned v = 0;
    while (!(mask & (1u << v))) ++v;
    std::size_t best = nu_mask(g, memo, mask & ~(1u << v));
    for (int w : g.neighbors(static_cast<int>(v))) {
        const unsigned bw = 1u << static_cast<unsigned>(w);
        if (mask & bw)
            best = std::max(best, 1 + nu_mask(g, memo, mask & ~(1u << v) & ~bw));
    }
    memo[mask] = static_cast<int>(best);
    return best;
}

std::size_t oracle_max_matching(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n > 16) throw InvalidInput("oracle_max_matching: n > 16");
    if (n == 0) return 0;
    std::vector<int> memo(1u << n, -1);
    return nu_mask(g, memo, (1u << n) - 1);
}

bool oracle_has_pm(const Graph& g) {
    const std::size_t n = g.vertex_count();
    return n % 2 == 0 && oracle_max_matching(g) == n / 2;
}

GallaiEdmondsResult oracle_gallai_edmonds(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n > 12) throw InvalidInput("oracle_gallai_edmonds: n > 12");
    GallaiEdmondsResult ge;
    if (n == 0) return ge;
    std::vector<int> memo(1u << n, -1);
    const unsigned full = (1u << n) - 1;
    ge.nu = nu_mask(g, memo, full);
    std::vector<char> inD(n, 0);
    for (unsigned v = 0; v < n; ++v)
        if (nu_mask(g, memo, full & ~(1u << v)) == ge.nu) {
            ge.D.push_back(static_cast<int>(v));
            inD[v] = 1;
        }
    for (unsigned v = 0; v < n; ++v) {
        if (inD[v]) continue;
        bool adj = false;
        for (int w : g.neighbors(static_cast<int>(v)))
            if (inD[static_cast<unsigned>(w)]) adj = true;
        (adj ? ge.A : ge.C).push_back(static_cast<int>(v));
    }
    const Graph gd = g.induced(ge.D);
    for (const auto& comp : gd.components()) {
        std::vector<int> orig;
        for (int v : comp) orig.push_back(ge.D[static_cast<std::size_t>(v)]);
        ge.d_components.push_back(std::move(orig));
    }
    return ge;
}

std::size_t oracle_bipartite_matching(std::size_t nl, std::size_t nr,
                                      const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(nl);
    for (const auto& [u, v] : edges) {
        if (u < 0 || static_cast<std::size_t>(u) >= nl || v < 0 || static_cast<std::size_t>(v) >= nr)
            throw InvalidInput("bipartite edge out of range");
        adj[static_cast<std::size_t>(u)].push_back(v);
    }
    std::vector<int> match_r(nr, -1);
    std::vector<char> seen;
    // Kuhn's augmenting paths
    std::function<bool(int)> tryk = [&](int u) {
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = 1;
            if (match_r[static_cast<std::size_t>(v)] < 0 || tryk(match_r[static_cast<std::size_t>(v)])) {
                match_r[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        return false;
    };
    std::size_t size = 0;
    for (std::size_t u = 0; u < nl; ++u) {
        seen.assign(nr, 0);
        if (tryk(static_cast<int>(u))) ++size;
    }
    return size;
}

std::size_t oracle_symbolic_rank(const PrimeField& F, const MixedMatrix& M,
                                 std::size_t trials, u64 s, u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> draw(0, s - 1);
    std::size_t best = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        DenseMatrix A(M.rows(), M.cols());
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j)
                A.at(i, j) = M.is_var(i, j) ? F.reduce(draw(rng)) : M.const_at(i, j);
        best = std::max(best, rank_of(F, A));
    }
    return best;
}

std::size_t oracle_symbolic_rank(const PrimeField& F, const MatrixPencil& P,
                                 std::size_t trials, u64 s, u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> draw(0, s - 1);
    const std::size_t n = P.dim();
    std::size_t best = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        DenseMatrix A(n, n);
        for (const auto& M : P.mats) {
            const u64 x = F.reduce(draw(rng));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    A.at(i, j) = F.add(A.at(i, j), F.mul(x, M.at(i, j)));
        }
        best = std::max(best, rank_of(F, A));
    }
    return best;
}

static bool cols_independent(const PrimeField& F, const DenseMatrix& A,
                             const std::vector<std::size_t>& cols) {
    DenseMatrix S(A.rows(), cols.size());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) S.at(i, j) = A.at(i, cols[j]);
    return rank_of(F, S) == cols.size();
}

std::size_t oracle_matroid_intersection(const PrimeField& F, const DenseMatrix& A1,
                                        const DenseMatrix& A2) {
    if (A1.cols() != A2.cols()) throw InvalidInput("representations need a common ground set");
    const std::size_t n = A1.cols();
    if (n > 20) throw InvalidInput("oracle_matroid_intersection: ground set > 20");
    std::size_t best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size <= best) continue;
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
            if (mask & (1u << j)) cols.push_back(j);
        if (cols_independent(F, A1, cols) && cols_independent(F, A2, cols)) best = size;
    }
    return best;
}

static void matroid_matching_rec(const PrimeField& F, const DenseMatrix& A, const Graph& g,
                                 std::size_t e, unsigned used, std::vector<std::size_t>& cols,
                                 std::size_t& best) {
    best = std::max(best, cols.size() / 2);
    if (e == g.edge_count()) return;
    if (cols.size() / 2 + (g.edge_count() - e) <= best) return;
    matroid_matching_rec(F, A, g, e + 1, used, cols, best);
    const auto [u, v] = g.edge(e);
    const unsigned bu = 1u << static_cast<unsigned>(u), bv = 1u << static_cast<unsigned>(v);
    if ((used & bu) || (used & bv)) return;
    cols.push_back(static_cast<std::size_t>(u));
    cols.push_back(static_cast<std::size_t>(v));
    if (cols_independent(F, A, cols))
        matroid_matching_rec(F, A, g, e + 1, used | bu | bv, cols, best);
    cols.pop_back();
    cols.pop_back();
}

std::size_t oracle_matroid_matching(const PrimeField& F, const DenseMatrix& A, const Graph& g) {
    if (g.vertex_count() > 16) throw InvalidInput("oracle_matroid_matching: n > 16");
    if (A.cols() != g.vertex_count()) throw InvalidInput("A needs one column per vertex");
    std::vector<std::size_t> cols;
    std::size_t best = 0;
    matroid_matching_rec(F, A, g, 0, 0, cols, best);
    return best;
}

static u64 pfaffian_rec(const PrimeField& F, const SkewMatrix& M, std::vector<std::size_t> idx) {
    if (idx.empty()) return 1;
    if (idx.size() % 2) return 0;
    u64 acc = 0;
    const std::size_t i0 = idx[0];
    for (std::size_t j = 1; j < idx.size(); ++j) {
        const u64 a = M.at(i0, idx[j]);
        if (a == 0) continue;
        std::vector<std::size_t> rest;
        for (std::size_t t = 1; t < idx.size(); ++t)
            if (t != j) rest.push_back(idx[t]);
        const u64 term = F.mul(a, pfaffian_rec(F, M, std::move(rest)));
        // expansion sign alternates with the position of the partner
        acc = (j % 2) ? F.add(acc, term) : F.sub(acc, term);
    }
    return acc;
}

u64 pfaffian_brute(const PrimeField& F, const SkewMatrix& M) {
    std::vector<std::size_t> idx(M.order());
    std::iota(idx.begin(), idx.end(), 0);
    if (idx.size() % 2) return 0;
    return pfaffian_rec(F, M, std::move(idx));
}

u64 det_brute(const PrimeField& F, const DenseMatrix& M) {
    if (M.rows() != M.cols()) throw InvalidInput("det_brute: non-square");
    const std::size_t n = M.rows();
    if (n > 8) throw InvalidInput("det_brute: n > 8");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    u64 acc = 0;
    do {
        u64 term = 1;
        for (std::size_t i = 0; i < n && term; ++i) term = F.mul(term, M.at(i, perm[i]));
        if (term == 0) continue;
        std::size_t inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        acc = (inv % 2) ? F.sub(acc, term) : F.add(acc, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

// ---- generators ----

static std::mt19937_64 gen_rng(u64 seed, u64 kind) { return std::mt19937_64(mix_seed(seed, kind)); }

Graph gen_random_graph(u64 seed, std::size_t n, double edge_prob) {
    if (edge_prob < 0.0 || edge_prob > 1.0) throw InvalidInput("edge probability outside [0,1]");
    auto rng = gen_rng(seed, 0x67726170);
    std::bernoulli_distribution coin(edge_prob);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    return Graph(n, std::move(edges));
}

Graph gen_pm_graph(u64 seed, std::size_t n, double edge_prob) {
    if (n % 2 || n > 16) throw InvalidInput("pm-graph needs even n <= 16");
    auto rng = gen_rng(seed, 0x706d6772);
    std::bernoulli_distribution coin(edge_prob);
    for (;;) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (coin(rng)) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        Graph g(n, std::move(edges));
        if (oracle_has_pm(g)) return g;
    }
}

MixedMatrix gen_mixed(u64 seed, std::size_t r, std::size_t c, double var_density, u64 p) {
    if (var_density < 0.0 || var_density > 1.0) throw InvalidInput("density outside [0,1]");
    auto rng = gen_rng(seed, 0x6d697865);
    std::bernoulli_distribution coin(var_density);
    std::uniform_int_distribution<u64> small(0, 4);  // small constants, zeros common
    MixedMatrix M(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            if (coin(rng))
                M.set_var(i, j);
            else
                M.set_const(i, j, small(rng) % (p ? p : 1));
        }
    return M;
}

std::pair<DenseMatrix, DenseMatrix> gen_matroid_pair(u64 seed, std::size_t r1,
                                                     std::size_t r2, std::size_t n, u64 p) {
    auto rng = gen_rng(seed, 0x6d617472);
    std::uniform_int_distribution<u64> small(0, 4);
    DenseMatrix A1(r1, n), A2(r2, n);
    for (std::size_t i = 0; i < r1; ++i)
        for (std::size_t j = 0; j < n; ++j) A1.at(i, j) = small(rng) % (p ? p : 1);
    for (std::size_t i = 0; i < r2; ++i)
        for (std::size_t j = 0; j < n; ++j) A2.at(i, j) = small(rng) % (p ? p : 1);
    return {std::move(A1), std::move(A2)};
}

MatrixPencil gen_pencil(u64 seed, std::size_t m, std::size_t n,
                        const std::vector<std::size_t>& rank_profile, u64 p) {
    if (!rank_profile.empty() && rank_profile.size() != m)
        throw InvalidInput("rank profile must list one rank per summand");
    const PrimeField F(p);
    auto rng = gen_rng(seed, 0x70656e63);
    std::uniform_int_distribution<u64> small(0, 4);
    MatrixPencil P;
    for (std::size_t t = 0; t < m; ++t) {
        const std::size_t r = rank_profile.empty() ? 1 : std::min(rank_profile[t], n);
        DenseMatrix M(n, n);
        for (std::size_t k = 0; k < r; ++k) {
            std::vector<u64> u(n), v(n);
            for (auto& x : u) x = small(rng);
            for (auto& x : v) x = small(rng);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    M.at(i, j) = F.add(M.at(i, j), F.mul(F.reduce(u[i]), F.reduce(v[j])));
        }
        P.mats.push_back(std::move(M));
    }
    return P;
}

Graph named_graph(const std::string& name) {
    auto cycle = [](std::size_t n) {
        std::vector<std::pair<int, int>> e;
        for (std::size_t i = 0; i < n; ++i)
            e.emplace_back(static_cast<int>(i), static_cast<int>((i + 1) % n));
        return Graph(n, std::move(e));
    };
    auto complete = [](std::size_t n) {
        std::vector<std::pair<int, int>> e;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                e.emplace_back(static_cast<int>(u), static_cast<int>(v));
        return Graph(n, std::move(e));
    };
    if (name == "P3") return Graph(3, {{0, 1}, {1, 2}});
    if (name == "C3") return cycle(3);
    if (name == "C4") return cycle(4);
    if (name == "C5") return cycle(5);
    if (name == "C6") return cycle(6);
    if (name == "C7") return cycle(7);
    if (name == "K4") return complete(4);
    if (name == "K5") return complete(5);
    if (name == "Petersen") {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < 5; ++i) {
            e.emplace_back(i, (i + 1) % 5);              // outer cycle
            e.emplace_back(i, i + 5);                    // spokes
            e.emplace_back(i + 5, (i + 2) % 5 + 5);      // inner pentagram
        }
        return Graph(10, std::move(e));
    }
    throw InvalidInput("unknown named graph: " + name);
}

std::vector<std::string> named_graph_list() {
    return {"P3", "C3", "C4", "C5", "C6", "C7", "K4", "K5", "Petersen"};
}

// ---- reports ----

void summarize_tape(RunReport& rep, const CatalyticTape& tape) {
    rep.tape_touched = true;
    for (const auto& rec : tape.journal()) {
        ++rep.events_by_case[case_tag_name(rec.tag)];
        rep.bits_saved += rec.saved_bits();
    }
    rep.restoration_verdict = tape.verify_restored();
}

std::string report_to_json(const RunReport& rep) {
    nlohmann::json j;
    j["instance"] = rep.instance;
    j["algorithm"] = rep.algorithm;
    j["result"] = rep.result;
    if (!rep.oracle.empty()) j["oracle"] = rep.oracle;
    j["journal"] = {{"events_by_case", rep.events_by_case}, {"bits_saved", rep.bits_saved}};
    if (rep.tape_touched) j["restoration_verdict"] = rep.restoration_verdict;
    j["wall_ms"] = rep.wall_ms;
    return j.dump();
}

void append_report(const std::string& path, const RunReport& rep) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw InvalidInput("cannot open report sidecar: " + path);
    out << report_to_json(rep) << '\n';
}

void print_report(std::ostream& out, const RunReport& rep) {
    out << rep.algorithm << ' ' << rep.instance << ": " << rep.result;
    if (!rep.oracle.empty()) out << " (oracle " << rep.oracle << ')';
    if (rep.tape_touched)
        out << " [restored=" << (rep.restoration_verdict ? "yes" : "NO")
            << " saved_bits=" << rep.bits_saved << ']';
    out << '\n';
}

} // namespace cm
