#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "catamatch/edmonds.hpp"
#include "catamatch/errors.hpp"
#include "catamatch/harness.hpp"
#include "catamatch/io.hpp"
#include "catamatch/mixedrank.hpp"
#include "catamatch/pmsearch.hpp"
#include "catamatch/tutte.hpp"

using namespace cm;

namespace {

struct Cli {
    RunParams rp;
    std::string report_path;
    bool prime_given = false;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const Cli& cli, RunReport rep, std::chrono::steady_clock::time_point t0) {
    rep.wall_ms = ms_since(t0);
    print_report(std::cout, rep);
    if (!cli.report_path.empty()) append_report(cli.report_path, rep);
}

template <typename T>
std::string set_str(const std::vector<T>& v, int shift = 0) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i] + shift;
    }
    os << '}';
    return os.str();
}

u64 effective_prime(const Cli& cli, u64 file_p) {
    if (cli.prime_given || file_p == 0) return cli.rp.prime;
    return file_p;
}

std::string matching_edges_str(const Graph& g, const std::vector<std::size_t>& idx) {
    std::ostringstream os;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const auto [u, v] = g.edge(idx[i]);
        if (i) os << ' ';
        os << u + 1 << '-' << v + 1;
    }
    return os.str();
}

int run_matching_size(const Cli& cli, const std::string& path, bool as_trank) {
    const auto t0 = std::chrono::steady_clock::now();
    const Graph g = read_graph_file(path);
    const Runtime rt(cli.rp);
    RunReport rep;
    rep.instance = path;
    rep.algorithm = as_trank ? "trank" : "matching-size";
    if (g.edge_count() == 0) {
        const MatchingSizeResult res = matching_size(rt, g);
        rep.result = as_trank ? "rank=0" : "nu=0 D=" + set_str(res.D, 1);
        rep.tape_touched = true;
        rep.restoration_verdict = true;
        emit(cli, rep, t0);
        return 0;
    }
    const u64 s = rt.value_set_size(tutte_desk_s(g), tutte_paper_s(g));
    const FieldSpec spec(cli.rp.prime, s);
    const std::size_t n = g.vertex_count();
    const std::size_t N = rt.block_count(std::max<std::size_t>(n, 1), n * n * n);
    CatalyticTape tape = rt.make_tape(1, g.edge_count(), N, spec);
    const MatchingSizeResult res = matching_size_on_tape(rt, g, tape, s);
    std::ostringstream os;
    if (as_trank)
        os << "rank=" << 2 * res.nu << " assignment=" << set_str(res.assignment);
    else
        os << "nu=" << res.nu << " D=" << set_str(res.D, 1);
    if (res.used_fallback) os << " fallback";
    rep.result = os.str();
    summarize_tape(rep, tape);
    emit(cli, rep, t0);
    return 0;
}

int run_gallai_edmonds(const Cli& cli, const std::string& path) {
    const auto t0 = std::chrono::steady_clock::now();
    const Graph g = read_graph_file(path);
    const Runtime rt(cli.rp);
    const GallaiEdmondsResult ge = gallai_edmonds(rt, g);
    RunReport rep;
    rep.instance = path;
    rep.algorithm = "gallai-edmonds";
    std::ostringstream os;
    os << "D=" << set_str(ge.D, 1) << " A=" << set_str(ge.A, 1) << " C=" << set_str(ge.C, 1)
       << " nu=" << ge.nu;
    rep.result = os.str();
    rep.tape_touched = true;
    rep.restoration_verdict = cli.rp.check_restore;  // enforced inside when on
    emit(cli, rep, t0);
    return 0;
}

int run_matching(const Cli& cli, const std::string& path) {
    const auto t0 = std::chrono::steady_clock::now();
    const Graph g = read_graph_file(path);
    const Runtime rt(cli.rp);
    const MaximumMatchingResult res = maximum_matching(rt, g);
    RunReport rep;
    rep.instance = path;
    rep.algorithm = "matching";
    rep.result = "nu=" + std::to_string(res.nu) + " M=[" + matching_edges_str(g, res.edges) + "]";
    rep.tape_touched = true;
    rep.restoration_verdict = cli.rp.check_restore;
    emit(cli, rep, t0);
    return 0;
}

int run_pm(const Cli& cli, const std::string& path) {
    const auto t0 = std::chrono::steady_clock::now();
    const Graph g = read_graph_file(path);
    const Runtime rt(cli.rp);
    const PerfectMatchingResult res = perfect_matching(rt, g);
    RunReport rep;
    rep.instance = path;
    rep.algorithm = "pm";
    std::ostringstream os;
    os << "M=[" << matching_edges_str(g, res.edges) << "]";
    if (res.used_fallback)
        os << " fallback";
    else
        os << " weight=" << res.weight;
    rep.result = os.str();
    rep.tape_touched = true;
    rep.restoration_verdict = res.tape_verified;
    if (res.compressions) rep.events_by_case[case_tag_name(CaseTag::PmEdge)] = res.compressions;
    rep.bits_saved = res.freed_bits;
    emit(cli, rep, t0);
    return 0;
}

int run_mixed_rank(const Cli& cli, const std::string& path) {
    const auto t0 = std::chrono::steady_clock::now();
    const MixedFile f = read_mixed_file(path);
    Cli c2 = cli;
    c2.rp.prime = effective_prime(cli, f.p);
    const Runtime rt(c2.rp);
    RunReport rep;
    rep.instance = path;
    rep.algorithm = "mixed-rank";
    if (f.matrix.var_count() == 0) {
        const MixedRankResult res = mixed_max_rank(rt, f.matrix);
        rep.result = "rank=" + std::to_string(res.rank);
        rep.tape_touched = true;
        rep.restoration_verdict = true;
        emit(c2, rep, t0);
        return 0;
    }
    const u64 s = rt.value_set_size(mixed_desk_s(f.matrix), mixed_paper_s(f.matrix));
    const FieldSpec spec(c2.rp.prime, s);
    const std::size_t L = f.matrix.lines();
    const std::size_t N = rt.block_count(std::max<std::size_t>(L, 1), L * L * L);
    CatalyticTape tape = rt.make_tape(3, f.matrix.var_count(), N, spec);
    const MixedRankResult res = mixed_max_rank_on_tape(rt, f.matrix, tape, s);
    std::ostringstream os;
    os << "rank=" << res.rank << " assignment=" << set_str(res.assignment);
    if (res.used_fallback) os << " fallback";
    rep.result = os.str();
    summarize_tape(rep, tape);
    emit(c2, rep, t0);
    return 0;
}

int run_matroid_intersect(const Cli& cli, const std::string& p1, const std::string& p2) {
    const auto t0 = std::chrono::steady_clock::now();
    const DenseFile f1 = read_dense_file(p1);
    const DenseFile f2 = read_dense_file(p2);
    Cli c2 = cli;
    c2.rp.prime = effective_prime(cli, f1.p);
    const Runtime rt(c2.rp);
    const std::size_t size = matroid_intersection_size(rt, f1.matrix, f2.matrix);
    RunReport rep;
    rep.instance = p1 + "," + p2;
    rep.algorithm = "matroid-intersect";
    rep.result = "size=" + std::to_string(size);
    rep.tape_touched = true;
    rep.restoration_verdict = c2.rp.check_restore;
    emit(c2, rep, t0);
    return 0;
}

ApproxParams cli_params(const Runtime& rt, double eps, std::size_t n, long l_ov, long c_ov,
                        bool unsafe) {
    ApproxParams params = approx_params(rt, eps, n);
    if (l_ov >= 0 || c_ov >= 0) {
        if (!unsafe)
            throw InvalidInput("overriding the derived tuple length or exponent requires --unsafe");
        if (l_ov >= 0) params.l = static_cast<std::size_t>(l_ov);
        if (c_ov >= 0) params.c = static_cast<std::size_t>(c_ov);
        u64 paper = 1;
        for (std::size_t i = 0; i < params.c; ++i) paper *= std::max<u64>(n, 2);
        params.s = rt.value_set_size(std::max<u64>(64, 4 * n), paper);
    }
    return params;
}

int run_edmonds(const Cli& cli, const std::string& path, double eps, long l_ov, long c_ov) {
    const auto t0 = std::chrono::steady_clock::now();
    const PencilFile f = read_pencil_file(path);
    Cli c2 = cli;
    c2.rp.prime = effective_prime(cli, f.p);
    const Runtime rt(c2.rp);
    f.pencil.validate();
    RunReport rep;
    rep.instance = path;
    rep.algorithm = "edmonds-approx";
    const std::size_t n = f.pencil.dim();
    const ApproxParams params = cli_params(rt, eps, n, l_ov, c_ov, c2.rp.unsafe);
    if (f.pencil.size() == 0) {
        rep.result = "rank=0";
        rep.tape_touched = true;
        rep.restoration_verdict = true;
        emit(c2, rep, t0);
        return 0;
    }
    const FieldSpec spec(c2.rp.prime, params.s);
    const std::size_t N = rt.block_count(std::max<std::size_t>(n, 1), n * n * n);
    CatalyticTape tape = rt.make_tape(17, f.pencil.size(), N, spec);
    const ApproxRankResult res = pencil_approx_rank_on_tape(rt, f.pencil, tape, params);
    std::ostringstream os;
    os << "rank=" << res.rank << " l=" << params.l << " c=" << params.c << " s=" << params.s;
    if (res.used_fallback) os << " fallback";
    rep.result = os.str();
    summarize_tape(rep, tape);
    emit(c2, rep, t0);
    return 0;
}

int run_matroid_matching(const Cli& cli, const std::string& repr, const std::string& gpath,
                         double eps) {
    const auto t0 = std::chrono::steady_clock::now();
    const DenseFile f = read_dense_file(repr);
    const Graph g = read_graph_file(gpath);
    Cli c2 = cli;
    c2.rp.prime = effective_prime(cli, f.p);
    const Runtime rt(c2.rp);
    const std::size_t size = matroid_matching_approx(rt, f.matrix, g, eps);
    RunReport rep;
    rep.instance = repr + "," + gpath;
    rep.algorithm = "matroid-matching";
    rep.result = "size=" + std::to_string(size) + " epsilon=" + std::to_string(eps);
    rep.tape_touched = true;
    rep.restoration_verdict = c2.rp.check_restore;
    emit(c2, rep, t0);
    return 0;
}

int run_gen(const Cli& cli, const std::string& kind, std::size_t n, std::size_t r,
            std::size_t c, std::size_t m, std::size_t r1, std::size_t r2, double prob,
            double density, const std::vector<std::size_t>& ranks) {
    const u64 seed = cli.rp.seed;
    const u64 p = cli.rp.prime;
    if (kind == "random-graph") {
        write_graph(std::cout, gen_random_graph(seed, n, prob));
    } else if (kind == "pm-graph") {
        write_graph(std::cout, gen_pm_graph(seed, n, prob));
    } else if (kind == "mixed") {
        write_mixed(std::cout, gen_mixed(seed, r, c, density, p), p);
    } else if (kind == "matroid-pair") {
        const auto [a1, a2] = gen_matroid_pair(seed, r1, r2, n, p);
        write_dense(std::cout, a1, p);
        write_dense(std::cout, a2, p);
    } else if (kind == "pencil") {
        write_pencil(std::cout, gen_pencil(seed, m, n, ranks, p), p);
    } else {
        throw InvalidInput("unknown generator kind: " + kind);
    }
    return 0;
}

int run_verify_all(const Cli& cli) {
    const Runtime rt(cli.rp);
    const PrimeField F(cli.rp.prime);
    std::size_t failures = 0;
    auto check = [&](const std::string& id, const std::string& algo, const std::string& got,
                     const std::string& want, std::chrono::steady_clock::time_point t0) {
        RunReport rep;
        rep.instance = id;
        rep.algorithm = algo;
        rep.result = got;
        rep.oracle = want;
        rep.tape_touched = true;
        rep.restoration_verdict = cli.rp.check_restore;
        rep.wall_ms = ms_since(t0);
        const bool ok = got == want;
        if (!ok) ++failures;
        std::cout << (ok ? "ok   " : "FAIL ");
        print_report(std::cout, rep);
        if (!cli.report_path.empty()) append_report(cli.report_path, rep);
    };

    for (const auto& name : named_graph_list()) {
        const Graph g = named_graph(name);
        const auto t0 = std::chrono::steady_clock::now();
        check(name, "matching-size", std::to_string(matching_size(rt, g).nu),
              std::to_string(oracle_max_matching(g)), t0);
    }
    for (u64 seed = 1; seed <= 20; ++seed) {
        const std::size_t n = 4 + static_cast<std::size_t>(seed % 5);
        const Graph g = gen_random_graph(seed, n, 0.5);
        const auto t0 = std::chrono::steady_clock::now();
        const MaximumMatchingResult res = maximum_matching(rt, g);
        check("random-graph(" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")",
              "matching", std::to_string(res.nu), std::to_string(oracle_max_matching(g)), t0);
    }
    for (u64 seed = 1; seed <= 10; ++seed) {
        const MixedMatrix M = gen_mixed(seed, 5, 5, 0.4, cli.rp.prime);
        const auto t0 = std::chrono::steady_clock::now();
        const MixedRankResult res = mixed_max_rank(rt, M);
        const u64 s = rt.value_set_size(mixed_desk_s(M), mixed_paper_s(M));
        DenseMatrix g99 = evaluate(F, M, geelen99_greedy(F, M, s));
        check("mixed(5x5,seed=" + std::to_string(seed) + ")", "mixed-rank",
              std::to_string(res.rank), std::to_string(rank_of(F, g99)), t0);
    }
    for (u64 seed = 1; seed <= 10; ++seed) {
        const auto [a1, a2] = gen_matroid_pair(seed, 3, 3, 6, cli.rp.prime);
        const auto t0 = std::chrono::steady_clock::now();
        check("matroid-pair(3,3,6,seed=" + std::to_string(seed) + ")", "matroid-intersect",
              std::to_string(matroid_intersection_size(rt, a1, a2)),
              std::to_string(oracle_matroid_intersection(F, a1, a2)), t0);
    }
    for (u64 seed = 1; seed <= 10; ++seed) {
        const MatrixPencil P = gen_pencil(seed, 3, 4, {}, cli.rp.prime);
        const auto t0 = std::chrono::steady_clock::now();
        const ApproxRankResult res = pencil_approx_rank(rt, P, 0.5);
        const std::size_t r_oracle =
            oracle_symbolic_rank(F, P, 30, res.params.s, mix_seed(cli.rp.seed, 99 + seed));
        const bool ok = res.rank >= (r_oracle + 1) / 2;
        check("pencil(3,4,seed=" + std::to_string(seed) + ")", "edmonds-approx",
              ok ? "bound met" : "rank=" + std::to_string(res.rank) + "<ceil(r*/2), r*=" +
                                     std::to_string(r_oracle),
              "bound met", t0);
    }

    std::cout << (failures ? "verify-all: FAILURES: " : "verify-all: all checks passed (")
              << (failures ? std::to_string(failures) : std::to_string(0)) << (failures ? "" : " failures)")
              << '\n';
    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"catalytic maximum matching, mixed-matrix completion, matroid intersection"};
    app.require_subcommand(1);

    Cli cli;
    auto* prime_opt = app.add_option("--prime", cli.rp.prime, "field modulus (prime)");
    u64 vss = 0;
    auto* vss_opt = app.add_option("--value-set-size", vss, "substitution value set size s");
    std::size_t blocks = 0;
    auto* blocks_opt = app.add_option("--blocks", blocks, "tape block count N");
    app.add_option("--tape-seed", cli.rp.tape_seed, "seed for the simulated catalytic tape");
    std::string tape_file;
    auto* tf_opt = app.add_option("--tape-file", tape_file, "file supplying the tape bits");
    app.add_flag("--paper-params", cli.rp.paper_params, "use the analysis-scale parameters");
    app.add_option("--report", cli.report_path, "append JSON run reports to this file");
    app.add_option("--seed", cli.rp.seed, "generator / randomized-oracle seed");
    u64 wmax = 0;
    auto* wmax_opt = app.add_option("--w-max", wmax, "weight bound for the matching search");
    bool no_check = false;
    app.add_flag("--no-check-restore", no_check, "skip the bit-exact restoration check");
    app.add_flag("--unsafe", cli.rp.unsafe, "permit overriding safety-critical derived parameters");

    std::string gpath, path2;
    auto* c_msize = app.add_subcommand("matching-size", "maximum matching size nu(G)");
    c_msize->add_option("graph", gpath, "graph file")->required();
    auto* c_match = app.add_subcommand("matching", "a maximum matching");
    c_match->add_option("graph", gpath, "graph file")->required();
    auto* c_pm = app.add_subcommand("pm", "a perfect matching");
    c_pm->add_option("graph", gpath, "graph file")->required();
    auto* c_ge = app.add_subcommand("gallai-edmonds", "Gallai-Edmonds decomposition");
    c_ge->add_option("graph", gpath, "graph file")->required();
    auto* c_trank = app.add_subcommand("trank", "generic Tutte matrix rank and assignment");
    c_trank->add_option("graph", gpath, "graph file")->required();
    auto* c_mixed = app.add_subcommand("mixed-rank", "maximum rank of a mixed matrix");
    c_mixed->add_option("matrix", gpath, "matrix file ('?' marks indeterminates)")->required();
    auto* c_mi = app.add_subcommand("matroid-intersect", "linear matroid intersection size");
    c_mi->add_option("A1", gpath, "first representation")->required();
    c_mi->add_option("A2", path2, "second representation")->required();

    double eps = 0.5;
    long l_ov = -1, c_ov = -1;
    auto* c_ed = app.add_subcommand("edmonds-approx", "(1-eps)-approximate pencil rank");
    c_ed->add_option("pencil", gpath, "pencil file")->required();
    c_ed->add_option("--epsilon", eps, "approximation parameter in (0,1)");
    c_ed->add_option("--tuple-length", l_ov, "override the derived l (requires --unsafe)");
    c_ed->add_option("--exponent", c_ov, "override the derived c (requires --unsafe)");
    auto* c_mm = app.add_subcommand("matroid-matching", "(1-eps)-approximate independent matching");
    c_mm->add_option("repr", gpath, "matroid representation")->required();
    c_mm->add_option("graph", path2, "graph file")->required();
    c_mm->add_option("--epsilon", eps, "approximation parameter in (0,1)");

    auto* c_verify = app.add_subcommand("verify-all", "oracle/algorithm agreement on the corpus");

    std::string kind;
    std::size_t gn = 6, gr = 4, gc = 4, gm = 3, gr1 = 3, gr2 = 3;
    double gprob = 0.5, gdens = 0.4;
    std::vector<std::size_t> granks;
    auto* c_gen = app.add_subcommand("gen", "deterministic instance generator (stdout)");
    c_gen->add_option("kind", kind, "random-graph|pm-graph|mixed|matroid-pair|pencil")->required();
    c_gen->add_option("--n", gn, "vertices / ground set / pencil dimension");
    c_gen->add_option("--r", gr, "mixed matrix rows");
    c_gen->add_option("--c", gc, "mixed matrix columns");
    c_gen->add_option("--m", gm, "pencil size");
    c_gen->add_option("--r1", gr1, "first representation rows");
    c_gen->add_option("--r2", gr2, "second representation rows");
    c_gen->add_option("--edge-prob", gprob, "edge probability");
    c_gen->add_option("--density", gdens, "indeterminate density");
    c_gen->add_option("--ranks", granks, "pencil rank profile");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough(true);

    CLI11_PARSE(app, argc, argv);

    if (*vss_opt) cli.rp.value_set_size = vss;
    if (*blocks_opt) cli.rp.blocks = blocks;
    if (*wmax_opt) cli.rp.w_max = wmax;
    if (*tf_opt) cli.rp.tape_file = tape_file;
    cli.rp.check_restore = !no_check;
    cli.prime_given = static_cast<bool>(*prime_opt);

    try {
        if (*c_msize) return run_matching_size(cli, gpath, false);
        if (*c_trank) return run_matching_size(cli, gpath, true);
        if (*c_match) return run_matching(cli, gpath);
        if (*c_pm) return run_pm(cli, gpath);
        if (*c_ge) return run_gallai_edmonds(cli, gpath);
        if (*c_mixed) return run_mixed_rank(cli, gpath);
        if (*c_mi) return run_matroid_intersect(cli, gpath, path2);
        if (*c_ed) return run_edmonds(cli, gpath, eps, l_ov, c_ov);
        if (*c_mm) return run_matroid_matching(cli, gpath, path2, eps);
        if (*c_verify) return run_verify_all(cli);
        if (*c_gen) return run_gen(cli, kind, gn, gr, gc, gm, gr1, gr2, gprob, gdens, granks);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
