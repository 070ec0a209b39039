#include "catamatch/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "catamatch/errors.hpp"

namespace cm {

static std::string next_token(std::istream& in, const char* what) {
    std::string tok;
    if (!(in >> tok)) throw InvalidInput(std::string("unexpected end of input, expected ") + what);
    return tok;
}

static u64 next_u64(std::istream& in, const char* what) {
    const std::string tok = next_token(in, what);
    try {
        std::size_t pos = 0;
        const u64 v = std::stoull(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw InvalidInput(std::string("bad ") + what + ": '" + tok + "'");
    }
}

Graph read_graph(std::istream& in) {
    const u64 n = next_u64(in, "vertex count");
    const u64 m = next_u64(in, "edge count");
    std::vector<std::pair<int, int>> edges;
    for (u64 i = 0; i < m; ++i) {
        const u64 u = next_u64(in, "edge endpoint");
        const u64 v = next_u64(in, "edge endpoint");
        if (u < 1 || u > n || v < 1 || v > n)
            throw InvalidInput("edge endpoint out of range (labels are 1-based)");
        edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    }
    return Graph(static_cast<std::size_t>(n), std::move(edges));
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

MixedFile read_mixed(std::istream& in) {
    const u64 r = next_u64(in, "row count");
    const u64 c = next_u64(in, "column count");
    const u64 p = next_u64(in, "prime");
    MixedFile f{MixedMatrix(static_cast<std::size_t>(r), static_cast<std::size_t>(c)), p};
    for (u64 i = 0; i < r; ++i)
        for (u64 j = 0; j < c; ++j) {
            const std::string tok = next_token(in, "matrix entry");
            if (tok == "?")
                f.matrix.set_var(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            else {
                std::istringstream one(tok);
                f.matrix.set_const(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                                   next_u64(one, "matrix entry") % (p ? p : 1));
            }
        }
    return f;
}

void write_mixed(std::ostream& out, const MixedMatrix& m, u64 p) {
    out << m.rows() << ' ' << m.cols() << ' ' << p << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            if (m.is_var(i, j))
                out << '?';
            else
                out << m.const_at(i, j);
        }
        out << '\n';
    }
}

DenseFile read_dense(std::istream& in) {
    MixedFile f = read_mixed(in);
    if (f.matrix.var_count() != 0)
        throw InvalidInput("matrix must be fully constant (no '?' entries) here");
    DenseMatrix d(f.matrix.rows(), f.matrix.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(i, j) = f.matrix.const_at(i, j);
    return {std::move(d), f.p};
}

void write_dense(std::ostream& out, const DenseMatrix& m, u64 p) {
    out << m.rows() << ' ' << m.cols() << ' ' << p << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m.at(i, j);
        }
        out << '\n';
    }
}

PencilFile read_pencil(std::istream& in) {
    const u64 m = next_u64(in, "pencil size");
    const u64 n = next_u64(in, "pencil dimension");
    const u64 p = next_u64(in, "prime");
    PencilFile f;
    f.p = p;
    for (u64 t = 0; t < m; ++t) {
        DenseMatrix M(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (u64 i = 0; i < n; ++i)
            for (u64 j = 0; j < n; ++j)
                M.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    next_u64(in, "pencil entry") % (p ? p : 1);
        f.pencil.mats.push_back(std::move(M));
    }
    return f;
}

void write_pencil(std::ostream& out, const MatrixPencil& pencil, u64 p) {
    out << pencil.size() << ' ' << pencil.dim() << ' ' << p << '\n';
    for (const auto& M : pencil.mats) {
        for (std::size_t i = 0; i < M.rows(); ++i) {
            for (std::size_t j = 0; j < M.cols(); ++j) {
                if (j) out << ' ';
                out << M.at(i, j);
            }
            out << '\n';
        }
    }
}

template <typename T>
static T read_file_as(const std::string& path, T (*reader)(std::istream&)) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    return reader(in);
}

Graph read_graph_file(const std::string& path) { return read_file_as(path, read_graph); }
MixedFile read_mixed_file(const std::string& path) { return read_file_as(path, read_mixed); }
DenseFile read_dense_file(const std::string& path) { return read_file_as(path, read_dense); }
PencilFile read_pencil_file(const std::string& path) { return read_file_as(path, read_pencil); }

} // namespace cm
