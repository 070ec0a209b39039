#pragma once

#include <iosfwd>
#include <string>

#include "catamatch/edmonds.hpp"
#include "catamatch/graph.hpp"
#include "catamatch/mixedrank.hpp"

namespace cm {

/// Graph text format: first line "n m", then m lines "u v" with 1-based
/// vertex labels.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

/// Matrix text format: first line "r c p", then r lines of c entries; an
/// entry is a residue or '?' for an indeterminate.
struct MixedFile {
    MixedMatrix matrix;
    u64 p = 0;
};
MixedFile read_mixed(std::istream& in);
MixedFile read_mixed_file(const std::string& path);
void write_mixed(std::ostream& out, const MixedMatrix& m, u64 p);

/// Fully constant matrix from the same format; InvalidInput on any '?'.
struct DenseFile {
    DenseMatrix matrix;
    u64 p = 0;
};
DenseFile read_dense(std::istream& in);
DenseFile read_dense_file(const std::string& path);
void write_dense(std::ostream& out, const DenseMatrix& m, u64 p);

/// Pencil text format: first line "m n p", then m stacked n x n blocks.
struct PencilFile {
    MatrixPencil pencil;
    u64 p = 0;
};
PencilFile read_pencil(std::istream& in);
PencilFile read_pencil_file(const std::string& path);
void write_pencil(std::ostream& out, const MatrixPencil& pencil, u64 p);

} // namespace cm
