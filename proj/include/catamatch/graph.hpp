#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "catamatch/errors.hpp"

namespace cm {

/// Simple undirected graph. Vertices are 0..n-1 internally (files use 1..n);
/// edges are kept in canonical sorted order (u < v, lexicographic), so edge
/// indices are stable across a run.
class Graph {
public:
    Graph() : n_(0) {}
    /// Throws InvalidInput on loops, duplicate edges or out-of-range vertices.
    Graph(std::size_t n, std::vector<std::pair<int, int>> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
    std::pair<int, int> edge(std::size_t i) const { return edges_[i]; }

    bool has_edge(int u, int v) const;
    std::optional<std::size_t> edge_index(int u, int v) const;
    const std::vector<int>& neighbors(int u) const { return adj_[static_cast<std::size_t>(u)]; }

    /// Induced subgraph on the given vertices (any order; deduplicated and
    /// sorted). Vertex i of the result corresponds to verts_sorted[i].
    Graph induced(std::vector<int> verts) const;

    /// Connected components of this graph, each a sorted vertex list.
    std::vector<std::vector<int>> components() const;

private:
    std::size_t n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

} // namespace cm
