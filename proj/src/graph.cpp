#include "catamatch/graph.hpp"

#include <algorithm>
#include <set>

namespace cm {

Graph::Graph(std::size_t n, std::vector<std::pair<int, int>> edges)
    : n_(n), adj_(n) {
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges) {
        if (u > v) std::swap(u, v);
        if (u == v) throw InvalidInput("graph: loop edge");
        if (u < 0 || static_cast<std::size_t>(v) >= n) throw InvalidInput("graph: vertex out of range");
        if (!seen.insert({u, v}).second) throw InvalidInput("graph: duplicate edge");
    }
    edges_.assign(seen.begin(), seen.end());
    for (const auto& [u, v] : edges_) {
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int u, int v) const { return edge_index(u, v).has_value(); }

std::optional<std::size_t> Graph::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
    if (it != edges_.end() && *it == std::make_pair(u, v))
        return static_cast<std::size_t>(it - edges_.begin());
    return std::nullopt;
}

Graph Graph::induced(std::vector<int> verts) const {
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<int> pos(n_, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) pos[static_cast<std::size_t>(verts[i])] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (const auto& [u, v] : edges_)
        if (pos[static_cast<std::size_t>(u)] >= 0 && pos[static_cast<std::size_t>(v)] >= 0)
            es.emplace_back(pos[static_cast<std::size_t>(u)], pos[static_cast<std::size_t>(v)]);
    return Graph(verts.size(), std::move(es));
}

std::vector<std::vector<int>> Graph::components() const {
    std::vector<int> comp(n_, -1);
    int next = 0;
    for (std::size_t start = 0; start < n_; ++start) {
        if (comp[start] >= 0) continue;
        std::vector<int> stack{static_cast<int>(start)};
        comp[start] = next;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj_[static_cast<std::size_t>(u)]) {
                if (comp[static_cast<std::size_t>(v)] < 0) {
                    comp[static_cast<std::size_t>(v)] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    std::vector<std::vector<int>> out(static_cast<std::size_t>(next));
    for (std::size_t v = 0; v < n_; ++v) out[static_cast<std::size_t>(comp[v])].push_back(static_cast<int>(v));
    return out;
}

} // namespace cm
