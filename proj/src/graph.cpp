#include "sosv/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace sosv {

void Graph::add_edge(std::size_t a, std::size_t b) {
    if (a == b) throw std::invalid_argument("graph loops not allowed");
    if (a >= n || b >= n) throw std::invalid_argument("vertex out of range");
    if (a > b) std::swap(a, b);
    edges.insert({a, b});
}

bool Graph::has_edge(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    return edges.count({a, b}) > 0;
}

std::vector<std::size_t> Graph::neighbors(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < n; ++u)
        if (u != v && has_edge(u, v)) out.push_back(u);
    return out;
}

std::vector<std::vector<bool>> Graph::adjacency() const {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : edges) adj[a][b] = adj[b][a] = true;
    return adj;
}

Graph Graph::complete(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph Graph::cycle(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph Graph::path(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

namespace {

void clique_search(const std::vector<std::vector<bool>>& adj, std::vector<std::size_t>& candidates,
                   std::size_t current, std::size_t& best) {
    if (current + candidates.size() <= best) return;
    if (candidates.empty()) {
        best = std::max(best, current);
        return;
    }
    while (!candidates.empty()) {
        if (current + candidates.size() <= best) return;
        std::size_t v = candidates.back();
        candidates.pop_back();
        std::vector<std::size_t> next;
        for (std::size_t u : candidates)
            if (adj[u][v]) next.push_back(u);
        clique_search(adj, next, current + 1, best);
    }
}

}  // namespace

std::size_t clique_number(const Graph& g) {
    if (g.n == 0) return 0;
    auto adj = g.adjacency();
    std::vector<std::size_t> all;
    for (std::size_t v = 0; v < g.n; ++v) all.push_back(v);
    std::size_t best = 1;
    clique_search(adj, all, 0, best);
    return best;
}

}  // namespace sosv
