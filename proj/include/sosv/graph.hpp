#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

namespace sosv {

// Simple undirected graph on vertices 0..n-1, no loops.
struct Graph {
    std::size_t n = 0;
    std::set<std::pair<std::size_t, std::size_t>> edges;  // stored with first < second

    Graph() = default;
    explicit Graph(std::size_t vertices) : n(vertices) {}

    void add_edge(std::size_t a, std::size_t b);
    bool has_edge(std::size_t a, std::size_t b) const;
    std::vector<std::size_t> neighbors(std::size_t v) const;
    std::vector<std::vector<bool>> adjacency() const;

    static Graph complete(std::size_t n);
    static Graph cycle(std::size_t n);
    static Graph path(std::size_t n);
};

// Size of the largest clique (exact; branch and bound, desk-scale graphs).
std::size_t clique_number(const Graph& g);

}  // namespace sosv
