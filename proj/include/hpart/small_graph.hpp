#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace hpart {

/// Simple undirected graph on at most 64 vertices, one adjacency bit row per vertex.
class SmallGraph {
public:
    static constexpr int max_order = 64;

    SmallGraph() = default;
    explicit SmallGraph(int order);

    int order() const { return order_; }
    std::uint64_t vertex_mask() const;

    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    bool has_edge(int u, int v) const { return (rows_[u] >> v) & 1U; }

    std::uint64_t neighbours(int v) const { return rows_[v]; }
    int degree(int v) const { return std::popcount(rows_[v]); }
    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const;

    friend bool operator==(const SmallGraph&, const SmallGraph&) = default;

private:
    int order_ = 0;
    std::array<std::uint64_t, max_order> rows_{};
};

SmallGraph disjoint_union(const SmallGraph& a, const SmallGraph& b);
SmallGraph complete_graph(int n);
SmallGraph path_graph(int n);
SmallGraph cycle_graph(int n);
SmallGraph star_graph(int n);

// Connected components as vertex masks, ordered by smallest vertex.
std::vector<std::uint64_t> components(const SmallGraph& g);
int largest_component_order(const SmallGraph& g);
bool is_connected(const SmallGraph& g);
bool is_tree(const SmallGraph& g);
bool is_bipartite(const SmallGraph& g);

// Cycle through every vertex. Graphs on fewer than three vertices have none.
bool has_hamilton_cycle(const SmallGraph& g);

// Non-induced subgraph containment: some injection of pattern vertices maps every
// pattern edge onto a graph edge.
bool contains_subgraph(const SmallGraph& graph, const SmallGraph& pattern);

}  // namespace hpart
