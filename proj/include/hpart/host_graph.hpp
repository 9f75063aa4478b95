#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hpart/small_graph.hpp"

namespace hpart {

struct HostEdge {
    int u;  // u < v
    int v;
    friend bool operator==(const HostEdge&, const HostEdge&) = default;
};

/// The pattern graph H: vertices 0..n-1, edges kept sorted lexicographically so that
/// edge indices are stable and serializations are deterministic.
class HostGraph {
public:
    HostGraph() = default;
    HostGraph(int n, std::vector<std::pair<int, int>> edges);

    int order() const { return n_; }
    const std::vector<HostEdge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool adjacent(int u, int v) const;
    // Index into edges() for the unordered pair, or -1.
    int edge_index(int u, int v) const;
    int degree(int v) const;
    bool connected() const;

    SmallGraph as_small_graph() const;

    // All vertex permutations preserving adjacency; perm[x] is the image of x.
    std::vector<std::vector<int>> automorphisms() const;

    friend bool operator==(const HostGraph& a, const HostGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<HostEdge> edges_;
    std::vector<std::vector<int>> index_;  // n x n, -1 when absent
};

HostGraph complete_host(int n);
HostGraph path_host(int n);
HostGraph cycle_host(int n);
HostGraph star_host(int n);       // K_{1,n-1}, centre 0
HostGraph ladder_host(int n);     // K_2 x P_{n/2}, n even
HostGraph hypercube_host(int d);  // vertices are bit vectors
HostGraph k4_minus_p3_host();     // triangle {1,2,3} plus pendant edge 0-1
HostGraph remove_host_edges(const HostGraph& h, const std::vector<std::pair<int, int>>& drop);

// Builtin names: K3..K8, K<r>-e (missing edge 0-1), K4-P3, C4..C8, P2..P8, star:r,
// ladder:r, Q2..Q4. Throws std::invalid_argument for unknown names.
HostGraph builtin_host(const std::string& name);

}  // namespace hpart
