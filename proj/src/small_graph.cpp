#include "hpart/small_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace hpart {

SmallGraph::SmallGraph(int order) : order_(order) {
    if (order < 0 || order > max_order) {
        throw std::invalid_argument("SmallGraph order must lie in [0, 64]");
    }
}

std::uint64_t SmallGraph::vertex_mask() const {
    return order_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << order_) - 1);
}

void SmallGraph::add_edge(int u, int v) {
    if (u == v || u < 0 || v < 0 || u >= order_ || v >= order_) {
        throw std::invalid_argument("SmallGraph edge out of range or a loop");
    }
    rows_[u] |= std::uint64_t{1} << v;
    rows_[v] |= std::uint64_t{1} << u;
}

void SmallGraph::remove_edge(int u, int v) {
    rows_[u] &= ~(std::uint64_t{1} << v);
    rows_[v] &= ~(std::uint64_t{1} << u);
}

int SmallGraph::edge_count() const {
    int twice = 0;
    for (int v = 0; v < order_; ++v) twice += degree(v);
    return twice / 2;
}

std::vector<std::pair<int, int>> SmallGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < order_; ++u) {
        std::uint64_t higher = rows_[u] & ~((std::uint64_t{2} << u) - 1);
        while (higher) {
            int v = std::countr_zero(higher);
            higher &= higher - 1;
            out.emplace_back(u, v);
        }
    }
    return out;
}

SmallGraph disjoint_union(const SmallGraph& a, const SmallGraph& b) {
    SmallGraph g(a.order() + b.order());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(a.order() + u, a.order() + v);
    return g;
}

SmallGraph complete_graph(int n) {
    SmallGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

SmallGraph path_graph(int n) {
    SmallGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

SmallGraph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    SmallGraph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

SmallGraph star_graph(int n) {
    SmallGraph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(0, v);
    return g;
}

std::vector<std::uint64_t> components(const SmallGraph& g) {
    std::vector<std::uint64_t> out;
    std::uint64_t unseen = g.vertex_mask();
    while (unseen) {
        std::uint64_t comp = unseen & (~unseen + 1);
        std::uint64_t frontier = comp;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            std::uint64_t fresh = g.neighbours(v) & ~comp;
            comp |= fresh;
            frontier |= fresh;
        }
        unseen &= ~comp;
        out.push_back(comp);
    }
    return out;
}

int largest_component_order(const SmallGraph& g) {
    int best = 0;
    for (auto c : components(g)) best = std::max(best, std::popcount(c));
    return best;
}

bool is_connected(const SmallGraph& g) {
    return g.order() <= 1 || components(g).size() == 1;
}

bool is_tree(const SmallGraph& g) {
    return g.order() >= 1 && g.edge_count() == g.order() - 1 && is_connected(g);
}

bool is_bipartite(const SmallGraph& g) {
    std::uint64_t side = 0;
    for (auto comp : components(g)) {
        std::uint64_t root = comp & (~comp + 1);
        std::uint64_t seen = root;
        std::uint64_t frontier = root;
        side |= root;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            bool v_side = (side >> v) & 1U;
            std::uint64_t nb = g.neighbours(v);
            // A neighbour already coloured like v closes an odd cycle.
            std::uint64_t same = nb & seen & (v_side ? side : ~side);
            if (same) return false;
            std::uint64_t fresh = nb & ~seen;
            if (!v_side) side |= fresh;
            seen |= fresh;
            frontier |= fresh;
        }
    }
    return true;
}

namespace {

bool extend_hamilton(const SmallGraph& g, int current, std::uint64_t visited, std::uint64_t all) {
    if (visited == all) return g.has_edge(current, 0);
    std::uint64_t options = g.neighbours(current) & ~visited;
    std::uint64_t remaining = all & ~visited;
    // Every unvisited vertex needs two usable neighbours (path so far counts only through
    // its endpoints).
    std::uint64_t scan = remaining;
    while (scan) {
        int v = std::countr_zero(scan);
        scan &= scan - 1;
        std::uint64_t usable = g.neighbours(v) & (remaining | (std::uint64_t{1} << current) | 1U);
        if (std::popcount(usable) < 2) return false;
    }
    while (options) {
        int next = std::countr_zero(options);
        options &= options - 1;
        if (extend_hamilton(g, next, visited | (std::uint64_t{1} << next), all)) return true;
    }
    return false;
}

}  // namespace

bool has_hamilton_cycle(const SmallGraph& g) {
    const int n = g.order();
    if (n < 3) return false;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) < 2) return false;
    return extend_hamilton(g, 0, 1U, g.vertex_mask());
}

namespace {

struct SubgraphSearch {
    const SmallGraph& graph;
    const SmallGraph& pattern;
    std::vector<int> order;                  // pattern vertices in assignment order
    std::vector<std::uint64_t> domain;       // per pattern vertex
    std::vector<int> image;                  // per pattern vertex, -1 unassigned

    bool assign(std::size_t depth, std::uint64_t used) {
        if (depth == order.size()) return true;
        const int p = order[depth];
        std::uint64_t candidates = domain[p] & ~used;
        std::uint64_t placed_nb = pattern.neighbours(p);
        while (placed_nb && candidates) {
            int q = std::countr_zero(placed_nb);
            placed_nb &= placed_nb - 1;
            if (image[q] >= 0) candidates &= graph.neighbours(image[q]);
        }
        while (candidates) {
            int v = std::countr_zero(candidates);
            candidates &= candidates - 1;
            image[p] = v;
            if (assign(depth + 1, used | (std::uint64_t{1} << v))) return true;
        }
        image[p] = -1;
        return false;
    }
};

}  // namespace

bool contains_subgraph(const SmallGraph& graph, const SmallGraph& pattern) {
    const int n = graph.order();
    const int k = pattern.order();
    if (k == 0) return true;
    if (k > n || pattern.edge_count() > graph.edge_count()) return false;

    std::vector<int> gdeg(n), pdeg(k);
    for (int v = 0; v < n; ++v) gdeg[v] = graph.degree(v);
    for (int v = 0; v < k; ++v) pdeg[v] = pattern.degree(v);
    {
        auto gs = gdeg, ps = pdeg;
        std::sort(gs.rbegin(), gs.rend());
        std::sort(ps.rbegin(), ps.rend());
        for (int i = 0; i < k; ++i)
            if (ps[i] > gs[i]) return false;
    }

    SubgraphSearch search{graph, pattern, {}, std::vector<std::uint64_t>(k, 0), std::vector<int>(k, -1)};
    for (int p = 0; p < k; ++p)
        for (int v = 0; v < n; ++v)
            if (gdeg[v] >= pdeg[p]) search.domain[p] |= std::uint64_t{1} << v;

    // Most-constrained first: highest degree, then most already-ordered neighbours.
    std::uint64_t ordered = 0;
    for (int step = 0; step < k; ++step) {
        int best = -1, best_links = -1;
        for (int p = 0; p < k; ++p) {
            if ((ordered >> p) & 1U) continue;
            int links = std::popcount(pattern.neighbours(p) & ordered);
            if (links > best_links || (links == best_links && pdeg[p] > pdeg[best])) {
                best = p;
                best_links = links;
            }
        }
        search.order.push_back(best);
        ordered |= std::uint64_t{1} << best;
    }
    return search.assign(0, 0);
}

}  // namespace hpart
