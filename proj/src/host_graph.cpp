#include "hpart/host_graph.hpp"

#include <algorithm>
#include <regex>
#include <stdexcept>

namespace hpart {

HostGraph::HostGraph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), index_(static_cast<std::size_t>(std::max(n, 0)), std::vector<int>(std::max(n, 0), -1)) {
    if (n < 0 || n > SmallGraph::max_order) {
        throw std::invalid_argument("host order must lie in [0, 64], got " + std::to_string(n));
    }
    for (auto [a, b] : edges) {
        if (a == b) throw std::invalid_argument("host self-loop at vertex " + std::to_string(a));
        if (a < 0 || b < 0 || a >= n || b >= n) {
            throw std::invalid_argument("host edge (" + std::to_string(a) + "," + std::to_string(b) +
                                        ") has an endpoint outside 0.." + std::to_string(n - 1));
        }
        edges_.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const HostEdge& x, const HostEdge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        index_[edges_[i].u][edges_[i].v] = static_cast<int>(i);
        index_[edges_[i].v][edges_[i].u] = static_cast<int>(i);
    }
}

bool HostGraph::adjacent(int u, int v) const { return edge_index(u, v) >= 0; }

int HostGraph::edge_index(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
    return index_[u][v];
}

int HostGraph::degree(int v) const {
    return static_cast<int>(std::count_if(index_[v].begin(), index_[v].end(), [](int i) { return i >= 0; }));
}

bool HostGraph::connected() const { return is_connected(as_small_graph()); }

SmallGraph HostGraph::as_small_graph() const {
    SmallGraph g(n_);
    for (auto e : edges_) g.add_edge(e.u, e.v);
    return g;
}

namespace {

void extend_automorphism(const SmallGraph& g, std::vector<int>& perm, std::uint64_t used, int next,
                         std::vector<std::vector<int>>& out) {
    const int n = g.order();
    if (next == n) {
        out.push_back(perm);
        return;
    }
    for (int cand = 0; cand < n; ++cand) {
        if ((used >> cand) & 1U) continue;
        if (g.degree(cand) != g.degree(next)) continue;
        bool ok = true;
        for (int prev = 0; prev < next && ok; ++prev) {
            ok = g.has_edge(prev, next) == g.has_edge(perm[prev], cand);
        }
        if (!ok) continue;
        perm[next] = cand;
        extend_automorphism(g, perm, used | (std::uint64_t{1} << cand), next + 1, out);
    }
}

}  // namespace

std::vector<std::vector<int>> HostGraph::automorphisms() const {
    std::vector<std::vector<int>> out;
    std::vector<int> perm(n_, -1);
    extend_automorphism(as_small_graph(), perm, 0, 0, out);
    return out;
}

HostGraph complete_host(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return HostGraph(n, e);
}

HostGraph path_host(int n) {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return HostGraph(n, e);
}

HostGraph cycle_host(int n) {
    if (n < 3) throw std::invalid_argument("cycle host needs n >= 3");
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
    return HostGraph(n, e);
}

HostGraph star_host(int n) {
    if (n < 2) throw std::invalid_argument("star host needs n >= 2");
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < n; ++v) e.emplace_back(0, v);
    return HostGraph(n, e);
}

HostGraph ladder_host(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("ladder host needs an even n >= 2");
    const int half = n / 2;
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < half; ++i) {
        e.emplace_back(i, half + i);
        if (i + 1 < half) {
            e.emplace_back(i, i + 1);
            e.emplace_back(half + i, half + i + 1);
        }
    }
    return HostGraph(n, e);
}

HostGraph hypercube_host(int d) {
    if (d < 1 || d > 6) throw std::invalid_argument("hypercube dimension must lie in [1, 6]");
    const int n = 1 << d;
    std::vector<std::pair<int, int>> e;
    for (int x = 0; x < n; ++x)
        for (int b = 0; b < d; ++b)
            if (int y = x ^ (1 << b); x < y) e.emplace_back(x, y);
    return HostGraph(n, e);
}

HostGraph k4_minus_p3_host() { return HostGraph(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}}); }

HostGraph remove_host_edges(const HostGraph& h, const std::vector<std::pair<int, int>>& drop) {
    std::vector<std::pair<int, int>> keep;
    for (auto e : h.edges()) {
        bool gone = std::any_of(drop.begin(), drop.end(), [&](auto d) {
            return (d.first == e.u && d.second == e.v) || (d.first == e.v && d.second == e.u);
        });
        if (!gone) keep.emplace_back(e.u, e.v);
    }
    return HostGraph(h.order(), keep);
}

HostGraph builtin_host(const std::string& name) {
    static const std::regex complete(R"(K(\d+))"), minus_edge(R"(K(\d+)-e)"), cycle(R"(C(\d+))"),
        path(R"(P(\d+))"), cube(R"(Q(\d+))"), star(R"(star:(\d+))"), ladder(R"(ladder:(\d+))");
    std::smatch m;
    auto num = [&] { return std::stoi(m[1].str()); };
    if (name == "K4-P3") return k4_minus_p3_host();
    if (std::regex_match(name, m, complete) && num() >= 2) return complete_host(num());
    if (std::regex_match(name, m, minus_edge) && num() >= 3) return remove_host_edges(complete_host(num()), {{0, 1}});
    if (std::regex_match(name, m, cycle) && num() >= 3) return cycle_host(num());
    if (std::regex_match(name, m, path) && num() >= 1) return path_host(num());
    if (std::regex_match(name, m, cube) && num() >= 1) return hypercube_host(num());
    if (std::regex_match(name, m, star) && num() >= 2) return star_host(num());
    if (std::regex_match(name, m, ladder)) return ladder_host(num());
    throw std::invalid_argument("unknown builtin host '" + name + "'");
}

}  // namespace hpart
