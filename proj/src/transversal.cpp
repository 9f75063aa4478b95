#include "hpart/transversal.hpp"

#include <limits>

#include "hpart/errors.hpp"

namespace hpart {

std::uint64_t transversal_count(std::span<const std::uint64_t> part_sizes, std::uint64_t cap) {
    std::uint64_t product = 1;
    for (auto s : part_sizes) {
        if (s == 0) return 0;
        if (product > std::numeric_limits<std::uint64_t>::max() / s) {
            throw CapExceeded(std::numeric_limits<std::uint64_t>::max(), cap);
        }
        product *= s;
    }
    if (product > cap) throw CapExceeded(product, cap);
    return product;
}

Transversal transversal_at(std::span<const std::uint64_t> part_sizes, std::uint64_t index) {
    Transversal t;
    t.choice.assign(part_sizes.size(), 0);
    for (int x = static_cast<int>(part_sizes.size()) - 1; x >= 0; --x) {
        t.choice[x] = static_cast<int>(index % part_sizes[x]);
        index /= part_sizes[x];
    }
    return t;
}

bool is_valid_transversal(const PartiteGraph& g, const Transversal& t) {
    if (static_cast<int>(t.choice.size()) != g.part_count()) return false;
    for (int x = 0; x < g.part_count(); ++x)
        if (t.choice[x] < 0 || t.choice[x] >= g.part_size(x)) return false;
    return true;
}

SmallGraph transversal_graph(const PartiteGraph& g, const Transversal& t) {
    if (!is_valid_transversal(g, t)) throw InvalidInput("transversal does not match the graph's parts");
    SmallGraph s(g.part_count());
    const auto& edges = g.host().edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (g.biadjacency(static_cast<int>(e)).test(t.choice[edges[e].u], t.choice[edges[e].v])) {
            s.add_edge(edges[e].u, edges[e].v);
        }
    }
    return s;
}

}  // namespace hpart
