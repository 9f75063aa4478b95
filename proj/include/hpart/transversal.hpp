#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hpart/partite_graph.hpp"
#include "hpart/small_graph.hpp"

namespace hpart {

inline constexpr std::uint64_t default_transversal_cap = 100'000'000;

/// One vertex index per part.
struct Transversal {
    std::vector<int> choice;
    friend bool operator==(const Transversal&, const Transversal&) = default;
};

// Product of part sizes; throws CapExceeded above cap (the product saturates rather
// than overflowing).
std::uint64_t transversal_count(std::span<const std::uint64_t> part_sizes, std::uint64_t cap = default_transversal_cap);

// Mixed-radix decoding of a lexicographic index, host vertex 0 most significant.
Transversal transversal_at(std::span<const std::uint64_t> part_sizes, std::uint64_t index);

bool is_valid_transversal(const PartiteGraph& g, const Transversal& t);

SmallGraph transversal_graph(const PartiteGraph& g, const Transversal& t);

/// Visits transversals in lexicographic order over [begin, end). The visitor receives
/// the transversal and returns false to stop early. Returns the number visited.
template <typename Visitor>
std::uint64_t for_each_transversal(std::span<const std::uint64_t> part_sizes, std::uint64_t begin,
                                   std::uint64_t end, Visitor&& visit) {
    if (begin >= end) return 0;
    Transversal t = transversal_at(part_sizes, begin);
    const int n = static_cast<int>(part_sizes.size());
    std::uint64_t visited = 0;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
        ++visited;
        if (!visit(static_cast<const Transversal&>(t))) break;
        for (int x = n - 1; x >= 0; --x) {
            if (static_cast<std::uint64_t>(++t.choice[x]) < part_sizes[x]) break;
            t.choice[x] = 0;
        }
    }
    return visited;
}

/// Every transversal of g in lexicographic order; enforces the cap first.
template <typename Visitor>
std::uint64_t enumerate_transversals(const PartiteGraph& g, Visitor&& visit,
                                     std::uint64_t cap = default_transversal_cap) {
    auto sizes = g.part_sizes();
    const std::uint64_t total = transversal_count(sizes, cap);
    return for_each_transversal(sizes, 0, total, std::forward<Visitor>(visit));
}

}  // namespace hpart
