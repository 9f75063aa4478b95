#include "hpart/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "hpart/errors.hpp"

namespace hpart {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Edge bits of the transversal graph restricted to the host edges listed.
std::uint64_t induced_key(const PartiteGraph& g, const Transversal& t, const std::vector<int>& host_edges) {
    std::uint64_t key = 0;
    const auto& edges = g.host().edges();
    for (std::size_t k = 0; k < host_edges.size(); ++k) {
        const auto& e = edges[host_edges[k]];
        if (g.biadjacency(host_edges[k]).test(t.choice[e.u], t.choice[e.v])) key |= std::uint64_t{1} << k;
    }
    return key;
}

std::vector<int> edges_within(const HostGraph& h, const std::vector<int>& set) {
    std::vector<int> out;
    const auto& edges = h.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const bool u_in = std::find(set.begin(), set.end(), edges[e].u) != set.end();
        const bool v_in = std::find(set.begin(), set.end(), edges[e].v) != set.end();
        if (u_in && v_in) out.push_back(static_cast<int>(e));
    }
    if (out.size() > 64) throw InvalidInput("vertex set spans more than 64 host edges");
    return out;
}

// Groups of original category indices; pooling merges the two smallest groups.
struct Pooling {
    std::vector<std::vector<int>> groups;
    std::vector<std::uint64_t> totals;

    explicit Pooling(const std::vector<std::uint64_t>& counts) {
        for (std::size_t i = 0; i < counts.size(); ++i) {
            groups.push_back({static_cast<int>(i)});
            totals.push_back(counts[i]);
        }
    }
    std::uint64_t smallest() const { return *std::min_element(totals.begin(), totals.end()); }
    void merge_two_smallest() {
        std::vector<std::size_t> order(totals.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return totals[a] < totals[b]; });
        const std::size_t keep = std::min(order[0], order[1]), drop = std::max(order[0], order[1]);
        groups[keep].insert(groups[keep].end(), groups[drop].begin(), groups[drop].end());
        totals[keep] += totals[drop];
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(drop));
        totals.erase(totals.begin() + static_cast<std::ptrdiff_t>(drop));
    }
    std::vector<int> index_map(std::size_t categories) const {
        std::vector<int> map(categories);
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (int c : groups[g]) map[static_cast<std::size_t>(c)] = static_cast<int>(g);
        return map;
    }
};

}  // namespace

double CounterRng::uniform(std::uint64_t part, std::uint64_t sample) const {
    const std::uint64_t h = splitmix(splitmix(splitmix(seed) ^ part) ^ sample);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Transversal sample_transversal(const PartiteGraph& g, const CounterRng& rng, std::uint64_t sample) {
    Transversal t;
    t.choice.resize(static_cast<std::size_t>(g.part_count()));
    for (int x = 0; x < g.part_count(); ++x) {
        const double u = rng.uniform(static_cast<std::uint64_t>(x), sample);
        const auto& part = g.part(x);
        double cumulative = 0.0;
        int pick = -1, last_positive = 0;
        for (int i = 0; i < static_cast<int>(part.size()); ++i) {
            if (part[i].weight > 0.0) last_positive = i;
            cumulative += part[i].weight;
            if (u < cumulative) {
                pick = i;
                break;
            }
        }
        t.choice[x] = pick >= 0 ? pick : last_positive;
    }
    return t;
}

double exact_property_probability(const PartiteGraph& g, const ForbiddenFamily& f, std::uint64_t cap) {
    require_valid(g);
    double total = 0.0;
    enumerate_transversals(
        g,
        [&](const Transversal& t) {
            double w = 1.0;
            for (int x = 0; x < g.part_count() && w > 0.0; ++x) w *= g.part(x)[t.choice[x]].weight;
            if (w > 0.0 && contains_member(transversal_graph(g, t), f)) total += w;
            return true;
        },
        cap);
    return std::clamp(total, 0.0, 1.0);
}

SampleReport estimate_property(const PartiteGraph& g, const ForbiddenFamily& f, std::uint64_t n, std::uint64_t seed,
                               int jobs) {
    if (n < 100) throw InvalidInput("Monte Carlo estimation needs n >= 100");
    require_valid(g);
    const CounterRng rng{seed};
    const std::uint64_t workers = std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(jobs, 1)), 1, n);
    std::vector<std::uint64_t> hits(workers, 0);
    auto run = [&](std::uint64_t w) {
        const std::uint64_t begin = n * w / workers, end = n * (w + 1) / workers;
        for (std::uint64_t s = begin; s < end; ++s)
            if (contains_member(transversal_graph(g, sample_transversal(g, rng, s)), f)) ++hits[w];
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    SampleReport r;
    r.n = n;
    r.seed = seed;
    r.estimate = static_cast<double>(std::accumulate(hits.begin(), hits.end(), std::uint64_t{0})) / static_cast<double>(n);
    r.half_width = 1.96 * std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(n));
    return r;
}

std::vector<double> edge_marginals(const PartiteGraph& g, std::uint64_t n, std::uint64_t seed) {
    require_valid(g);
    const CounterRng rng{seed};
    const auto& edges = g.host().edges();
    std::vector<std::uint64_t> joined(edges.size(), 0);
    for (std::uint64_t s = 0; s < n; ++s) {
        const Transversal t = sample_transversal(g, rng, s);
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (g.biadjacency(static_cast<int>(e)).test(t.choice[edges[e].u], t.choice[edges[e].v])) ++joined[e];
    }
    std::vector<double> out;
    for (auto c : joined) out.push_back(n ? static_cast<double>(c) / static_cast<double>(n) : 0.0);
    return out;
}

DependenceReport one_dependence_check(const PartiteGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                                      std::uint64_t n, std::uint64_t seed) {
    require_valid(g);
    for (int x : a) {
        if (x < 0 || x >= g.part_count()) throw InvalidInput("vertex " + std::to_string(x) + " is not in the host");
        if (std::find(b.begin(), b.end(), x) != b.end()) throw InvalidInput("A and B must be disjoint");
    }
    for (int x : b)
        if (x < 0 || x >= g.part_count()) throw InvalidInput("vertex " + std::to_string(x) + " is not in the host");
    if (n == 0) throw InvalidInput("depcheck needs n > 0");

    const auto ea = edges_within(g.host(), a), eb = edges_within(g.host(), b);
    const CounterRng rng{seed};
    std::map<std::uint64_t, int> index_a, index_b;
    std::vector<std::pair<int, int>> cells;
    cells.reserve(n);
    for (std::uint64_t s = 0; s < n; ++s) {
        const Transversal t = sample_transversal(g, rng, s);
        const auto ka = induced_key(g, t, ea), kb = induced_key(g, t, eb);
        const auto ia = index_a.emplace(ka, static_cast<int>(index_a.size())).first->second;
        const auto ib = index_b.emplace(kb, static_cast<int>(index_b.size())).first->second;
        cells.emplace_back(ia, ib);
    }
    std::vector<std::uint64_t> count_a(index_a.size(), 0), count_b(index_b.size(), 0);
    for (auto [i, j] : cells) {
        ++count_a[static_cast<std::size_t>(i)];
        ++count_b[static_cast<std::size_t>(j)];
    }

    Pooling pa(count_a), pb(count_b);
    const double total = static_cast<double>(n);
    while (static_cast<double>(pa.smallest()) * static_cast<double>(pb.smallest()) / total < 5.0) {
        const bool can_a = pa.groups.size() > 1, can_b = pb.groups.size() > 1;
        if (!can_a && !can_b) break;
        if (can_a && (!can_b || pa.smallest() <= pb.smallest())) {
            pa.merge_two_smallest();
        } else {
            pb.merge_two_smallest();
        }
    }

    DependenceReport r;
    r.n = n;
    r.categories_a = static_cast<int>(pa.groups.size());
    r.categories_b = static_cast<int>(pb.groups.size());
    if (r.categories_a < 2 || r.categories_b < 2) {
        r.inconclusive = true;
        return r;
    }
    const auto map_a = pa.index_map(count_a.size()), map_b = pb.index_map(count_b.size());
    std::vector<std::uint64_t> observed(static_cast<std::size_t>(r.categories_a * r.categories_b), 0);
    for (auto [i, j] : cells) ++observed[static_cast<std::size_t>(map_a[i] * r.categories_b + map_b[j])];
    for (int i = 0; i < r.categories_a; ++i)
        for (int j = 0; j < r.categories_b; ++j) {
            const double expected = static_cast<double>(pa.totals[i]) * static_cast<double>(pb.totals[j]) / total;
            const double diff = static_cast<double>(observed[static_cast<std::size_t>(i * r.categories_b + j)]) - expected;
            r.statistic += diff * diff / expected;
        }
    r.degrees_of_freedom = (r.categories_a - 1) * (r.categories_b - 1);
    const boost::math::chi_squared dist(r.degrees_of_freedom);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    r.critical_1pct = boost::math::quantile(dist, 0.99);
    r.rejected_at_1pct = r.statistic > r.critical_1pct;
    return r;
}

AbsorptionWitness star_absorption_witness(const PartiteGraph& g, const std::vector<int>& a, double p) {
    require_valid(g);
    const HostGraph& h = g.host();
    const int n = h.order();
    if (n < 2 || h.edge_count() != n - 1) throw InvalidInput("star absorption needs a star host");
    int centre = -1;
    for (int x = 0; x < n && centre < 0; ++x)
        if (h.degree(x) == n - 1) centre = x;
    if (centre < 0) throw InvalidInput("star absorption needs a star host");
    if (!(p > 0.5)) throw InvalidInput("star absorption needs p > 1/2");
    const double density = density_profile(g).minimum;
    if (density < p - tolerance) {
        throw InvalidInput("graph density " + std::to_string(density) + " is below p = " + std::to_string(p));
    }
    double alpha = 0.0;
    for (int v : a) {
        if (v < 0 || v >= g.part_size(centre)) throw InvalidInput("A contains a vertex outside the centre part");
        alpha += g.part(centre)[v].weight;
    }
    if (!(alpha > 1.0 - p)) throw InvalidInput("w(A) must exceed 1 - p");

    const int leaves = n - 1;
    AbsorptionWitness out;
    out.bound = static_cast<int>(std::floor((1.0 - p) / alpha * leaves + 1e-9));
    std::vector<int> order(a);
    std::stable_sort(order.begin(), order.end(), [&](int u, int v) {
        return g.part(centre)[u].weight > g.part(centre)[v].weight;
    });
    for (int v : order) {
        std::vector<int> missed;
        for (int y = 0; y < n; ++y) {
            if (y == centre) continue;
            bool joined = false;
            for (int j = 0; j < g.part_size(y) && !joined; ++j) joined = g.has_edge({centre, v}, {y, j});
            if (!joined) missed.push_back(y);
        }
        if (static_cast<int>(missed.size()) <= out.bound) {
            out.vertex = v;
            out.missed_leaves = std::move(missed);
            return out;
        }
    }
    throw std::logic_error("no absorbing vertex found although the density bound holds");
}

}  // namespace hpart
