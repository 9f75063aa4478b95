#include "hpart/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <thread>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "hpart/errors.hpp"

namespace hpart {

namespace {

// Host edges ordered by larger endpoint, then smaller.
std::vector<HostEdge> colex_edges(const HostGraph& host) {
    auto edges = host.edges();
    std::sort(edges.begin(), edges.end(), [](const HostEdge& a, const HostEdge& b) {
        return a.v != b.v ? a.v < b.v : a.u < b.u;
    });
    return edges;
}

constexpr int max_search_part = 16;
constexpr std::uint64_t max_search_transversals = 1'000'000;

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

/// Full-size patterns over fixed part sizes as flat bit vectors, with the
/// transversals through each bit precomputed for incremental freeness checks.
class PatternSpace {
public:
    PatternSpace(const HostGraph& host, std::vector<int> sizes, const ForbiddenFamily& family)
        : host_(host), sizes_(std::move(sizes)), family_(family) {
        const auto& edges = host_.edges();
        for (const auto& e : edges) {
            offset_.push_back(bits_);
            bits_ += sizes_[e.u] * sizes_[e.v];
        }
        std::vector<std::uint64_t> radix(sizes_.begin(), sizes_.end());
        const std::uint64_t total = transversal_count(radix, max_search_transversals);
        through_.resize(static_cast<std::size_t>(bits_));
        for_each_transversal(radix, 0, total, [&](const Transversal& t) {
            std::vector<int> tb;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                tb.push_back(offset_[e] + t.choice[edges[e].u] * sizes_[edges[e].v] + t.choice[edges[e].v]);
                through_[static_cast<std::size_t>(tb.back())].push_back(static_cast<int>(tbits_.size()));
            }
            tbits_.push_back(std::move(tb));
            return true;
        });
    }

    int bits() const { return bits_; }

    bool transversal_free(const std::vector<std::uint8_t>& on, int t, int extra = -1) const {
        SmallGraph g(host_.order());
        const auto& edges = host_.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const int b = tbits_[static_cast<std::size_t>(t)][e];
            if (on[static_cast<std::size_t>(b)] || b == extra) g.add_edge(edges[e].u, edges[e].v);
        }
        return !contains_member(g, family_);
    }

    bool addable(const std::vector<std::uint8_t>& on, int bit) const {
        for (int t : through_[static_cast<std::size_t>(bit)])
            if (!transversal_free(on, t, bit)) return false;
        return true;
    }

    bool maximal(const std::vector<std::uint8_t>& on) const {
        for (int b = 0; b < bits_; ++b)
            if (!on[static_cast<std::size_t>(b)] && addable(on, b)) return false;
        return true;
    }

    CombinatorialPattern to_pattern(const std::vector<std::uint8_t>& on) const {
        CombinatorialPattern p = empty_pattern(host_, sizes_);
        const auto& edges = host_.edges();
        for (std::size_t e = 0; e < edges.size(); ++e)
            for (int i = 0; i < sizes_[edges[e].u]; ++i)
                for (int j = 0; j < sizes_[edges[e].v]; ++j)
                    if (on[static_cast<std::size_t>(offset_[e] + i * sizes_[edges[e].v] + j)]) p.blocks[e].set(i, j);
        return p;
    }

private:
    HostGraph host_;
    std::vector<int> sizes_;
    ForbiddenFamily family_;
    int bits_ = 0;
    std::vector<int> offset_;
    std::vector<std::vector<int>> tbits_;
    std::vector<std::vector<int>> through_;
};

class KeySearch {
public:
    KeySearch(const CombinatorialPattern& p, std::vector<HostEdge> order) : p_(p), order_(std::move(order)) {}

    std::string run(const std::vector<std::vector<int>>& automorphisms) {
        const int n = p_.host.order();
        for (const auto& perm : automorphisms) {
            src_.assign(static_cast<std::size_t>(n), 0);
            for (int x = 0; x < n; ++x) src_[perm[x]] = x;
            std::string prefix;
            for (int k = 0; k < n; ++k) prefix.push_back(static_cast<char>('0' + p_.part_sizes[src_[k]]));
            if (!best_.empty() && prefix > best_.substr(0, prefix.size())) continue;
            q_.assign(static_cast<std::size_t>(n), {});
            extend(0, prefix);
        }
        return best_;
    }

private:
    bool bit(int a, int b, int i, int j) const {
        // Image edge (a, b), a < b, image indices (i, j).
        const int x = src_[a], y = src_[b];
        const int si = q_[a][i], sj = q_[b][j];
        if (x < y) return p_.blocks[p_.host.edge_index(x, y)].test(si, sj);
        return p_.blocks[p_.host.edge_index(y, x)].test(sj, si);
    }

    void extend(int k, const std::string& prefix) {
        const int n = p_.host.order();
        if (k == n) {
            if (best_.empty() || prefix < best_) best_ = prefix;
            return;
        }
        std::vector<int> perm(static_cast<std::size_t>(p_.part_sizes[src_[k]]));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            q_[k] = perm;
            std::string next = prefix;
            for (const auto& e : order_) {
                if (e.v != k) continue;
                for (int i = 0; i < p_.part_sizes[src_[e.u]]; ++i)
                    for (int j = 0; j < p_.part_sizes[src_[k]]; ++j) next.push_back(bit(e.u, k, i, j) ? '1' : '0');
            }
            if (!best_.empty() && next.compare(0, next.size(), best_, 0, next.size()) > 0) continue;
            extend(k + 1, next);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    const CombinatorialPattern& p_;
    std::vector<HostEdge> order_;
    std::vector<int> src_;
    std::vector<std::vector<int>> q_;
    std::string best_;
};

std::string identity_key(const CombinatorialPattern& p) {
    std::string key;
    for (int s : p.part_sizes) key.push_back(static_cast<char>('0' + s));
    for (const auto& e : colex_edges(p.host)) {
        const auto& m = p.blocks[p.host.edge_index(e.u, e.v)];
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) key.push_back(m.test(i, j) ? '1' : '0');
    }
    return key;
}

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Candidate {
    std::string key;
    WeightedOptimum optimum;
};

// Highest density; ties within 1e-12 go to the smaller key. Candidates arrive sorted by key.
const Candidate* pick_best(const std::vector<Candidate>& candidates) {
    const Candidate* best = nullptr;
    for (const auto& c : candidates)
        if (!best || c.optimum.density > best->optimum.density + 1e-12) best = &c;
    return best;
}

}  // namespace

CombinatorialPattern empty_pattern(const HostGraph& host, const std::vector<int>& part_sizes) {
    if (static_cast<int>(part_sizes.size()) != host.order()) throw InvalidInput("one part size per host vertex required");
    CombinatorialPattern p;
    p.host = host;
    p.part_sizes = part_sizes;
    for (const auto& e : host.edges()) p.blocks.emplace_back(part_sizes[e.u], part_sizes[e.v]);
    return p;
}

CombinatorialPattern pattern_of(const PartiteGraph& g) {
    CombinatorialPattern p;
    p.host = g.host();
    for (int x = 0; x < g.part_count(); ++x) p.part_sizes.push_back(g.part_size(x));
    for (int e = 0; e < g.host().edge_count(); ++e) p.blocks.push_back(g.biadjacency(e));
    return p;
}

PartiteGraph realize(const CombinatorialPattern& p, const PartWeights& weights) {
    std::vector<std::vector<PartVertex>> parts(p.part_sizes.size());
    for (std::size_t x = 0; x < parts.size(); ++x)
        for (int i = 0; i < p.part_sizes[x]; ++i) parts[x].push_back({std::to_string(i), weights[x][i]});
    PartiteGraph g(p.host, std::move(parts));
    const auto& edges = p.host.edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        for (int i = 0; i < p.blocks[e].rows(); ++i)
            for (int j = 0; j < p.blocks[e].cols(); ++j)
                if (p.blocks[e].test(i, j)) g.add_edge({edges[e].u, i}, {edges[e].v, j});
    return g;
}

bool pattern_family_free(const CombinatorialPattern& p, const ForbiddenFamily& f, std::uint64_t cap) {
    return check_family_free(realize(p, uniform_weights(p.part_sizes)), f, cap).family_free();
}

std::vector<std::vector<int>> cap_respecting_automorphisms(const HostGraph& host, const std::vector<int>& caps) {
    std::vector<std::vector<int>> out;
    for (auto& perm : host.automorphisms()) {
        bool ok = true;
        for (int x = 0; x < host.order() && ok; ++x) ok = caps[x] == caps[perm[x]];
        if (ok) out.push_back(std::move(perm));
    }
    return out;
}

std::string canonical_key(const CombinatorialPattern& p, const std::vector<std::vector<int>>& automorphisms) {
    if (automorphisms.empty()) return identity_key(p);
    return KeySearch(p, colex_edges(p.host)).run(automorphisms);
}

CombinatorialPattern pattern_from_key(const HostGraph& host, const std::string& key) {
    const int n = host.order();
    if (static_cast<int>(key.size()) < n) throw InvalidInput("pattern key too short");
    std::vector<int> sizes;
    for (int x = 0; x < n; ++x) sizes.push_back(key[x] - '0');
    CombinatorialPattern p = empty_pattern(host, sizes);
    std::size_t pos = static_cast<std::size_t>(n);
    for (const auto& e : colex_edges(host)) {
        auto& m = p.blocks[host.edge_index(e.u, e.v)];
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                if (pos >= key.size()) throw InvalidInput("pattern key too short");
                m.set(i, j, key[pos++] == '1');
            }
    }
    if (pos != key.size()) throw InvalidInput("pattern key too long");
    return p;
}

std::vector<int> default_caps(const HostGraph& host) {
    std::vector<int> caps;
    for (int x = 0; x < host.order(); ++x) caps.push_back(std::max(host.degree(x), 1));
    return caps;
}

SearchResult search(const SearchProblem& problem) {
    const HostGraph& host = problem.host;
    SearchResult result;
    const auto degree_caps = default_caps(host);
    result.caps = problem.caps.empty() ? degree_caps : problem.caps;
    if (static_cast<int>(result.caps.size()) != host.order()) {
        throw InvalidInput("expected " + std::to_string(host.order()) + " caps, got " + std::to_string(result.caps.size()));
    }
    for (int x = 0; x < host.order(); ++x) {
        if (result.caps[x] < 1 || result.caps[x] > max_search_part) {
            throw InvalidInput("cap for host vertex " + std::to_string(x) + " must lie in [1, 16]");
        }
        if (result.caps[x] > degree_caps[x]) {
            result.warnings.push_back("cap " + std::to_string(result.caps[x]) + " at host vertex " + std::to_string(x) +
                                      " exceeds its degree bound " + std::to_string(degree_caps[x]));
        }
    }
    for (const auto& m : problem.family.members())
        if (problem.family.kind() == ForbiddenFamily::Kind::ExplicitList && m.order() > host.order())
            throw InvalidInput("family member larger than the host");

    // A smaller part embeds into a full one by cloning a vertex, which changes neither
    // freeness nor density, and adding edges never lowers density: full-size,
    // edge-maximal patterns suffice.
    const PatternSpace space(host, result.caps, problem.family);
    const auto automorphisms =
        problem.use_symmetry ? cap_respecting_automorphisms(host, result.caps) : std::vector<std::vector<int>>{};
    std::set<std::string> keys;

    if (problem.mode == SearchMode::Exhaustive) {
        const int bits = space.bits();
        if (bits >= 63 || (std::uint64_t{1} << bits) > problem.budget) {
            throw InvalidInput("exhaustive search space 2^" + std::to_string(bits) + " exceeds budget " +
                               std::to_string(problem.budget) + "; use --mode stochastic or smaller caps");
        }
        std::vector<std::uint8_t> on(static_cast<std::size_t>(bits), 0);
        std::function<void(int)> dfs = [&](int k) {
            if (k == bits) {
                if (space.maximal(on)) {
                    ++result.patterns_family_free;
                    keys.insert(canonical_key(space.to_pattern(on), automorphisms));
                }
                return;
            }
            ++result.patterns_examined;
            if (space.addable(on, k)) {
                on[static_cast<std::size_t>(k)] = 1;
                dfs(k + 1);
                on[static_cast<std::size_t>(k)] = 0;
            }
            dfs(k + 1);
        };
        dfs(0);
    } else {
        if (problem.restarts < 1) throw InvalidInput("stochastic search needs at least one restart");
        const int bits = space.bits();
        std::vector<std::string> found(static_cast<std::size_t>(problem.restarts));
        std::vector<std::uint64_t> examined(found.size(), 0), reached(found.size(), 0);
        parallel_for(found.size(), problem.jobs, [&](std::size_t r) {
            boost::random::mt19937_64 rng(mix(problem.seed ^ mix(r)));
            auto fill = [&](std::vector<std::uint8_t>& on, const std::vector<int>& last) {
                std::vector<int> order(static_cast<std::size_t>(bits));
                std::iota(order.begin(), order.end(), 0);
                for (std::size_t i = order.size(); i > 1; --i)
                    std::swap(order[i - 1], order[boost::random::uniform_int_distribution<std::size_t>(0, i - 1)(rng)]);
                std::stable_partition(order.begin(), order.end(), [&](int b) {
                    return std::find(last.begin(), last.end(), b) == last.end();
                });
                for (int b : order) {
                    if (on[static_cast<std::size_t>(b)]) continue;
                    ++examined[r];
                    if (space.addable(on, b)) on[static_cast<std::size_t>(b)] = 1;
                }
                ++reached[r];
            };
            const auto quick = quick_optimizer_options(0);
            std::vector<std::uint8_t> on(static_cast<std::size_t>(bits), 0);
            fill(on, {});
            double current = optimize_weights(space.to_pattern(on), quick).density;
            for (int step = 0; step < problem.climb_steps; ++step) {
                std::vector<int> present;
                for (int b = 0; b < bits; ++b)
                    if (on[static_cast<std::size_t>(b)]) present.push_back(b);
                if (present.empty()) break;
                auto next = on;
                std::vector<int> removed;
                const int drops = 1 + static_cast<int>(boost::random::uniform_int_distribution<int>(0, 1)(rng));
                for (int d = 0; d < drops && !present.empty(); ++d) {
                    const std::size_t pick = boost::random::uniform_int_distribution<std::size_t>(0, present.size() - 1)(rng);
                    next[static_cast<std::size_t>(present[pick])] = 0;
                    removed.push_back(present[pick]);
                    present.erase(present.begin() + static_cast<std::ptrdiff_t>(pick));
                }
                fill(next, removed);
                const double d = optimize_weights(space.to_pattern(next), quick).density;
                if (d >= current - 1e-12) {
                    on = std::move(next);
                    current = std::max(current, d);
                }
            }
            found[r] = canonical_key(space.to_pattern(on), automorphisms);
        });
        keys.insert(found.begin(), found.end());
        result.patterns_examined = std::accumulate(examined.begin(), examined.end(), std::uint64_t{0});
        result.patterns_family_free = std::accumulate(reached.begin(), reached.end(), std::uint64_t{0});
    }

    std::vector<Candidate> candidates;
    for (const auto& k : keys) candidates.push_back({k, {}});
    parallel_for(candidates.size(), problem.jobs, [&](std::size_t i) {
        candidates[i].optimum = optimize_weights(pattern_from_key(host, candidates[i].key), problem.optimizer);
    });
    result.patterns_optimized = candidates.size();
    const Candidate* best = pick_best(candidates);
    result.best_key = best->key;
    result.best_pattern = pattern_from_key(host, best->key);
    result.best_weights = best->optimum.weights;
    result.best_density = best->optimum.density;

    const PartiteGraph g = realize(result.best_pattern, result.best_weights);
    result.certificate = check_family_free(g, problem.family);
    if (!result.certificate.family_free()) throw std::logic_error("search produced a pattern with a forbidden transversal");
    result.best_density = result.certificate.density.minimum;
    return result;
}

}  // namespace hpart
