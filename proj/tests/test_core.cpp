#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "hpart/certificate.hpp"
#include "hpart/constructions.hpp"
#include "hpart/errors.hpp"
#include "hpart/json_io.hpp"
#include "hpart/search.hpp"
#include "hpart/thresholds.hpp"
#include "test_support.hpp"

using namespace hpart;
using namespace hpart::testing;

namespace {

ConstructionSpec with_r(ConstructionId id, int r) {
    ConstructionSpec s;
    s.id = id;
    s.r = r;
    return s;
}

PartiteGraph complete_singletons(const HostGraph& host) {
    std::vector<std::vector<PartVertex>> parts(host.order(), {{"x", 1.0}});
    PartiteGraph g(host, std::move(parts));
    for (const auto& e : host.edges()) g.add_edge({e.u, 0}, {e.v, 0});
    return g;
}

// Transversal indices from per-part vertex ids.
Transversal by_ids(const PartiteGraph& g, const std::vector<std::string>& ids) {
    Transversal t;
    for (int x = 0; x < g.part_count(); ++x) t.choice.push_back(g.find_vertex(x, ids[x]));
    return t;
}

// Centre-rooted AHU encoding; equal strings iff the trees are isomorphic.
std::string rooted_code(const SmallGraph& t, int v, int parent) {
    std::vector<std::string> kids;
    for (int u = 0; u < t.order(); ++u)
        if (u != parent && t.has_edge(u, v)) kids.push_back(rooted_code(t, u, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    return s + ")";
}

std::string tree_code(const SmallGraph& t) {
    const int n = t.order();
    std::vector<int> degree(static_cast<std::size_t>(n));
    std::vector<int> layer;
    for (int v = 0; v < n; ++v) {
        degree[v] = t.degree(v);
        if (degree[v] <= 1) layer.push_back(v);
    }
    int remaining = n;
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        std::vector<int> next;
        for (int leaf : layer)
            for (int u = 0; u < n; ++u)
                if (t.has_edge(leaf, u) && --degree[u] == 1) next.push_back(u);
        layer = next;
    }
    std::string best;
    for (int c : layer) {
        const std::string code = rooted_code(t, c, -1);
        if (best.empty() || code < best) best = code;
    }
    return best;
}

// One representative per isomorphism class of trees on t vertices.
std::vector<SmallGraph> all_trees(int t) {
    if (t == 1) return {SmallGraph(1)};
    std::map<std::string, SmallGraph> classes;
    std::vector<int> seq(static_cast<std::size_t>(t - 2), 0);
    while (true) {
        SmallGraph tree = pruefer_tree(seq);
        classes.emplace(tree_code(tree), tree);
        int k = 0;
        while (k < t - 2 && ++seq[k] == t) seq[k++] = 0;
        if (k == t - 2) break;
    }
    std::vector<SmallGraph> out;
    for (auto& [code, tree] : classes) out.push_back(tree);
    return out;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("validate accepts parity(5)") {
    CHECK(validate(build(with_r(ConstructionId::Parity, 5))).ok());
}

TEST_CASE("validate reports one weight-sum violation") {
    PartiteGraph g(path_host(2), {{{"a", 0.4}, {"b", 0.5}}, {{"c", 1.0}}});
    const auto report = validate(g);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == Violation::Kind::WeightSum);
}

TEST_CASE("validate reports one stray edge") {
    PartiteGraph g(path_host(3), {{{"a", 1.0}}, {{"b", 1.0}}, {{"c", 1.0}}});
    g.add_edge({0, 0}, {2, 0});
    const auto report = validate(g);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == Violation::Kind::StrayEdge);
}

TEST_CASE("validate reports empty parts and out-of-range weights") {
    PartiteGraph g(path_host(3), {{{"a", 1.5}, {"b", -0.5}}, {}, {{"c", 1.0}}});
    const auto report = validate(g);
    int empty = 0, range = 0;
    for (const auto& v : report.violations) {
        empty += v.kind == Violation::Kind::EmptyPart;
        range += v.kind == Violation::Kind::WeightRange;
    }
    CHECK(empty == 1);
    CHECK(range == 2);
}

TEST_CASE("density profile of a complete singleton graph is all ones") {
    const auto profile = density_profile(complete_singletons(complete_host(5)));
    for (double v : profile.values) CHECK(v == 1.0);
    CHECK(profile.minimum == 1.0);
}

TEST_CASE("density of two_colour(4) is 1/2") {
    CHECK(density_profile(build(with_r(ConstructionId::TwoColour, 4))).minimum == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("leila(4, 1/2) profile matches a direct double sum over the edge rule") {
    ConstructionSpec s = with_r(ConstructionId::Leila, 4);
    s.alpha = 0.5;
    const PartiteGraph g = build(s);
    const auto profile = density_profile(g);
    // Leaf parts hold labels {i, 4} with weights (a, 1-a); part 4 holds {1, 2, 3} uniformly.
    const double a = 0.5;
    auto leaf_pair = [&] {
        double sum = 0.0;
        for (int x : {0, 1})
            for (int y : {0, 1}) sum += (x ? 1 - a : a) * (y ? 1 - a : a) * (x == 1 && y == 1);
        return sum;
    };
    auto leaf_to_centre = [&](int i) {
        double sum = 0.0;
        for (int k = 1; k <= 3; ++k) sum += a * (1.0 / 3.0) * (k != i);
        return sum;
    };
    const auto& edges = g.host().edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double expected = edges[e].v == 3 ? leaf_to_centre(edges[e].u + 1) : leaf_pair();
        CHECK(profile.values[e] == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(leaf_pair() == doctest::Approx(0.25));
    CHECK(leaf_to_centre(1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("density of an invalid graph is rejected") {
    PartiteGraph g(path_host(2), {{{"a", 0.9}}, {{"c", 1.0}}});
    CHECK_THROWS_AS(density_profile(g), InvalidInput);
}

TEST_CASE("transversal counts") {
    std::uint64_t seen = 0;
    enumerate_transversals(complete_singletons(complete_host(4)), [&](const Transversal&) { return ++seen, true; });
    CHECK(seen == 1);
    CHECK(enumerate_transversals(build(with_r(ConstructionId::Parity, 5)), [](const Transversal&) { return true; }) == 32);
    CHECK(enumerate_transversals(build(with_r(ConstructionId::Leila, 4)), [](const Transversal&) { return true; }) == 24);
}

TEST_CASE("transversals come in lexicographic order, host vertex 0 most significant") {
    const PartiteGraph g = build(with_r(ConstructionId::Leila, 4));
    std::vector<std::vector<int>> seen;
    enumerate_transversals(g, [&](const Transversal& t) { return seen.push_back(t.choice), true; });
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(std::set<std::vector<int>>(seen.begin(), seen.end()).size() == seen.size());
    CHECK(seen.front() == std::vector<int>{0, 0, 0, 0});
    CHECK(seen[1] == std::vector<int>{0, 0, 0, 1});
}

TEST_CASE("cap exceeded names the product") {
    const PartiteGraph g = build(with_r(ConstructionId::Parity, 5));
    try {
        enumerate_transversals(g, [](const Transversal&) { return true; }, 10);
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        CHECK(std::string(e.what()).find("32") != std::string::npos);
    }
}

TEST_CASE("transversal graph of two_colour(4) at labels (0,0,0,1)") {
    const PartiteGraph g = build(with_r(ConstructionId::TwoColour, 4));
    const SmallGraph s = transversal_graph(g, by_ids(g, {"0", "0", "0", "1"}));
    CHECK(s.edges() == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    CHECK(is_connected(s));
    CHECK_FALSE(has_hamilton_cycle(s));
}

TEST_CASE("transversal graph of parity(5) at all zeros is empty") {
    const PartiteGraph g = build(with_r(ConstructionId::Parity, 5));
    CHECK(transversal_graph(g, by_ids(g, {"0", "0", "0", "0", "0"})).edge_count() == 0);
}

TEST_CASE("transversal graph of missing_edge(4) at labels (1,2,1,1)") {
    const PartiteGraph g = build(with_r(ConstructionId::MissingEdge, 4));
    const auto comps = components(transversal_graph(g, by_ids(g, {"1", "2", "1", "1"})));
    std::set<std::uint64_t> got(comps.begin(), comps.end());
    CHECK(got == std::set<std::uint64_t>{0b1101, 0b0010});
}

TEST_CASE("contains_member examples") {
    CHECK(contains_member(path_graph(5), ForbiddenFamily::all_trees(5)));
    SmallGraph bip(6);
    for (int u = 0; u < 3; ++u)
        for (int v = 3; v < 6; ++v) bip.add_edge(u, v);
    CHECK_FALSE(contains_member(bip, ForbiddenFamily::odd_cycles()));
    CHECK(contains_member(cycle_graph(4), ForbiddenFamily::hamilton_cycle()));
    CHECK(contains_member(complete_graph(4), parse_family("clique:4")));
    CHECK_FALSE(contains_member(cycle_graph(5), parse_family("clique:3")));
    CHECK(contains_member(cycle_graph(6), parse_family("path:6")));
    CHECK(contains_member(cycle_graph(6), parse_family("factor:P2x3")));
    CHECK_FALSE(contains_member(path_graph(6), parse_family("factor:K3x2")));
    CHECK(contains_member(disjoint_union(complete_graph(3), complete_graph(3)), parse_family("factor:K3x2")));
}

TEST_CASE("check_family_free examples") {
    CHECK(check_family_free(build(with_r(ConstructionId::Parity, 5)), ForbiddenFamily::odd_cycles()).family_free());
    CHECK(check_family_free(build(with_r(ConstructionId::MissingEdge, 4)), ForbiddenFamily::all_trees(4)).family_free());
    const PartiteGraph g = build(with_r(ConstructionId::TwoColour, 4));
    const Certificate c = check_family_free(g, ForbiddenFamily::all_trees(4));
    REQUIRE_FALSE(c.family_free());
    CHECK(*c.witness == by_ids(g, {"0", "0", "0", "1"}));
}

TEST_CASE("explicit list members larger than the host are rejected") {
    const PartiteGraph g = build(with_r(ConstructionId::Parity, 3));
    CHECK_THROWS_AS(check_family_free(g, ForbiddenFamily::explicit_list({complete_graph(4)})), InvalidInput);
}

TEST_CASE("max transversal component examples") {
    ConstructionSpec s;
    s.id = ConstructionId::IntersectingPalette;
    s.t = 2;
    s.r = 10;
    const auto bound = max_transversal_component(build(s));
    CHECK(bound.size <= 7);
    CHECK(bound.size >= 1);
    CHECK(max_transversal_component(complete_singletons(path_host(6))).size == 6);
}

TEST_CASE("hypercube_layers(4) components stay within three consecutive layers") {
    ConstructionSpec s;
    s.id = ConstructionId::HypercubeLayers;
    s.d = 4;
    const PartiteGraph g = build(s);
    const auto popcount = [](int x) { return __builtin_popcount(static_cast<unsigned>(x)); };
    enumerate_transversals(g, [&](const Transversal& t) {
        for (auto comp : components(transversal_graph(g, t))) {
            int lo = 99, hi = -1;
            for (int x = 0; x < 16; ++x)
                if ((comp >> x) & 1U) {
                    lo = std::min(lo, popcount(x));
                    hi = std::max(hi, popcount(x));
                }
            CHECK(hi - lo <= 2);
        }
        return true;
    });
    const auto worst = max_transversal_component(g);
    CHECK(worst.witness.choice.size() == 16);
    CHECK(worst.size <= 14);
}

TEST_CASE("blow-up examples") {
    ConstructionSpec s = with_r(ConstructionId::Leila, 4);
    s.alpha = 0.5;
    const PartiteGraph g = build(s);
    const PartiteGraph b = blow_up(g, 6);
    CHECK(b.part_size(0) == 6);
    CHECK(b.part_size(3) == 6);
    const auto pg = density_profile(g), pb = density_profile(b);
    for (std::size_t e = 0; e < pg.values.size(); ++e) CHECK(pb.values[e] == doctest::Approx(pg.values[e]).epsilon(1e-12));

    const PartiteGraph unit = complete_singletons(complete_host(4));
    const PartiteGraph same = blow_up(unit, 1);
    CHECK(pattern_of(same) == pattern_of(unit));
    for (int x = 0; x < 4; ++x) CHECK(same.part(x)[0].weight == 1.0);

    const PartiteGraph parity = build(with_r(ConstructionId::Parity, 5));
    const PartiteGraph pb2 = blow_up(parity, 2);
    for (int x = 0; x < 5; ++x) CHECK(pb2.part_size(x) == 2);
    CHECK(density_profile(pb2).minimum == doctest::Approx(0.5));

    ConstructionSpec leila = with_r(ConstructionId::Leila, 4);
    CHECK_THROWS_AS(blow_up(build(leila), 6), InvalidInput);
}

TEST_CASE("blow-up preserves freeness") {
    const PartiteGraph g = build(with_r(ConstructionId::MissingEdge, 5));
    CHECK(check_family_free(blow_up(g, 2), ForbiddenFamily::all_trees(5)).family_free());
    const PartiteGraph t = build(with_r(ConstructionId::TwoColour, 4));
    CHECK_FALSE(check_family_free(blow_up(t, 2), ForbiddenFamily::all_trees(4)).family_free());
}

TEST_CASE("invariant: profile unchanged by permuting vertices within parts") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const HostGraph host = trial % 2 ? complete_host(4) : cycle_host(5);
        const PartiteGraph g = random_partite(host, 4, 0.5, rng);
        std::vector<std::vector<int>> perm(g.part_count());
        std::vector<std::vector<PartVertex>> parts(g.part_count());
        for (int x = 0; x < g.part_count(); ++x) {
            perm[x].resize(static_cast<std::size_t>(g.part_size(x)));
            std::iota(perm[x].begin(), perm[x].end(), 0);
            std::shuffle(perm[x].begin(), perm[x].end(), rng);
            for (int i = 0; i < g.part_size(x); ++i) parts[x].push_back(g.part(x)[perm[x][i]]);
        }
        PartiteGraph h(host, parts);
        const auto& edges = host.edges();
        for (std::size_t e = 0; e < edges.size(); ++e)
            for (int i = 0; i < h.part_size(edges[e].u); ++i)
                for (int j = 0; j < h.part_size(edges[e].v); ++j)
                    if (g.has_edge({edges[e].u, perm[edges[e].u][i]}, {edges[e].v, perm[edges[e].v][j]}))
                        h.add_edge({edges[e].u, i}, {edges[e].v, j});
        const auto a = density_profile(g), b = density_profile(h);
        for (std::size_t e = 0; e < a.values.size(); ++e) CHECK(a.values[e] == doctest::Approx(b.values[e]).epsilon(1e-12));
    }
}

TEST_CASE("invariant: blow-up preserves the profile within 1e-12") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const int denominator = 2 + trial % 5;
        const PartiteGraph g = random_partite(trial % 2 ? complete_host(4) : path_host(4), 3, 0.6, rng, denominator);
        const int copies = denominator * (1 + trial % 2);
        const auto a = density_profile(g), b = density_profile(blow_up(g, copies));
        for (std::size_t e = 0; e < a.values.size(); ++e) CHECK(std::abs(a.values[e] - b.values[e]) <= 1e-12);
    }
}

TEST_CASE("invariant: adding a permitted edge never decreases a pair density") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const PartiteGraph g = random_partite(complete_host(4), 3, 0.4, rng);
        const auto before = density_profile(g);
        const auto& edges = g.host().edges();
        const auto& e = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
        PartiteGraph h = g;
        h.add_edge({e.u, std::uniform_int_distribution<int>(0, g.part_size(e.u) - 1)(rng)},
                   {e.v, std::uniform_int_distribution<int>(0, g.part_size(e.v) - 1)(rng)});
        const auto after = density_profile(h);
        for (std::size_t k = 0; k < edges.size(); ++k) CHECK(after.values[k] >= before.values[k]);
    }
}

TEST_CASE("invariant: tree family shortcut agrees with explicit tree containment") {
    std::vector<std::vector<SmallGraph>> trees(9);
    for (int t = 1; t <= 8; ++t) trees[t] = all_trees(t);
    CHECK(trees[5].size() == 3);
    CHECK(trees[6].size() == 6);
    CHECK(trees[8].size() == 23);
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 8;
        const SmallGraph s = random_small_graph(n, 0.15 + 0.1 * (trial % 5), rng);
        for (int t = 1; t <= n; ++t) {
            bool explicit_hit = false;
            for (const auto& tree : trees[t]) explicit_hit = explicit_hit || contains_subgraph(s, tree);
            CHECK(contains_member(s, ForbiddenFamily::all_trees(t)) == explicit_hit);
        }
    }
}

TEST_CASE("invariant: odd-cycle shortcut agrees with explicit odd cycles") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 8;
        const SmallGraph s = random_small_graph(n, 0.1 + 0.1 * (trial % 6), rng);
        bool explicit_hit = false;
        for (int len = 3; len <= n; len += 2) explicit_hit = explicit_hit || contains_subgraph(s, cycle_graph(len));
        CHECK(contains_member(s, ForbiddenFamily::odd_cycles()) == explicit_hit);
        if (n >= 3) CHECK(contains_member(s, ForbiddenFamily::hamilton_cycle()) == contains_subgraph(s, cycle_graph(n)));
    }
}

TEST_CASE("invariant: certificates re-check") {
    std::mt19937_64 rng(16);
    const std::vector<ForbiddenFamily> families{ForbiddenFamily::all_trees(4), ForbiddenFamily::hamilton_cycle(),
                                                ForbiddenFamily::odd_cycles(), ForbiddenFamily::clique(3)};
    int violated = 0, free = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const PartiteGraph g = random_partite(complete_host(4), 3, 0.35, rng);
        const auto& f = families[trial % families.size()];
        const Certificate c = check_family_free(g, f);
        if (c.family_free()) {
            ++free;
        } else {
            ++violated;
            CHECK(contains_member(transversal_graph(g, *c.witness), f));
        }
        CHECK(recheck_certificate(g, c));
    }
    CHECK(violated > 0);
    CHECK(free > 0);
}

TEST_CASE("JSON round trip keeps weights bit-exact") {
    const PartiteGraph g = build(with_r(ConstructionId::Leila, 5));
    const PartiteGraph back = graph_from_json(parse_json_text(graph_to_json(g).dump(), "mem"));
    for (int x = 0; x < g.part_count(); ++x)
        for (int i = 0; i < g.part_size(x); ++i) CHECK(back.part(x)[i].weight == g.part(x)[i].weight);
    CHECK(graph_to_json(back) == graph_to_json(g));
    const Certificate c = check_family_free(g, ForbiddenFamily::all_trees(5));
    const Certificate c2 = certificate_from_json(g, certificate_to_json(g, c));
    CHECK(recheck_certificate(g, c2));
}

TEST_CASE("malformed JSON reports line and column") {
    try {
        parse_json_text("{\n  \"host\": [1,\n  2,,\n}", "bad.json");
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).rfind("bad.json:3:", 0) == 0);
    }
}

TEST_CASE("graph JSON with an unknown vertex id is rejected") {
    const auto j = parse_json_text(R"({"host":{"n":2,"edges":[[0,1]]},"parts":{"0":[{"id":"a","w":1}],"1":[{"id":"b","w":1}]},
        "edges":[[["0","a"],["1","zz"]]]})", "mem");
    CHECK_THROWS_AS(graph_from_json(j), InvalidInput);
}

}  // TEST_SUITE
