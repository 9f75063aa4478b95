#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "hpart/certificate.hpp"
#include "hpart/constructions.hpp"
#include "hpart/errors.hpp"
#include "hpart/thresholds.hpp"

using namespace hpart;

namespace {

ConstructionSpec spec_of(ConstructionId id, std::optional<int> r = {}, std::optional<int> t = {},
                         std::optional<int> d = {}) {
    ConstructionSpec s;
    s.id = id;
    s.r = r;
    s.t = t;
    s.d = d;
    return s;
}

double pair_density(const PartiteGraph& g, int x, int y) {
    return density_profile(g).values[g.host().edge_index(x, y)];
}

struct RefinedForms {
    double within, to_second_last, to_last, second_last_to_last;
};

RefinedForms stated_forms(int r, RefinedTriple p) {
    return {p.p1 * p.p1 + (1 - p.p1) * (1 - p.p1), p.p1 * p.p2, (1 - p.p1) + (1 - p.p3) / (r - 2),
            (1 - p.p2) + p.p2 * p.p3};
}

ConstructionSpec refined(int r, RefinedTriple p) {
    ConstructionSpec s = spec_of(ConstructionId::RefinedDeadEnd, r);
    s.p1 = p.p1;
    s.p2 = p.p2;
    s.p3 = p.p3;
    return s;
}

// Three-part path graph {a} - {x, y} - {b} with a~x and y~b only; no transversal P3.
PartiteGraph broken_path() {
    PartiteGraph g(path_host(3), {{{"a", 1.0}}, {{"x", 0.5}, {"y", 0.5}}, {{"b", 1.0}}});
    g.add_edge({0, 0}, {1, 0});
    g.add_edge({1, 1}, {2, 0});
    return g;
}

PartiteGraph complete_path(int middle) {
    std::vector<PartVertex> mid;
    for (int i = 0; i < middle; ++i) mid.push_back({"m" + std::to_string(i), 1.0 / middle});
    PartiteGraph g(path_host(3), {{{"a", 1.0}}, mid, {{"b", 1.0}}});
    for (int i = 0; i < middle; ++i) {
        g.add_edge({0, 0}, {1, i});
        g.add_edge({1, i}, {2, 0});
    }
    return g;
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("leila(4) at the optimal alpha attains (8 - 2 sqrt7)/9") {
    const double expected = (8.0 - 2.0 * std::sqrt(7.0)) / 9.0;
    CHECK(density_profile(build(spec_of(ConstructionId::Leila, 4))).minimum == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.300944).epsilon(1e-6));
}

TEST_CASE("intersecting_palette t=2 r=6 has density 1/4 and components of order at most 4") {
    const PartiteGraph g = build(spec_of(ConstructionId::IntersectingPalette, 6, 2));
    CHECK(density_profile(g).minimum == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(max_transversal_component(g).size <= 4);
}

TEST_CASE("verify pendant_triangle, star_leaf(4), two_colour(5)") {
    const auto pendant = verify(spec_of(ConstructionId::PendantTriangle));
    CHECK(pendant.pass);
    CHECK(pendant.density == doctest::Approx(4 - 2 * std::sqrt(3.0)).epsilon(1e-9));
    const auto star = verify(spec_of(ConstructionId::StarLeaf, 4));
    CHECK(star.pass);
    CHECK(star.density == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const auto two = verify(spec_of(ConstructionId::TwoColour, 5));
    CHECK(two.pass);
    CHECK(two.density == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(two.family == "hamilton");
}

TEST_CASE("every generator output validates") {
    for (const auto& s : paper_construction_suite()) {
        CAPTURE(s.label());
        CHECK(validate(build(s)).ok());
    }
    ConstructionSpec m = spec_of(ConstructionId::MissingEdge, 6);
    m.matching = {{2, 3}, {4, 5}};
    CHECK(validate(build(m)).ok());
    CHECK(build(m).host().edge_count() == 15 - 3);
}

TEST_CASE("suite rows other than refined_dead_end verify") {
    for (const auto& s : paper_construction_suite()) {
        if (s.id == ConstructionId::RefinedDeadEnd) continue;
        const auto outcome = verify(s);
        CAPTURE(outcome.label);
        CAPTURE(outcome.diagnostics);
        CHECK(outcome.pass);
    }
}

TEST_CASE("invariant: leila density follows the closed form on a grid") {
    for (int r = 3; r <= 10; ++r) {
        for (int k = 0; k <= 100; ++k) {
            ConstructionSpec s = spec_of(ConstructionId::Leila, r);
            const double a = k / 100.0;
            s.alpha = a;
            const double expected = std::min((1 - a) * (1 - a), a * (r - 2) / (r - 1));
            CHECK(std::abs(density_profile(build(s)).minimum - expected) <= 1e-12);
        }
    }
}

TEST_CASE("invariant: parity transversals are bipartite") {
    for (int r = 3; r <= 12; ++r) {
        const PartiteGraph g = build(spec_of(ConstructionId::Parity, r));
        bool all = true;
        enumerate_transversals(g, [&](const Transversal& t) { return all = is_bipartite(transversal_graph(g, t)); });
        CHECK(all);
    }
}

TEST_CASE("intersecting palette partition is balanced and ordered") {
    for (auto [t, r] : {std::pair{2, 6}, {2, 7}, {2, 11}, {3, 10}, {3, 12}}) {
        const PartiteGraph g = build(spec_of(ConstructionId::IntersectingPalette, r, t));
        std::vector<std::string> labels;
        for (int x = 0; x < r; ++x) {
            std::string set;
            for (const auto& v : g.part(x)) set += v.id + ",";
            CHECK(static_cast<int>(g.part(x).size()) == t);
            labels.push_back(set);
        }
        std::map<std::string, int> block;
        for (const auto& l : labels) ++block[l];
        int lo = r, hi = 0;
        for (auto& [set, n] : block) lo = std::min(lo, n), hi = std::max(hi, n);
        CHECK(hi - lo <= 1);
        // Each set occupies one contiguous run of parts.
        int runs = 1;
        for (int x = 1; x < r; ++x) runs += labels[x] != labels[x - 1];
        CHECK(runs == static_cast<int>(block.size()));
    }
}

TEST_CASE("component bounds") {
    CHECK(claimed_component_bound(spec_of(ConstructionId::IntersectingPalette, 10, 2)) == 7);
    CHECK(claimed_component_bound(spec_of(ConstructionId::IntersectingPalette, 12, 3)) == 8);
    CHECK(claimed_component_bound(spec_of(ConstructionId::HypercubeLayers, {}, {}, 4)) == 14);
    CHECK(claimed_component_bound(spec_of(ConstructionId::HypercubeLayers, {}, {}, 3)) == 7);
    CHECK_FALSE(claimed_component_bound(spec_of(ConstructionId::Parity, 5)));
}

TEST_CASE("domain errors name the bound") {
    auto message = [](const ConstructionSpec& s) {
        try {
            build(s);
        } catch (const InvalidInput& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(spec_of(ConstructionId::StarLeaf, 2)).find("r") != std::string::npos);
    CHECK_FALSE(message(spec_of(ConstructionId::MissingEdge, 3)).empty());
    CHECK_FALSE(message(spec_of(ConstructionId::TwoColour, 3)).empty());
    CHECK_FALSE(message(spec_of(ConstructionId::IntersectingPalette, 9, 3)).empty());
    CHECK_FALSE(message(spec_of(ConstructionId::HypercubeLayers, {}, {}, 1)).empty());
    ConstructionSpec leila = spec_of(ConstructionId::Leila, 4);
    leila.alpha = 1.5;
    CHECK(message(leila).find("alpha") != std::string::npos);
    CHECK(message(refined(4, {0.0, 0.5, 0.5})).find("p1") != std::string::npos);
    ConstructionSpec m = spec_of(ConstructionId::MissingEdge, 5);
    m.matching = {{1, 2}};
    CHECK_FALSE(message(m).empty());
    CHECK_THROWS_AS(parse_construction_id("nope"), InvalidInput);
}

TEST_CASE("refined_dead_end never has a Hamiltonian transversal") {
    for (int r = 4; r <= 8; ++r) {
        const PartiteGraph g = build(spec_of(ConstructionId::RefinedDeadEnd, r));
        CHECK(check_family_free(g, ForbiddenFamily::hamilton_cycle()).family_free());
    }
}

TEST_CASE("glue_paths of two broken paths has no connected transversal") {
    const PartiteGraph c4 = glue_paths(broken_path(), broken_path());
    CHECK(c4.host() == cycle_host(4));
    CHECK(validate(c4).ok());
    CHECK(check_family_free(c4, ForbiddenFamily::all_trees(4)).family_free());
    enumerate_transversals(c4, [&](const Transversal& t) {
        CHECK(transversal_graph(c4, t).edge_count() <= 2);
        return true;
    });
}

TEST_CASE("glue_paths restricts to its inputs") {
    const PartiteGraph g2 = complete_path(2);
    const PartiteGraph c = glue_paths(broken_path(), g2);
    CHECK(pair_density(c, 0, 1) == doctest::Approx(pair_density(broken_path(), 0, 1)));
    CHECK(pair_density(c, 1, 2) == doctest::Approx(pair_density(broken_path(), 1, 2)));
    CHECK(pair_density(c, 0, 3) == doctest::Approx(1.0));
    CHECK(pair_density(c, 2, 3) == doctest::Approx(1.0));
}

TEST_CASE("glue_paths with a complete second path: connectivity follows the first") {
    const PartiteGraph c = glue_paths(broken_path(), complete_path(3));
    enumerate_transversals(c, [&](const Transversal& t) {
        const SmallGraph s = transversal_graph(c, t);
        CHECK(is_connected(s) == (s.has_edge(0, 1) || s.has_edge(1, 2)));
        return true;
    });
}

TEST_CASE("glue_paths rejects mismatched endpoints") {
    PartiteGraph wide(path_host(3), {{{"a", 0.5}, {"a2", 0.5}}, {{"x", 1.0}}, {{"b", 1.0}}});
    CHECK_THROWS_AS(glue_paths(broken_path(), wide), InvalidInput);
    PartiteGraph reweighted(path_host(3), {{{"a", 1.0}}, {{"x", 1.0}}, {{"b", 1.0}}});
    CHECK_NOTHROW(glue_paths(broken_path(), reweighted));
    CHECK_THROWS_AS(glue_paths(broken_path(), build(spec_of(ConstructionId::Parity, 3))), InvalidInput);
}

}  // TEST_SUITE

TEST_SUITE("known_discrepancies") {

TEST_CASE("refined_dead_end(4) at the optimal triple reaches the claimed density") {
    const double claimed = claimed_density(spec_of(ConstructionId::RefinedDeadEnd, 4));
    CHECK(claimed == doctest::Approx(0.5707).epsilon(1e-4));
    CHECK(density_profile(build(spec_of(ConstructionId::RefinedDeadEnd, 4))).minimum ==
          doctest::Approx(claimed).epsilon(1e-9));
}

TEST_CASE("invariant: refined pair-density classes equal the stated forms") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    int mismatches[4] = {0, 0, 0, 0};
    for (int r = 4; r <= 8; ++r) {
        for (int trial = 0; trial < 100; ++trial) {
            const RefinedTriple p{unit(rng), unit(rng), unit(rng)};
            const PartiteGraph g = build(refined(r, p));
            const RefinedForms f = stated_forms(r, p);
            mismatches[0] += std::abs(pair_density(g, 0, 1) - f.within) > 1e-12;
            mismatches[1] += std::abs(pair_density(g, 0, r - 2) - f.to_second_last) > 1e-12;
            mismatches[2] += std::abs(pair_density(g, 0, r - 1) - f.to_last) > 1e-12;
            mismatches[3] += std::abs(pair_density(g, r - 2, r - 1) - f.second_last_to_last) > 1e-12;
        }
    }
    CHECK(mismatches[0] == 0);
    CHECK(mismatches[1] == 0);
    CHECK(mismatches[2] == 0);
    CHECK(mismatches[3] == 0);
}

}  // TEST_SUITE

TEST_SUITE("constructions") {

TEST_CASE("refined class to the last part follows the edge rule as built") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    for (int r = 4; r <= 8; ++r) {
        for (int trial = 0; trial < 100; ++trial) {
            const RefinedTriple p{unit(rng), unit(rng), unit(rng)};
            // Vertex 0 joins one label of weight (1-p3)/(r-2); vertex r-1 joins every label.
            const double literal = (1 - p.p1) + p.p1 * (1 - p.p3) / (r - 2);
            CHECK(std::abs(pair_density(build(refined(r, p)), 0, r - 1) - literal) <= 1e-12);
        }
    }
}

TEST_CASE("optimal refined triple balances the stated forms") {
    for (int r = 4; r <= 8; ++r) {
        const RefinedTriple p = optimal_refined_triple(r);
        const RefinedForms f = stated_forms(r, p);
        CHECK(f.to_second_last == doctest::Approx(f.within).epsilon(1e-12));
        CHECK(f.to_last >= f.within - 1e-12);
        CHECK(f.second_last_to_last >= f.within - 1e-12);
    }
}

}  // TEST_SUITE
