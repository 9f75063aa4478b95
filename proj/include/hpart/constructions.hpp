#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpart/family.hpp"
#include "hpart/partite_graph.hpp"
#include "hpart/transversal.hpp"

namespace hpart {

enum class ConstructionId {
    StarLeaf,
    Leila,
    MissingEdge,
    TwoColour,
    Parity,
    RefinedDeadEnd,
    PendantTriangle,
    IntersectingPalette,
    HypercubeLayers,
};

std::string construction_name(ConstructionId id);
ConstructionId parse_construction_id(const std::string& name);

struct ConstructionSpec {
    ConstructionId id = ConstructionId::StarLeaf;
    std::optional<int> r;
    std::optional<int> t;
    std::optional<int> d;
    std::optional<double> alpha;                  // leila; default optimal
    std::optional<double> p1, p2, p3;             // refined_dead_end; default optimal triple
    std::vector<std::pair<int, int>> matching;    // missing_edge: further host edges to delete

    std::string label() const;
};

struct RefinedTriple {
    double p1, p2, p3;
};
RefinedTriple optimal_refined_triple(int r);

// Throws InvalidInput naming the violated bound.
PartiteGraph build(const ConstructionSpec& spec);

// Closed form the construction is claimed to attain.
double claimed_density(const ConstructionSpec& spec);
ForbiddenFamily claimed_family(const ConstructionSpec& spec);

// Upper bound on transversal component order (intersecting_palette, hypercube_layers).
std::optional<int> claimed_component_bound(const ConstructionSpec& spec);

struct VerificationOutcome {
    std::string label;
    bool pass = false;
    double density = 0.0;
    double claimed = 0.0;
    std::string family;
    std::uint64_t transversals = 0;
    std::optional<int> component_size;
    std::optional<int> component_bound;
    std::string diagnostics;  // first discrepancy, empty on pass
};

VerificationOutcome verify(const ConstructionSpec& spec, std::uint64_t cap = default_transversal_cap);

// The full set of paper constructions checked by `verify-construction --all`.
std::vector<ConstructionSpec> paper_construction_suite();

// C_r-partite graph from two path-hosted graphs whose endpoint parts coincide.
// g1's path becomes cycle vertices 0..a-1; g2's interior runs back from a to a+b-3.
PartiteGraph glue_paths(const PartiteGraph& g1, const PartiteGraph& g2);

}  // namespace hpart
