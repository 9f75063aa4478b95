#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hpart/family.hpp"
#include "hpart/partite_graph.hpp"
#include "hpart/transversal.hpp"

namespace hpart {

/// Counter-based generator: every draw is a pure function of (seed, part, sample index),
/// so any partition of the sample range reproduces the same stream.
struct CounterRng {
    std::uint64_t seed = 0;
    // Uniform in [0, 1) with 53 random bits.
    double uniform(std::uint64_t part, std::uint64_t sample) const;
};

// Representative of each part drawn with probability equal to its weight.
Transversal sample_transversal(const PartiteGraph& g, const CounterRng& rng, std::uint64_t sample);

// Sum over violating transversals of the product of chosen weights.
double exact_property_probability(const PartiteGraph& g, const ForbiddenFamily& f,
                                  std::uint64_t cap = default_transversal_cap);

struct SampleReport {
    double estimate = 0.0;
    double half_width = 0.0;  // 1.96 sqrt(p(1-p)/n)
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

// Requires n >= 100.
SampleReport estimate_property(const PartiteGraph& g, const ForbiddenFamily& f, std::uint64_t n,
                               std::uint64_t seed, int jobs = 1);

// Empirical frequency, per host edge, of the chosen pair being joined.
std::vector<double> edge_marginals(const PartiteGraph& g, std::uint64_t n, std::uint64_t seed);

struct DependenceReport {
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 1.0;
    double critical_1pct = 0.0;
    bool inconclusive = false;
    bool rejected_at_1pct = false;
    int categories_a = 0;  // after pooling
    int categories_b = 0;
    std::uint64_t n = 0;
};

// Chi-square test of independence between the labelled induced transversal subgraphs
// on A and on B. Marginal categories are pooled until every expected cell is >= 5.
DependenceReport one_dependence_check(const PartiteGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                                      std::uint64_t n, std::uint64_t seed);

struct AbsorptionWitness {
    int vertex = -1;                 // index in the centre part
    std::vector<int> missed_leaves;  // host vertices whose part the vertex has no edge into
    int bound = 0;                   // floor((1-p)/alpha * N)
};

// Star host with centre of degree N = n-1; A indexes centre-part vertices.
AbsorptionWitness star_absorption_witness(const PartiteGraph& g, const std::vector<int>& a, double p);

}  // namespace hpart
