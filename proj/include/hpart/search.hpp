#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpart/certificate.hpp"
#include "hpart/family.hpp"
#include "hpart/partite_graph.hpp"

namespace hpart {

/// Weight-free skeleton of an H-partite graph.
struct CombinatorialPattern {
    HostGraph host;
    std::vector<int> part_sizes;
    std::vector<Biadjacency> blocks;  // indexed like host.edges(), rows from the smaller endpoint

    friend bool operator==(const CombinatorialPattern&, const CombinatorialPattern&) = default;
};

using PartWeights = std::vector<std::vector<double>>;

CombinatorialPattern empty_pattern(const HostGraph& host, const std::vector<int>& part_sizes);
CombinatorialPattern pattern_of(const PartiteGraph& g);
// Vertex ids are "0", "1", ... within each part.
PartiteGraph realize(const CombinatorialPattern& p, const PartWeights& weights);
PartWeights uniform_weights(const std::vector<int>& part_sizes);

bool pattern_family_free(const CombinatorialPattern& p, const ForbiddenFamily& f,
                         std::uint64_t cap = default_transversal_cap);

// Host automorphisms that map every vertex to one with the same cap.
std::vector<std::vector<int>> cap_respecting_automorphisms(const HostGraph& host, const std::vector<int>& caps);

// Lexicographic minimum, over the given host automorphisms and all within-part
// permutations, of: image part sizes, then block bits row-major with host edges in
// colex order. One character per entry.
std::string canonical_key(const CombinatorialPattern& p, const std::vector<std::vector<int>>& automorphisms);
// The pattern whose identity serialization is the key.
CombinatorialPattern pattern_from_key(const HostGraph& host, const std::string& key);

// Euclidean projection onto the probability simplex, in place.
void project_to_simplex(std::vector<double>& v);

// max_w min_i (M w)_i over the simplex; M is rows x cols, row-major.
struct MatrixGameSolution {
    std::vector<double> strategy;
    double value = 0.0;
};
MatrixGameSolution solve_matrix_game(const std::vector<double>& payoff, int rows, int cols);

struct OptimizerOptions {
    int starts = 64;
    std::uint64_t seed = 0;
    std::vector<double> betas{10.0, 31.6227766016838, 100.0, 316.227766016838, 1000.0, 3162.27766016838, 10000.0, 1e5, 1e6, 1e7, 1e8};
    int steps_per_beta = 200;
    int polish_sweeps = 50;
};

struct WeightedOptimum {
    PartWeights weights;
    double density = 0.0;
};

// Local maximin of the pair densities; a lower bound on the pattern's optimum.
WeightedOptimum optimize_weights(const CombinatorialPattern& p, const OptimizerOptions& options = {});
// Cheap variant used while hill climbing.
OptimizerOptions quick_optimizer_options(std::uint64_t seed);

// Minimum pair density of a pattern under the given weights.
double pattern_density(const CombinatorialPattern& p, const PartWeights& weights);

enum class SearchMode { Exhaustive, Stochastic };

inline constexpr std::uint64_t default_exhaustive_budget = std::uint64_t{1} << 24;

struct SearchProblem {
    HostGraph host;
    ForbiddenFamily family;
    std::vector<int> caps;  // empty means host degrees
    SearchMode mode = SearchMode::Exhaustive;
    std::uint64_t budget = default_exhaustive_budget;  // exhaustive: max 2^(pattern bits)
    int restarts = 1000;                                // stochastic
    int climb_steps = 40;                               // stochastic, per restart
    std::uint64_t seed = 0;
    int jobs = 1;
    bool use_symmetry = true;
    OptimizerOptions optimizer;
};

struct SearchResult {
    double best_density = 0.0;
    CombinatorialPattern best_pattern;
    PartWeights best_weights;
    std::string best_key;
    Certificate certificate;
    std::vector<int> caps;
    std::uint64_t patterns_examined = 0;     // freeness decisions taken
    std::uint64_t patterns_family_free = 0;  // edge-maximal family-free patterns reached
    std::uint64_t patterns_optimized = 0;    // distinct patterns sent to the optimizer
    std::vector<std::string> warnings;
};

std::vector<int> default_caps(const HostGraph& host);

// Exhaustive mode refuses (InvalidInput) when 2^(pattern bits) exceeds the budget.
SearchResult search(const SearchProblem& problem);

}  // namespace hpart
