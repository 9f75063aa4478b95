#pragma once

#include <string>
#include <vector>

#include "hpart/small_graph.hpp"

namespace hpart {

/// A family of forbidden transversal subgraphs. Special kinds have dedicated
/// containment tests; everything else goes through subgraph isomorphism.
class ForbiddenFamily {
public:
    enum class Kind { AllTrees, HamiltonCycle, OddCycles, Clique, ExplicitList, Path, Cycle, Factor };

    static ForbiddenFamily all_trees(int order);
    static ForbiddenFamily hamilton_cycle();
    static ForbiddenFamily odd_cycles();
    static ForbiddenFamily clique(int order);
    static ForbiddenFamily path(int order);
    static ForbiddenFamily cycle(int order);
    // copies vertex-disjoint copies of a named piece: "K3", "C4", "P3", ...
    static ForbiddenFamily factor(const std::string& piece, int copies);
    static ForbiddenFamily explicit_list(std::vector<SmallGraph> members);

    Kind kind() const { return kind_; }
    int order() const { return order_; }
    int copies() const { return copies_; }
    const std::vector<SmallGraph>& members() const { return members_; }

    // Mini-language form: trees:T, hamilton, oddcycles, clique:T, path:L, cycle:L,
    // factor:K3x2, list (members travel separately).
    std::string spec() const;

    // Smallest host order on which a member could appear; larger members never do.
    int min_vertices() const;

    friend bool operator==(const ForbiddenFamily&, const ForbiddenFamily&) = default;

private:
    Kind kind_ = Kind::AllTrees;
    int order_ = 0;
    int copies_ = 1;
    std::string piece_;
    std::vector<SmallGraph> members_;  // fixed patterns for Clique/Path/Cycle/Factor/ExplicitList
};

// Parses every mini-language form except list:FILE (file access is the caller's job).
ForbiddenFamily parse_family(const std::string& spec);

// Parses K<t>, C<t>, P<t>.
SmallGraph named_graph(const std::string& name);

bool contains_member(const SmallGraph& s, const ForbiddenFamily& f);

}  // namespace hpart
