#pragma once

#include <optional>

#include "hpart/family.hpp"
#include "hpart/partite_graph.hpp"
#include "hpart/transversal.hpp"

namespace hpart {

struct Certificate {
    enum class Verdict { FamilyFree, Violated };
    Verdict verdict = Verdict::FamilyFree;
    std::optional<Transversal> witness;  // lexicographically first violating transversal
    DensityProfile density;
    ForbiddenFamily family;

    bool family_free() const { return verdict == Verdict::FamilyFree; }
};

// Rejects families with members larger than the host (ExplicitList invariant).
void check_family_fits(const PartiteGraph& g, const ForbiddenFamily& f);

Certificate check_family_free(const PartiteGraph& g, const ForbiddenFamily& f,
                              std::uint64_t cap = default_transversal_cap);

// Independent re-check: re-derives the witness verdict or re-enumerates for FamilyFree.
bool recheck_certificate(const PartiteGraph& g, const Certificate& c, std::uint64_t cap = default_transversal_cap);

struct ComponentBound {
    int size = 0;
    Transversal witness;  // first transversal attaining size
};

ComponentBound max_transversal_component(const PartiteGraph& g, std::uint64_t cap = default_transversal_cap);

}  // namespace hpart
