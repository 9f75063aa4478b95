#include "hpart/certificate.hpp"

#include <cmath>

#include "hpart/errors.hpp"

namespace hpart {

void check_family_fits(const PartiteGraph& g, const ForbiddenFamily& f) {
    if (f.kind() != ForbiddenFamily::Kind::ExplicitList) return;
    for (const auto& m : f.members()) {
        if (m.order() > g.part_count()) {
            throw InvalidInput("family member on " + std::to_string(m.order()) + " vertices exceeds host order " +
                               std::to_string(g.part_count()));
        }
    }
}

Certificate check_family_free(const PartiteGraph& g, const ForbiddenFamily& f, std::uint64_t cap) {
    check_family_fits(g, f);
    Certificate cert;
    cert.density = density_profile(g);
    cert.family = f;
    enumerate_transversals(
        g,
        [&](const Transversal& t) {
            if (contains_member(transversal_graph(g, t), f)) {
                cert.verdict = Certificate::Verdict::Violated;
                cert.witness = t;
                return false;
            }
            return true;
        },
        cap);
    return cert;
}

bool recheck_certificate(const PartiteGraph& g, const Certificate& c, std::uint64_t cap) {
    auto profile = density_profile(g);
    if (profile.values.size() != c.density.values.size()) return false;
    for (std::size_t i = 0; i < profile.values.size(); ++i)
        if (std::abs(profile.values[i] - c.density.values[i]) > tolerance) return false;
    if (c.verdict == Certificate::Verdict::Violated) {
        return c.witness && is_valid_transversal(g, *c.witness) &&
               contains_member(transversal_graph(g, *c.witness), c.family);
    }
    bool clean = true;
    enumerate_transversals(
        g,
        [&](const Transversal& t) {
            clean = !contains_member(transversal_graph(g, t), c.family);
            return clean;
        },
        cap);
    return clean;
}

ComponentBound max_transversal_component(const PartiteGraph& g, std::uint64_t cap) {
    require_valid(g);
    ComponentBound best;
    enumerate_transversals(
        g,
        [&](const Transversal& t) {
            int size = largest_component_order(transversal_graph(g, t));
            if (size > best.size) {
                best.size = size;
                best.witness = t;
            }
            return best.size < g.part_count();
        },
        cap);
    return best;
}

}  // namespace hpart
