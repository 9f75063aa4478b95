#include "hpart/partite_graph.hpp"

#include <cmath>
#include <sstream>

#include "hpart/errors.hpp"

namespace hpart {

int Biadjacency::count() const {
    int c = 0;
    for (auto b : bits_) c += b;
    return c;
}

PartiteGraph::PartiteGraph(HostGraph host, std::vector<std::vector<PartVertex>> parts)
    : host_(std::move(host)), parts_(std::move(parts)) {
    if (static_cast<int>(parts_.size()) != host_.order()) {
        throw InvalidInput("expected " + std::to_string(host_.order()) + " parts, got " +
                           std::to_string(parts_.size()));
    }
    for (const auto& e : host_.edges()) {
        biadjacency_.emplace_back(part_size(e.u), part_size(e.v));
    }
}

int PartiteGraph::find_vertex(int x, const std::string& id) const {
    for (int i = 0; i < part_size(x); ++i)
        if (parts_[x][i].id == id) return i;
    return -1;
}

void PartiteGraph::add_edge(VertexRef a, VertexRef b) {
    auto in_range = [&](VertexRef v) {
        return v.part >= 0 && v.part < part_count() && v.index >= 0 && v.index < part_size(v.part);
    };
    if (!in_range(a) || !in_range(b)) throw InvalidInput("edge endpoint does not name a vertex");
    int e = host_.edge_index(a.part, b.part);
    if (e < 0) {
        stray_.emplace_back(a, b);
        return;
    }
    if (a.part > b.part) std::swap(a, b);
    biadjacency_[e].set(a.index, b.index);
}

bool PartiteGraph::has_edge(VertexRef a, VertexRef b) const {
    int e = host_.edge_index(a.part, b.part);
    if (e < 0) return false;
    if (a.part > b.part) std::swap(a, b);
    return biadjacency_[e].test(a.index, b.index);
}

int PartiteGraph::edge_count() const {
    int c = 0;
    for (const auto& b : biadjacency_) c += b.count();
    return c;
}

std::vector<std::uint64_t> PartiteGraph::part_sizes() const {
    std::vector<std::uint64_t> s;
    for (const auto& p : parts_) s.push_back(p.size());
    return s;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.message << '\n';
    return os.str();
}

ValidationReport validate(const PartiteGraph& g) {
    ValidationReport report;
    for (int x = 0; x < g.part_count(); ++x) {
        if (g.part_size(x) == 0) {
            report.violations.push_back({Violation::Kind::EmptyPart, "part " + std::to_string(x) + " is empty"});
            continue;
        }
        double sum = 0.0;
        for (const auto& v : g.part(x)) {
            if (!(v.weight >= 0.0 && v.weight <= 1.0)) {
                report.violations.push_back({Violation::Kind::WeightRange, "vertex '" + v.id + "' in part " +
                                                                               std::to_string(x) + " has weight outside [0,1]"});
            }
            sum += v.weight;
        }
        if (std::abs(sum - 1.0) > weight_sum_tolerance) {
            std::ostringstream os;
            os.precision(17);
            os << "part " << x << " weights sum to " << sum << ", not 1";
            report.violations.push_back({Violation::Kind::WeightSum, os.str()});
        }
    }
    for (auto [a, b] : g.stray_edges()) {
        report.violations.push_back(
            {Violation::Kind::StrayEdge, "edge " + g.vertex(a).id + "@" + std::to_string(a.part) + " -- " +
                                             g.vertex(b).id + "@" + std::to_string(b.part) +
                                             " joins parts whose host vertices are not adjacent"});
    }
    return report;
}

void require_valid(const PartiteGraph& g) {
    auto report = validate(g);
    if (!report.ok()) throw InvalidInput("invalid H-partite graph:\n" + report.to_string());
}

DensityProfile density_profile(const PartiteGraph& g) {
    require_valid(g);
    DensityProfile profile;
    const auto& edges = g.host().edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& a = g.biadjacency(static_cast<int>(e));
        const auto& pu = g.part(edges[e].u);
        const auto& pv = g.part(edges[e].v);
        double alpha = 0.0;
        for (int i = 0; i < a.rows(); ++i) {
            double row = 0.0;
            for (int j = 0; j < a.cols(); ++j)
                if (a.test(i, j)) row += pv[j].weight;
            alpha += pu[i].weight * row;
        }
        alpha = std::min(1.0, std::max(0.0, alpha));
        profile.values.push_back(alpha);
        profile.minimum = e == 0 ? alpha : std::min(profile.minimum, alpha);
    }
    return profile;
}

PartiteGraph blow_up(const PartiteGraph& g, int copies_per_unit) {
    require_valid(g);
    if (copies_per_unit < 1) throw InvalidInput("blow-up factor must be positive");
    const double n = copies_per_unit;
    // first_copy[x][i] = index of the first clone of vertex i in the new part x.
    std::vector<std::vector<int>> first_copy(g.part_count()), copies(g.part_count());
    std::vector<std::vector<PartVertex>> parts(g.part_count());
    for (int x = 0; x < g.part_count(); ++x) {
        for (const auto& v : g.part(x)) {
            double scaled = n * v.weight;
            double rounded = std::round(scaled);
            if (std::abs(scaled - rounded) > 1e-9) {
                std::ostringstream os;
                os.precision(17);
                os << "vertex '" << v.id << "' in part " << x << ": N*w = " << scaled << " is not an integer";
                throw InvalidInput(os.str());
            }
            first_copy[x].push_back(static_cast<int>(parts[x].size()));
            copies[x].push_back(static_cast<int>(rounded));
            for (int k = 0; k < static_cast<int>(rounded); ++k) {
                parts[x].push_back({v.id + "#" + std::to_string(k), 1.0 / n});
            }
        }
    }
    PartiteGraph out(g.host(), std::move(parts));
    const auto& edges = g.host().edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& a = g.biadjacency(static_cast<int>(e));
        const int x = edges[e].u, y = edges[e].v;
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) {
                if (!a.test(i, j)) continue;
                for (int s = 0; s < copies[x][i]; ++s)
                    for (int t = 0; t < copies[y][j]; ++t)
                        out.add_edge({x, first_copy[x][i] + s}, {y, first_copy[y][j] + t});
            }
    }
    return out;
}

PartiteGraph restrict_to_host(const PartiteGraph& g, const HostGraph& sub_host) {
    if (sub_host.order() != g.host().order()) throw InvalidInput("sub-host must have the same vertex set");
    for (const auto& e : sub_host.edges())
        if (!g.host().adjacent(e.u, e.v)) throw InvalidInput("sub-host has an edge the host lacks");
    std::vector<std::vector<PartVertex>> parts;
    for (int x = 0; x < g.part_count(); ++x) parts.push_back(g.part(x));
    PartiteGraph out(sub_host, std::move(parts));
    const auto& edges = sub_host.edges();
    for (const auto& e : edges) {
        const auto& a = g.biadjacency(g.host().edge_index(e.u, e.v));
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                if (a.test(i, j)) out.add_edge({e.u, i}, {e.v, j});
    }
    return out;
}

}  // namespace hpart
