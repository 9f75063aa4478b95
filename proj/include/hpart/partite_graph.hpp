#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpart/host_graph.hpp"

namespace hpart {

/// Comparison tolerance for weights and densities throughout the toolkit.
inline constexpr double tolerance = 1e-9;
/// Per-part weight sums must equal 1 to within this.
inline constexpr double weight_sum_tolerance = 1e-12;

struct PartVertex {
    std::string id;
    double weight = 0.0;
};

struct VertexRef {
    int part = 0;
    int index = 0;
    friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

/// Relation between the parts of one host edge; rows index the smaller host vertex.
class Biadjacency {
public:
    Biadjacency() = default;
    Biadjacency(int rows, int cols) : rows_(rows), cols_(cols), bits_(static_cast<std::size_t>(rows * cols), 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool test(int i, int j) const { return bits_[static_cast<std::size_t>(i * cols_ + j)] != 0; }
    void set(int i, int j, bool on = true) { bits_[static_cast<std::size_t>(i * cols_ + j)] = on ? 1 : 0; }
    int count() const;

    friend bool operator==(const Biadjacency&, const Biadjacency&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Weighted H-partite graph: one part per host vertex, a probability weight per vertex,
/// edges only between parts of adjacent host vertices.
///
/// Edges offered between non-adjacent parts (or inside a part) are retained as stray
/// edges so that validate() can report them; they never contribute to densities or
/// transversal graphs.
class PartiteGraph {
public:
    PartiteGraph() = default;
    PartiteGraph(HostGraph host, std::vector<std::vector<PartVertex>> parts);

    const HostGraph& host() const { return host_; }
    int part_count() const { return host_.order(); }
    int part_size(int x) const { return static_cast<int>(parts_[x].size()); }
    const std::vector<PartVertex>& part(int x) const { return parts_[x]; }
    const PartVertex& vertex(VertexRef v) const { return parts_[v.part][v.index]; }
    // -1 when no vertex in part x has that id.
    int find_vertex(int x, const std::string& id) const;

    void add_edge(VertexRef a, VertexRef b);
    bool has_edge(VertexRef a, VertexRef b) const;
    void set_weight(VertexRef v, double w) { parts_[v.part][v.index].weight = w; }

    // Biadjacency of host edge e = (u, v), rows from part u, columns from part v.
    const Biadjacency& biadjacency(int host_edge) const { return biadjacency_[host_edge]; }
    const std::vector<std::pair<VertexRef, VertexRef>>& stray_edges() const { return stray_; }
    int edge_count() const;

    std::vector<std::uint64_t> part_sizes() const;

private:
    HostGraph host_;
    std::vector<std::vector<PartVertex>> parts_;
    std::vector<Biadjacency> biadjacency_;
    std::vector<std::pair<VertexRef, VertexRef>> stray_;
};

struct Violation {
    enum class Kind { WeightSum, WeightRange, StrayEdge, EmptyPart, PartSizeMismatch };
    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

ValidationReport validate(const PartiteGraph& g);
// Throws InvalidInput carrying the report text when g is not valid.
void require_valid(const PartiteGraph& g);

struct DensityProfile {
    std::vector<double> values;  // indexed like host().edges()
    double minimum = 1.0;        // vacuous minimum for edgeless hosts
};

DensityProfile density_profile(const PartiteGraph& g);

// Uniform-weight blow-up with N*w(v) copies of every positive-weight vertex.
PartiteGraph blow_up(const PartiteGraph& g, int copies_per_unit);

// Same parts and weights over a spanning subgraph of the host; edges over dropped host
// edges disappear.
PartiteGraph restrict_to_host(const PartiteGraph& g, const HostGraph& sub_host);

}  // namespace hpart
