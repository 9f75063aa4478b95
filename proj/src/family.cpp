#include "hpart/family.hpp"

#include <regex>

#include "hpart/errors.hpp"

namespace hpart {

ForbiddenFamily ForbiddenFamily::all_trees(int order) {
    if (order < 1) throw InvalidInput("trees:T needs T >= 1");
    ForbiddenFamily f;
    f.kind_ = Kind::AllTrees;
    f.order_ = order;
    return f;
}

ForbiddenFamily ForbiddenFamily::hamilton_cycle() {
    ForbiddenFamily f;
    f.kind_ = Kind::HamiltonCycle;
    return f;
}

ForbiddenFamily ForbiddenFamily::odd_cycles() {
    ForbiddenFamily f;
    f.kind_ = Kind::OddCycles;
    return f;
}

ForbiddenFamily ForbiddenFamily::clique(int order) {
    if (order < 2) throw InvalidInput("clique:T needs T >= 2");
    ForbiddenFamily f;
    f.kind_ = Kind::Clique;
    f.order_ = order;
    f.members_ = {complete_graph(order)};
    return f;
}

ForbiddenFamily ForbiddenFamily::path(int order) {
    if (order < 2) throw InvalidInput("path:L needs L >= 2");
    ForbiddenFamily f;
    f.kind_ = Kind::Path;
    f.order_ = order;
    f.members_ = {path_graph(order)};
    return f;
}

ForbiddenFamily ForbiddenFamily::cycle(int order) {
    if (order < 3) throw InvalidInput("cycle:L needs L >= 3");
    ForbiddenFamily f;
    f.kind_ = Kind::Cycle;
    f.order_ = order;
    f.members_ = {cycle_graph(order)};
    return f;
}

ForbiddenFamily ForbiddenFamily::factor(const std::string& piece, int copies) {
    if (copies < 1) throw InvalidInput("factor needs at least one copy");
    SmallGraph one = named_graph(piece);
    SmallGraph all = one;
    for (int i = 1; i < copies; ++i) all = disjoint_union(all, one);
    ForbiddenFamily f;
    f.kind_ = Kind::Factor;
    f.order_ = one.order();
    f.copies_ = copies;
    f.piece_ = piece;
    f.members_ = {all};
    return f;
}

ForbiddenFamily ForbiddenFamily::explicit_list(std::vector<SmallGraph> members) {
    if (members.empty()) throw InvalidInput("explicit family list is empty");
    for (const auto& m : members)
        if (m.edge_count() == 0) throw InvalidInput("explicit family members must have at least one edge");
    ForbiddenFamily f;
    f.kind_ = Kind::ExplicitList;
    f.members_ = std::move(members);
    return f;
}

std::string ForbiddenFamily::spec() const {
    switch (kind_) {
        case Kind::AllTrees: return "trees:" + std::to_string(order_);
        case Kind::HamiltonCycle: return "hamilton";
        case Kind::OddCycles: return "oddcycles";
        case Kind::Clique: return "clique:" + std::to_string(order_);
        case Kind::Path: return "path:" + std::to_string(order_);
        case Kind::Cycle: return "cycle:" + std::to_string(order_);
        case Kind::Factor: return "factor:" + piece_ + "x" + std::to_string(copies_);
        case Kind::ExplicitList: return "list";
    }
    return {};
}

int ForbiddenFamily::min_vertices() const {
    switch (kind_) {
        case Kind::AllTrees: return order_;
        case Kind::HamiltonCycle:
        case Kind::OddCycles: return 3;
        case Kind::ExplicitList: {
            int best = SmallGraph::max_order;
            for (const auto& m : members_) best = std::min(best, m.order());
            return best;
        }
        default: return members_.front().order();
    }
}

SmallGraph named_graph(const std::string& name) {
    static const std::regex shape(R"(([KCP])(\d+))");
    std::smatch m;
    if (!std::regex_match(name, m, shape)) throw InvalidInput("unknown graph name '" + name + "'");
    const int n = std::stoi(m[2].str());
    if (n < 1 || n > SmallGraph::max_order) throw InvalidInput("graph order out of range in '" + name + "'");
    switch (m[1].str()[0]) {
        case 'K': return complete_graph(n);
        case 'P': return path_graph(n);
        default:
            if (n < 3) throw InvalidInput("cycles need at least 3 vertices");
            return cycle_graph(n);
    }
}

ForbiddenFamily parse_family(const std::string& spec) {
    static const std::regex numbered(R"((trees|clique|path|cycle):(\d+))"), fac(R"(factor:([KCP]\d+)x(\d+))");
    std::smatch m;
    if (spec == "hamilton") return ForbiddenFamily::hamilton_cycle();
    if (spec == "oddcycles") return ForbiddenFamily::odd_cycles();
    if (std::regex_match(spec, m, numbered)) {
        const std::string kind = m[1].str();
        const int n = std::stoi(m[2].str());
        if (kind == "trees") return ForbiddenFamily::all_trees(n);
        if (kind == "clique") return ForbiddenFamily::clique(n);
        if (kind == "path") return ForbiddenFamily::path(n);
        return ForbiddenFamily::cycle(n);
    }
    if (std::regex_match(spec, m, fac)) return ForbiddenFamily::factor(m[1].str(), std::stoi(m[2].str()));
    throw InvalidInput("unknown family '" + spec + "'");
}

bool contains_member(const SmallGraph& s, const ForbiddenFamily& f) {
    switch (f.kind()) {
        case ForbiddenFamily::Kind::AllTrees:
            // A tree on t vertices embeds iff some component has at least t vertices.
            return largest_component_order(s) >= f.order();
        case ForbiddenFamily::Kind::HamiltonCycle: return has_hamilton_cycle(s);
        case ForbiddenFamily::Kind::OddCycles: return !is_bipartite(s);
        default:
            for (const auto& m : f.members())
                if (m.order() <= s.order() && contains_subgraph(s, m)) return true;
            return false;
    }
}

}  // namespace hpart
