#include "hpart/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "hpart/certificate.hpp"
#include "hpart/errors.hpp"
#include "hpart/thresholds.hpp"

namespace hpart {

namespace {

struct NamedId {
    const char* name;
    ConstructionId id;
};

constexpr NamedId kIds[] = {
    {"star_leaf", ConstructionId::StarLeaf},
    {"leila", ConstructionId::Leila},
    {"missing_edge", ConstructionId::MissingEdge},
    {"two_colour", ConstructionId::TwoColour},
    {"parity", ConstructionId::Parity},
    {"refined_dead_end", ConstructionId::RefinedDeadEnd},
    {"pendant_triangle", ConstructionId::PendantTriangle},
    {"intersecting_palette", ConstructionId::IntersectingPalette},
    {"hypercube_layers", ConstructionId::HypercubeLayers},
};

// Pendant-triangle weights to 17 significant digits.
constexpr double kTwoMinusSqrt3 = 0.26794919243112270;      // 2 - sqrt3
constexpr double kTwoSqrt3MinusThree = 0.46410161513775459;  // 2 sqrt3 - 3
constexpr double kSqrt3MinusOne = 0.73205080756887729;       // sqrt3 - 1

int need_int(const std::optional<int>& v, const char* what, int lower, const std::string& who) {
    if (!v) throw InvalidInput(who + " needs --" + what);
    if (*v < lower) throw InvalidInput(who + ": " + what + " must be >= " + std::to_string(lower) + ", got " + std::to_string(*v));
    return *v;
}

void need_open_unit(double v, const char* what, const std::string& who) {
    if (!(v > 0.0 && v < 1.0)) throw InvalidInput(who + ": " + what + " must lie in (0,1)");
}

std::string str(int v) { return std::to_string(v); }

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

void check_host_limit(int parts, const std::string& who) {
    if (parts > SmallGraph::max_order) throw InvalidInput(who + ": more than 64 parts is unsupported");
}

PartiteGraph build_star_leaf(int r) {
    // Centre part 0 holds 1..r-1; leaf part j holds v_j, joined to every centre vertex i != j.
    std::vector<std::vector<PartVertex>> parts(r);
    for (int i = 1; i < r; ++i) parts[0].push_back({str(i), 1.0 / (r - 1)});
    for (int j = 1; j < r; ++j) parts[j].push_back({"v" + str(j), 1.0});
    PartiteGraph g(star_host(r), std::move(parts));
    for (int i = 1; i < r; ++i)
        for (int j = 1; j < r; ++j)
            if (i != j) g.add_edge({0, i - 1}, {j, 0});
    return g;
}

PartiteGraph build_leila(int r, double alpha) {
    // Parts V_1..V_{r-1} = {i, r} -> host 0..r-2; V_r = {1..r-1} -> host r-1.
    std::vector<std::vector<PartVertex>> parts(r);
    for (int i = 1; i < r; ++i) parts[i - 1] = {{str(i), alpha}, {str(r), 1.0 - alpha}};
    for (int k = 1; k < r; ++k) parts[r - 1].push_back({str(k), 1.0 / (r - 1)});
    PartiteGraph g(complete_host(r), std::move(parts));
    for (int i = 0; i < r - 1; ++i)
        for (int j = i + 1; j < r - 1; ++j) g.add_edge({i, 1}, {j, 1});  // r -- r
    for (int i = 1; i < r; ++i)
        for (int k = 1; k < r; ++k)
            if (k != i) g.add_edge({r - 1, k - 1}, {i - 1, 0});  // centre k -- leaf label i
    return g;
}

PartiteGraph build_missing_edge(int r, const std::vector<std::pair<int, int>>& matching) {
    std::vector<std::pair<int, int>> drop{{0, 1}};
    std::vector<bool> covered(r, false);
    covered[0] = covered[1] = true;
    for (auto [a, b] : matching) {
        if (a < 0 || b < 0 || a >= r || b >= r || a == b) throw InvalidInput("missing_edge: matching edge out of range");
        if (covered[a] || covered[b]) throw InvalidInput("missing_edge: deleted edges must form a matching with {0,1}");
        covered[a] = covered[b] = true;
        drop.emplace_back(a, b);
    }
    std::vector<std::vector<PartVertex>> parts(r);
    parts[0] = {{"1", 1.0}};
    parts[1] = {{"2", 1.0}};
    for (int i = 2; i < r; ++i) parts[i] = {{"1", 0.5}, {"2", 0.5}};
    PartiteGraph g(remove_host_edges(complete_host(r), drop), std::move(parts));
    for (const auto& e : g.host().edges())
        for (int a = 0; a < g.part_size(e.u); ++a)
            for (int b = 0; b < g.part_size(e.v); ++b)
                if (g.part(e.u)[a].id == g.part(e.v)[b].id) g.add_edge({e.u, a}, {e.v, b});
    return g;
}

PartiteGraph build_two_colour(int r) {
    std::vector<std::vector<PartVertex>> parts(r);
    for (int i = 0; i < r - 2; ++i) parts[i] = {{"0", 0.5}, {"1", 0.5}};
    parts[r - 2] = {{"0", 1.0}};
    parts[r - 1] = {{"1", 1.0}};
    PartiteGraph g(complete_host(r), std::move(parts));
    for (const auto& e : g.host().edges()) {
        const bool last_pair = e.u == r - 2 && e.v == r - 1;
        for (int a = 0; a < g.part_size(e.u); ++a)
            for (int b = 0; b < g.part_size(e.v); ++b)
                if (last_pair || g.part(e.u)[a].id == g.part(e.v)[b].id) g.add_edge({e.u, a}, {e.v, b});
    }
    return g;
}

PartiteGraph build_parity(int r) {
    std::vector<std::vector<PartVertex>> parts(r, {{"0", 0.5}, {"1", 0.5}});
    PartiteGraph g(complete_host(r), std::move(parts));
    for (const auto& e : g.host().edges()) {
        g.add_edge({e.u, 0}, {e.v, 1});
        g.add_edge({e.u, 1}, {e.v, 0});
    }
    return g;
}

PartiteGraph build_refined_dead_end(int r, RefinedTriple p) {
    // V_i (host i-1, i <= r-2) = {0, r-1}; V_{r-1} = {0, r}; V_r = {1, ..., r-1}.
    std::vector<std::vector<PartVertex>> parts(r);
    for (int i = 0; i < r - 2; ++i) parts[i] = {{"0", p.p1}, {str(r - 1), 1.0 - p.p1}};
    parts[r - 2] = {{"0", p.p2}, {str(r), 1.0 - p.p2}};
    for (int k = 1; k <= r - 2; ++k) parts[r - 1].push_back({str(k), (1.0 - p.p3) / (r - 2)});
    parts[r - 1].push_back({str(r - 1), p.p3});
    PartiteGraph g(complete_host(r), std::move(parts));
    const int last = r - 1;
    // Among V_1..V_{r-1}: 0--0 and (r-1)--(r-1). V_{r-1}'s second vertex is r, which only
    // matches nothing here.
    for (int i = 0; i < r - 1; ++i)
        for (int j = i + 1; j < r - 1; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (g.part(i)[a].id == g.part(j)[b].id) g.add_edge({i, a}, {j, b});
    // V_i -- V_r for i <= r-2: x = r-1 joins everything, x = 0 joins label i.
    for (int i = 0; i < r - 2; ++i) {
        for (int y = 0; y < r - 1; ++y) {
            g.add_edge({i, 1}, {last, y});
            if (g.part(last)[y].id == str(i + 1)) g.add_edge({i, 0}, {last, y});
        }
    }
    // V_{r-1} -- V_r: 0 joins label r-1, r joins everything.
    for (int y = 0; y < r - 1; ++y) {
        g.add_edge({r - 2, 1}, {last, y});
        if (g.part(last)[y].id == str(r - 1)) g.add_edge({r - 2, 0}, {last, y});
    }
    return g;
}

PartiteGraph build_pendant_triangle() {
    // Host: triangle {1,2,3} with pendant edge 0-1.
    std::vector<std::vector<PartVertex>> parts(4);
    parts[0] = {{"v0", 1.0}};
    parts[1] = {{"v2", kTwoMinusSqrt3}, {"v3", kTwoMinusSqrt3}, {"vX", kTwoSqrt3MinusThree}};
    parts[2] = {{"v1", kTwoMinusSqrt3}, {"vY", kSqrt3MinusOne}};
    parts[3] = {{"v1", kTwoMinusSqrt3}, {"vY", kSqrt3MinusOne}};
    PartiteGraph g(k4_minus_p3_host(), std::move(parts));
    g.add_edge({0, 0}, {1, 0});
    g.add_edge({0, 0}, {1, 1});
    for (int i : {2, 3}) {
        g.add_edge({i, 0}, {1, i - 2});  // v1 in V_i -- v_i in V_1
        g.add_edge({i, 0}, {1, 2});      // v1 -- vX
        g.add_edge({i, 1}, {1, 2});      // vY -- vX
    }
    g.add_edge({2, 1}, {3, 1});
    return g;
}

// t-subsets of [2t-1] as bitmasks (bit k = element k+1), colexicographic order.
std::vector<std::uint32_t> palette_sets(int t) {
    std::vector<std::uint32_t> sets;
    for (std::uint32_t m = 0; m < (1U << (2 * t - 1)); ++m)
        if (std::popcount(m) == t) sets.push_back(m);
    return sets;
}

PartiteGraph build_intersecting_palette(int t, int r) {
    const auto sets = palette_sets(t);
    const int m = static_cast<int>(sets.size());
    std::vector<std::vector<PartVertex>> parts;
    const int base = r / m, extra = r % m;
    for (int s = 0; s < m; ++s) {
        const int block = base + (s < extra ? 1 : 0);
        for (int k = 0; k < block; ++k) {
            std::vector<PartVertex> part;
            for (int e = 0; e < 2 * t - 1; ++e)
                if ((sets[s] >> e) & 1U) part.push_back({str(e + 1), 1.0 / t});
            parts.push_back(std::move(part));
        }
    }
    PartiteGraph g(complete_host(r), std::move(parts));
    for (const auto& e : g.host().edges())
        for (int a = 0; a < g.part_size(e.u); ++a)
            for (int b = 0; b < g.part_size(e.v); ++b)
                if (g.part(e.u)[a].id == g.part(e.v)[b].id) g.add_edge({e.u, a}, {e.v, b});
    return g;
}

PartiteGraph build_hypercube_layers(int d) {
    HostGraph host = hypercube_host(d);
    std::vector<std::vector<PartVertex>> parts(host.order());
    for (int x = 0; x < host.order(); ++x) {
        const int layer = std::popcount(static_cast<unsigned>(x));
        if (layer % 2 == 1) {
            parts[x] = {{"0", 0.5}, {"1", 0.5}};
        } else if (layer % 4 == 0) {
            parts[x] = {{"0", 1.0}};
        } else {
            parts[x] = {{"1", 1.0}};
        }
    }
    PartiteGraph g(host, std::move(parts));
    for (const auto& e : g.host().edges())
        for (int a = 0; a < g.part_size(e.u); ++a)
            for (int b = 0; b < g.part_size(e.v); ++b)
                if (g.part(e.u)[a].id == g.part(e.v)[b].id) g.add_edge({e.u, a}, {e.v, b});
    return g;
}

int hypercube_three_layer_max(int d) {
    long long best = 0;
    for (int r = 1; r <= d - 1; ++r) best = std::max(best, binomial(d, r - 1) + binomial(d, r) + binomial(d, r + 1));
    return static_cast<int>(best);
}

double leila_alpha(const ConstructionSpec& spec, int r) {
    const double a = spec.alpha.value_or(leila_optimal_alpha(r));
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidInput("leila: alpha must lie in [0,1]");
    return a;
}

RefinedTriple refined_triple(const ConstructionSpec& spec, int r) {
    const bool any = spec.p1 || spec.p2 || spec.p3;
    if (!any) return optimal_refined_triple(r);
    if (!(spec.p1 && spec.p2 && spec.p3)) throw InvalidInput("refined_dead_end: give all of p1, p2, p3 or none");
    RefinedTriple p{*spec.p1, *spec.p2, *spec.p3};
    need_open_unit(p.p1, "p1", "refined_dead_end");
    need_open_unit(p.p2, "p2", "refined_dead_end");
    need_open_unit(p.p3, "p3", "refined_dead_end");
    return p;
}

}  // namespace

std::string construction_name(ConstructionId id) {
    for (const auto& n : kIds)
        if (n.id == id) return n.name;
    return "?";
}

ConstructionId parse_construction_id(const std::string& name) {
    for (const auto& n : kIds)
        if (name == n.name) return n.id;
    throw InvalidInput("unknown construction '" + name + "'");
}

std::string ConstructionSpec::label() const {
    std::ostringstream os;
    os << construction_name(id);
    if (r) os << " r=" << *r;
    if (t) os << " t=" << *t;
    if (d) os << " d=" << *d;
    if (alpha) os << " alpha=" << *alpha;
    if (p1) os << " p1=" << *p1 << " p2=" << p2.value_or(0) << " p3=" << p3.value_or(0);
    for (auto [a, b] : matching) os << " -" << a << b;
    return os.str();
}

RefinedTriple optimal_refined_triple(int r) {
    const double p = dirac_pstar(r);
    const double target = p * p + (1.0 - p) * (1.0 - p);
    return {p, target / p, 1.0 - (r - 2.0) * p * (2.0 * p - 1.0)};
}

PartiteGraph build(const ConstructionSpec& spec) {
    const std::string who = construction_name(spec.id);
    switch (spec.id) {
        case ConstructionId::StarLeaf: {
            const int r = need_int(spec.r, "r", 3, who);
            check_host_limit(r, who);
            return build_star_leaf(r);
        }
        case ConstructionId::Leila: {
            const int r = need_int(spec.r, "r", 3, who);
            check_host_limit(r, who);
            return build_leila(r, leila_alpha(spec, r));
        }
        case ConstructionId::MissingEdge: {
            const int r = need_int(spec.r, "r", 4, who);
            check_host_limit(r, who);
            return build_missing_edge(r, spec.matching);
        }
        case ConstructionId::TwoColour: {
            const int r = need_int(spec.r, "r", 4, who);
            check_host_limit(r, who);
            return build_two_colour(r);
        }
        case ConstructionId::Parity: {
            const int r = need_int(spec.r, "r", 3, who);
            check_host_limit(r, who);
            return build_parity(r);
        }
        case ConstructionId::RefinedDeadEnd: {
            const int r = need_int(spec.r, "r", 4, who);
            check_host_limit(r, who);
            return build_refined_dead_end(r, refined_triple(spec, r));
        }
        case ConstructionId::PendantTriangle: return build_pendant_triangle();
        case ConstructionId::IntersectingPalette: {
            const int t = need_int(spec.t, "t", 2, who);
            if (t > 8) throw InvalidInput(who + ": t > 8 is unsupported");
            const int r = need_int(spec.r, "r", static_cast<int>(binomial(2 * t - 1, t)), who);
            check_host_limit(r, who);
            return build_intersecting_palette(t, r);
        }
        case ConstructionId::HypercubeLayers: {
            const int d = need_int(spec.d, "d", 2, who);
            if (d > 6) throw InvalidInput(who + ": d must be <= 6 (64 parts)");
            return build_hypercube_layers(d);
        }
    }
    throw InvalidInput("unhandled construction");
}

double claimed_density(const ConstructionSpec& spec) {
    switch (spec.id) {
        case ConstructionId::StarLeaf: return closed_form({ThresholdKind::Star, *spec.r});
        case ConstructionId::Leila: {
            const int r = *spec.r;
            const double a = leila_alpha(spec, r);
            return std::min((1.0 - a) * (1.0 - a), a * (r - 2.0) / (r - 1.0));
        }
        case ConstructionId::MissingEdge:
        case ConstructionId::TwoColour:
        case ConstructionId::Parity:
        case ConstructionId::HypercubeLayers: return 0.5;
        case ConstructionId::RefinedDeadEnd: {
            // The four pair-density classes as stated alongside the construction.
            const int r = *spec.r;
            const auto p = refined_triple(spec, r);
            return std::min({p.p1 * p.p1 + (1 - p.p1) * (1 - p.p1), p.p1 * p.p2, (1 - p.p1) + (1 - p.p3) / (r - 2),
                             (1 - p.p2) + p.p2 * p.p3});
        }
        case ConstructionId::PendantTriangle: return closed_form({ThresholdKind::K4MinusP3, 0});
        case ConstructionId::IntersectingPalette: return 1.0 / (*spec.t * *spec.t);
    }
    return 0.0;
}

std::optional<int> claimed_component_bound(const ConstructionSpec& spec) {
    switch (spec.id) {
        case ConstructionId::IntersectingPalette: {
            const int t = *spec.t, r = *spec.r;
            return (t * r + 2 * t - 2) / (2 * t - 1);  // ceil(t r / (2t-1))
        }
        case ConstructionId::HypercubeLayers: return hypercube_three_layer_max(*spec.d);
        default: return std::nullopt;
    }
}

ForbiddenFamily claimed_family(const ConstructionSpec& spec) {
    switch (spec.id) {
        case ConstructionId::StarLeaf:
        case ConstructionId::Leila:
        case ConstructionId::MissingEdge: return ForbiddenFamily::all_trees(*spec.r);
        case ConstructionId::PendantTriangle: return ForbiddenFamily::all_trees(4);
        case ConstructionId::TwoColour:
        case ConstructionId::RefinedDeadEnd: return ForbiddenFamily::hamilton_cycle();
        case ConstructionId::Parity: return ForbiddenFamily::odd_cycles();
        case ConstructionId::IntersectingPalette:
        case ConstructionId::HypercubeLayers: return ForbiddenFamily::all_trees(*claimed_component_bound(spec) + 1);
    }
    throw InvalidInput("unhandled construction");
}

VerificationOutcome verify(const ConstructionSpec& spec, std::uint64_t cap) {
    VerificationOutcome out;
    out.label = spec.label();
    const PartiteGraph g = build(spec);
    auto report = validate(g);
    if (!report.ok()) {
        out.diagnostics = "generator produced an invalid graph: " + report.to_string();
        return out;
    }
    out.density = density_profile(g).minimum;
    out.claimed = claimed_density(spec);
    const ForbiddenFamily family = claimed_family(spec);
    out.family = family.spec();
    out.transversals = transversal_count(g.part_sizes(), cap);

    std::ostringstream diag;
    diag.precision(15);
    if (std::abs(out.density - out.claimed) > tolerance) {
        diag << "density " << out.density << " differs from claimed " << out.claimed << "; ";
    }

    if (auto bound = claimed_component_bound(spec)) {
        out.component_bound = *bound;
        const bool layered = spec.id == ConstructionId::HypercubeLayers;
        int worst = 0;
        std::optional<Transversal> spread;
        enumerate_transversals(
            g,
            [&](const Transversal& t) {
                const SmallGraph s = transversal_graph(g, t);
                for (auto comp : components(s)) {
                    worst = std::max(worst, std::popcount(comp));
                    if (layered && !spread) {
                        int lo = 64, hi = -1;
                        for (std::uint64_t c = comp; c; c &= c - 1) {
                            const int layer = std::popcount(static_cast<unsigned>(std::countr_zero(c)));
                            lo = std::min(lo, layer);
                            hi = std::max(hi, layer);
                        }
                        if (hi - lo > 2) spread = t;
                    }
                }
                return true;
            },
            cap);
        out.component_size = worst;
        if (worst > *bound) diag << "transversal component of order " << worst << " exceeds bound " << *bound << "; ";
        if (spread) diag << "a transversal component spans more than three consecutive layers; ";
    } else {
        const Certificate cert = check_family_free(g, family, cap);
        if (!cert.family_free()) {
            diag << "transversal (";
            for (std::size_t x = 0; x < cert.witness->choice.size(); ++x)
                diag << (x ? "," : "") << g.part(static_cast<int>(x))[cert.witness->choice[x]].id;
            diag << ") contains a member of " << family.spec() << "; ";
        }
    }
    out.diagnostics = diag.str();
    while (!out.diagnostics.empty() && (out.diagnostics.back() == ' ' || out.diagnostics.back() == ';'))
        out.diagnostics.pop_back();
    out.pass = out.diagnostics.empty();
    return out;
}

std::vector<ConstructionSpec> paper_construction_suite() {
    std::vector<ConstructionSpec> suite;
    auto with_r = [&](ConstructionId id, int lo, int hi) {
        for (int r = lo; r <= hi; ++r) {
            ConstructionSpec s;
            s.id = id;
            s.r = r;
            suite.push_back(s);
        }
    };
    with_r(ConstructionId::StarLeaf, 4, 8);
    with_r(ConstructionId::Leila, 4, 8);
    with_r(ConstructionId::MissingEdge, 4, 8);
    with_r(ConstructionId::TwoColour, 4, 8);
    with_r(ConstructionId::Parity, 3, 8);
    with_r(ConstructionId::RefinedDeadEnd, 4, 8);
    suite.push_back({ConstructionId::PendantTriangle, {}, {}, {}, {}, {}, {}, {}, {}});
    for (auto [t, lo, hi] : {std::tuple{2, 6, 12}, std::tuple{3, 10, 12}}) {
        for (int r = lo; r <= hi; ++r) {
            ConstructionSpec s;
            s.id = ConstructionId::IntersectingPalette;
            s.t = t;
            s.r = r;
            suite.push_back(s);
        }
    }
    for (int d = 2; d <= 4; ++d) {
        ConstructionSpec s;
        s.id = ConstructionId::HypercubeLayers;
        s.d = d;
        suite.push_back(s);
    }
    return suite;
}

PartiteGraph glue_paths(const PartiteGraph& g1, const PartiteGraph& g2) {
    const int a = g1.part_count(), b = g2.part_count();
    if (a < 2 || b < 2 || !(g1.host() == path_host(a)) || !(g2.host() == path_host(b))) {
        throw InvalidInput("glue_paths: both inputs must be hosted on paths 0-1-...-(n-1)");
    }
    if (a + b - 2 < 4) throw InvalidInput("glue_paths: glued cycle must have at least 4 vertices");
    require_valid(g1);
    require_valid(g2);
    auto same_part = [](const std::vector<PartVertex>& p, const std::vector<PartVertex>& q) {
        if (p.size() != q.size()) return false;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (std::abs(p[i].weight - q[i].weight) > tolerance) return false;
        return true;
    };
    if (!same_part(g1.part(0), g2.part(0)) || !same_part(g1.part(a - 1), g2.part(b - 1))) {
        throw InvalidInput("glue_paths: endpoint parts differ in size or weights");
    }
    const int n = a + b - 2;
    // Cycle vertex for each g2 path vertex: 0 -> 0, b-1 -> a-1, k -> a + (b-2-k) otherwise.
    auto g2_vertex = [&](int k) { return k == 0 ? 0 : (k == b - 1 ? a - 1 : a + (b - 2 - k)); };
    std::vector<std::vector<PartVertex>> parts(n);
    for (int x = 0; x < a; ++x) parts[x] = g1.part(x);
    for (int k = 1; k < b - 1; ++k) parts[g2_vertex(k)] = g2.part(k);
    PartiteGraph out(cycle_host(n), std::move(parts));
    for (int x = 0; x + 1 < a; ++x) {
        const auto& m = g1.biadjacency(g1.host().edge_index(x, x + 1));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m.test(i, j)) out.add_edge({x, i}, {x + 1, j});
    }
    for (int k = 0; k + 1 < b; ++k) {
        const auto& m = g2.biadjacency(g2.host().edge_index(k, k + 1));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m.test(i, j)) out.add_edge({g2_vertex(k), i}, {g2_vertex(k + 1), j});
    }
    return out;
}

}  // namespace hpart
