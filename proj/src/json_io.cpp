#include "hpart/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "hpart/errors.hpp"

namespace hpart {

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InvalidInput(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON: " +
                           e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

namespace {

template <typename T>
T field(const Json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key)) {
        throw InvalidInput(std::string(where) + ": missing field '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string(where) + ": field '" + key + "' has the wrong type");
    }
}

}  // namespace

Json host_to_json(const HostGraph& h) {
    Json edges = Json::array();
    for (const auto& e : h.edges()) edges.push_back({e.u, e.v});
    return Json{{"n", h.order()}, {"edges", edges}};
}

HostGraph host_from_json(const Json& j) {
    const int n = field<int>(j, "n", "host");
    auto raw = field<std::vector<std::vector<int>>>(j, "edges", "host");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : raw) {
        if (e.size() != 2) throw InvalidInput("host: every edge needs two endpoints");
        edges.emplace_back(e[0], e[1]);
    }
    try {
        return HostGraph(n, edges);
    } catch (const std::invalid_argument& e) {
        throw InvalidInput(std::string("host: ") + e.what());
    }
}

Json graph_to_json(const PartiteGraph& g) {
    Json parts = Json::object();
    for (int x = 0; x < g.part_count(); ++x) {
        Json list = Json::array();
        for (const auto& v : g.part(x)) list.push_back(Json{{"id", v.id}, {"w", v.weight}});
        parts[std::to_string(x)] = list;
    }
    Json edges = Json::array();
    const auto& he = g.host().edges();
    for (std::size_t e = 0; e < he.size(); ++e) {
        const auto& a = g.biadjacency(static_cast<int>(e));
        for (int i = 0; i < a.rows(); ++i)
            for (int k = 0; k < a.cols(); ++k)
                if (a.test(i, k)) {
                    edges.push_back(Json::array({Json::array({std::to_string(he[e].u), g.part(he[e].u)[i].id}),
                                                 Json::array({std::to_string(he[e].v), g.part(he[e].v)[k].id})}));
                }
    }
    for (auto [a, b] : g.stray_edges()) {
        edges.push_back(Json::array({Json::array({std::to_string(a.part), g.vertex(a).id}),
                                     Json::array({std::to_string(b.part), g.vertex(b).id})}));
    }
    return Json{{"host", host_to_json(g.host())}, {"parts", parts}, {"edges", edges}};
}

PartiteGraph graph_from_json(const Json& j) {
    HostGraph host = host_from_json(field<Json>(j, "host", "graph"));
    const Json parts_json = field<Json>(j, "parts", "graph");
    if (!parts_json.is_object()) throw InvalidInput("graph: 'parts' must be an object keyed by host vertex");
    std::vector<std::vector<PartVertex>> parts(host.order());
    for (const auto& [key, list] : parts_json.items()) {
        int x = -1;
        try {
            std::size_t used = 0;
            x = std::stoi(key, &used);
            if (used != key.size()) x = -1;
        } catch (...) {
        }
        if (x < 0 || x >= host.order()) throw InvalidInput("graph: part key '" + key + "' is not a host vertex");
        if (!list.is_array()) throw InvalidInput("graph: part '" + key + "' must be an array");
        std::set<std::string> seen;
        for (const auto& v : list) {
            PartVertex pv{field<std::string>(v, "id", "vertex"), field<double>(v, "w", "vertex")};
            if (!seen.insert(pv.id).second) throw InvalidInput("graph: duplicate vertex id '" + pv.id + "' in part " + key);
            parts[x].push_back(pv);
        }
    }
    PartiteGraph g(host, std::move(parts));
    const Json edges = j.contains("edges") ? j.at("edges") : Json::array();
    if (!edges.is_array()) throw InvalidInput("graph: 'edges' must be an array");
    auto endpoint = [&](const Json& p) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
            throw InvalidInput("graph: edge endpoints are [\"part\", \"id\"] pairs");
        }
        const std::string part_key = p[0].get<std::string>();
        int x = -1;
        try {
            x = std::stoi(part_key);
        } catch (...) {
        }
        if (x < 0 || x >= host.order()) throw InvalidInput("graph: edge names unknown part '" + part_key + "'");
        int idx = g.find_vertex(x, p[1].get<std::string>());
        if (idx < 0) throw InvalidInput("graph: edge names unknown vertex '" + p[1].get<std::string>() + "' in part " + part_key);
        return VertexRef{x, idx};
    };
    for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2) throw InvalidInput("graph: every edge is a pair of endpoints");
        g.add_edge(endpoint(e[0]), endpoint(e[1]));
    }
    return g;
}

Json small_graph_to_json(const SmallGraph& s) {
    Json edges = Json::array();
    for (auto [u, v] : s.edges()) edges.push_back({u, v});
    return Json{{"n", s.order()}, {"edges", edges}};
}

SmallGraph small_graph_from_json(const Json& j) {
    const int n = field<int>(j, "n", "graph");
    if (n < 0 || n > SmallGraph::max_order) throw InvalidInput("graph: order outside [0, 64]");
    SmallGraph s(n);
    for (const auto& e : field<std::vector<std::vector<int>>>(j, "edges", "graph")) {
        if (e.size() != 2 || e[0] == e[1] || e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n) {
            throw InvalidInput("graph: bad edge in family member");
        }
        s.add_edge(e[0], e[1]);
    }
    return s;
}

ForbiddenFamily family_list_from_json(const Json& j) {
    const Json list = j.is_array() ? j : field<Json>(j, "members", "family list");
    if (!list.is_array()) throw InvalidInput("family list: 'members' must be an array");
    std::vector<SmallGraph> members;
    for (const auto& m : list) members.push_back(small_graph_from_json(m));
    return ForbiddenFamily::explicit_list(std::move(members));
}

Json family_to_json(const ForbiddenFamily& f) {
    Json j{{"spec", f.spec()}};
    if (f.kind() == ForbiddenFamily::Kind::ExplicitList) {
        Json members = Json::array();
        for (const auto& m : f.members()) members.push_back(small_graph_to_json(m));
        j["members"] = members;
    }
    return j;
}

ForbiddenFamily family_from_json(const Json& j) {
    const auto spec = field<std::string>(j, "spec", "family");
    if (spec == "list") return family_list_from_json(j);
    return parse_family(spec);
}

Json transversal_to_json(const PartiteGraph& g, const Transversal& t) {
    Json choice = Json::object();
    for (int x = 0; x < g.part_count(); ++x) choice[std::to_string(x)] = g.part(x)[t.choice[x]].id;
    return Json{{"choice", choice}, {"indices", t.choice}};
}

Transversal transversal_from_json(const PartiteGraph& g, const Json& j) {
    Transversal t;
    if (j.contains("indices")) {
        t.choice = j.at("indices").get<std::vector<int>>();
    } else {
        const Json choice = field<Json>(j, "choice", "transversal");
        t.choice.assign(g.part_count(), -1);
        for (int x = 0; x < g.part_count(); ++x) {
            const std::string key = std::to_string(x);
            if (!choice.contains(key)) throw InvalidInput("transversal: no choice for part " + key);
            t.choice[x] = g.find_vertex(x, choice.at(key).get<std::string>());
        }
    }
    if (!is_valid_transversal(g, t)) throw InvalidInput("transversal does not fit the graph");
    return t;
}

Json profile_to_json(const PartiteGraph& g, const DensityProfile& p) {
    Json values = Json::array();
    const auto& he = g.host().edges();
    for (std::size_t e = 0; e < he.size(); ++e) values.push_back(Json{{"edge", {he[e].u, he[e].v}}, {"alpha", p.values[e]}});
    return Json{{"values", values}, {"minimum", p.minimum}};
}

Json certificate_to_json(const PartiteGraph& g, const Certificate& c) {
    Json j{{"verdict", c.family_free() ? "family_free" : "violated"},
           {"family", family_to_json(c.family)},
           {"density", profile_to_json(g, c.density)}};
    if (c.witness) j["witness"] = transversal_to_json(g, *c.witness);
    return j;
}

Certificate certificate_from_json(const PartiteGraph& g, const Json& j) {
    Certificate c;
    const auto verdict = field<std::string>(j, "verdict", "certificate");
    if (verdict != "family_free" && verdict != "violated") throw InvalidInput("certificate: unknown verdict '" + verdict + "'");
    c.verdict = verdict == "violated" ? Certificate::Verdict::Violated : Certificate::Verdict::FamilyFree;
    c.family = family_from_json(field<Json>(j, "family", "certificate"));
    const Json density = field<Json>(j, "density", "certificate");
    c.density.minimum = field<double>(density, "minimum", "density");
    for (const auto& v : field<Json>(density, "values", "density")) c.density.values.push_back(field<double>(v, "alpha", "density"));
    if (j.contains("witness")) c.witness = transversal_from_json(g, j.at("witness"));
    return c;
}

}  // namespace hpart
