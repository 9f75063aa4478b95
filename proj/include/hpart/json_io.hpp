#pragma once

#include <string>

#include <json.hpp>

#include "hpart/certificate.hpp"
#include "hpart/family.hpp"
#include "hpart/partite_graph.hpp"

namespace hpart {

using Json = nlohmann::ordered_json;

// Parses text, converting parse errors to InvalidInput with "source:line:column: ...".
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

Json host_to_json(const HostGraph& h);
HostGraph host_from_json(const Json& j);

// The interchange format: {"host": {...}, "parts": {"0": [{"id","w"}...]}, "edges": [[["0","a"],["1","c"]]...]}.
// Structural problems (unknown vertex ids, duplicate ids) throw InvalidInput; weight and
// stray-edge problems are left for validate().
Json graph_to_json(const PartiteGraph& g);
PartiteGraph graph_from_json(const Json& j);

Json small_graph_to_json(const SmallGraph& s);
SmallGraph small_graph_from_json(const Json& j);

// {"members": [{"n":..,"edges":[...]}, ...]} or a bare array of such objects.
ForbiddenFamily family_list_from_json(const Json& j);
Json family_to_json(const ForbiddenFamily& f);
ForbiddenFamily family_from_json(const Json& j);

Json transversal_to_json(const PartiteGraph& g, const Transversal& t);
Transversal transversal_from_json(const PartiteGraph& g, const Json& j);

Json profile_to_json(const PartiteGraph& g, const DensityProfile& p);
Json certificate_to_json(const PartiteGraph& g, const Certificate& c);
Certificate certificate_from_json(const PartiteGraph& g, const Json& j);

}  // namespace hpart
