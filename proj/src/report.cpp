#include "hpart/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "hpart/certificate.hpp"
#include "hpart/constructions.hpp"
#include "hpart/thresholds.hpp"

namespace hpart {

namespace {

void attach(TableRow& row, const std::string& label, const PartiteGraph& g, bool family_free) {
    row.construction = label;
    row.construction_density = density_profile(g).minimum;
    row.construction_pass = family_free && std::abs(*row.construction_density - row.value) <= tolerance;
}

void attach(TableRow& row, const ConstructionSpec& spec) {
    const auto out = verify(spec);
    row.construction = out.label;
    row.construction_density = out.density;
    row.construction_pass = out.pass && std::abs(out.density - row.value) <= tolerance;
}

std::string fixed15(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

}  // namespace

std::vector<TableRow> paper_table() {
    std::vector<TableRow> rows;

    TableRow k4_lower{"K4", "?=", "(8-2*sqrt(7))/9", closed_form({ThresholdKind::RhoB, 4}), "0.3009...", {}, {}, {}};
    ConstructionSpec leila;
    leila.id = ConstructionId::Leila;
    leila.r = 4;
    attach(k4_lower, leila);
    rows.push_back(k4_lower);

    rows.push_back({"K4", "<", "2-2*sqrt(2/3)", closed_form({ThresholdKind::ConnUpperK4, 0}), "0.36701...", {}, {}, {}});

    TableRow k4e{"K4-e", "=", "1/2", 0.5, "1/2", {}, {}, {}};
    ConstructionSpec missing;
    missing.id = ConstructionId::MissingEdge;
    missing.r = 4;
    attach(k4e, missing);
    rows.push_back(k4e);

    TableRow c4{"C4", "=", "1/2", 0.5, "1/2", {}, {}, {}};
    missing.matching = {{2, 3}};
    attach(c4, missing);
    rows.push_back(c4);

    TableRow pendant{"K4-P3", "=", "4-2*sqrt(3)", closed_form({ThresholdKind::K4MinusP3, 0}), "0.5358...", {}, {}, {}};
    ConstructionSpec pt;
    pt.id = ConstructionId::PendantTriangle;
    attach(pendant, pt);
    rows.push_back(pendant);

    rows.push_back({"P4", "=", "(-1+sqrt(5))/2", tree_threshold(path_graph(4)), "0.6180...", {}, {}, {}});

    TableRow star{"K1,3", "=", "2/3", tree_threshold(star_graph(4)), "2/3", {}, {}, {}};
    ConstructionSpec sl;
    sl.id = ConstructionId::StarLeaf;
    sl.r = 4;
    attach(star, sl);
    rows.push_back(star);

    // C5 inside K5 minus {0,1}: the cycle 0-2-1-3-4-0.
    TableRow c5{"C5", "=", "1/2", closed_form({ThresholdKind::C5Conn, 0}), "1/2", {}, {}, {}};
    missing.r = 5;
    missing.matching.clear();
    const HostGraph c5_host(5, {{0, 2}, {1, 2}, {1, 3}, {3, 4}, {0, 4}});
    const PartiteGraph on_c5 = restrict_to_host(build(missing), c5_host);
    attach(c5, "missing_edge r=5 on C5", on_c5,
           check_family_free(on_c5, ForbiddenFamily::all_trees(5)).family_free());
    rows.push_back(c5);
    return rows;
}

bool matches_printed(double value, const std::string& printed) {
    const auto dots = printed.find("...");
    if (dots == std::string::npos) {
        const auto slash = printed.find('/');
        const double exact = slash == std::string::npos
                                 ? std::stod(printed)
                                 : std::stod(printed.substr(0, slash)) / std::stod(printed.substr(slash + 1));
        return std::abs(value - exact) <= 1e-12;
    }
    const std::string digits = printed.substr(0, dots);
    const auto point = digits.find('.');
    const int decimals = point == std::string::npos ? 0 : static_cast<int>(digits.size() - point - 1);
    const double scale = std::pow(10.0, decimals);
    const double target = std::stod(digits) * scale;
    // The table truncates some values (0.5358 for 0.53589...) and rounds others (0.36701 for 0.367006...).
    return std::abs(std::floor(value * scale) - target) < 0.5 || std::abs(std::round(value * scale) - target) < 0.5;
}

std::string render_table(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << std::left << std::setw(7) << "host" << std::setw(4) << "rel" << std::setw(18) << "formula" << std::setw(20)
       << "value" << std::setw(12) << "printed" << "construction\n";
    for (const auto& row : rows) {
        os << std::setw(7) << row.host << std::setw(4) << row.relation << std::setw(18) << row.formula << std::setw(20)
           << fixed15(row.value) << std::setw(12) << row.printed;
        if (row.construction) {
            os << *row.construction << " d=" << fixed15(*row.construction_density)
               << (*row.construction_pass ? " verified" : " MISMATCH");
        } else {
            os << "-";
        }
        if (row.relation == "?=") os << " (conjectured)";
        if (row.relation == "<") os << " (upper bound)";
        os << '\n';
    }
    return os.str();
}

Json table_to_json(const std::vector<TableRow>& rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
        Json j;
        j["host"] = row.host;
        j["relation"] = row.relation;
        j["formula"] = row.formula;
        j["value"] = row.value;
        j["printed"] = row.printed;
        j["matches_printed"] = matches_printed(row.value, row.printed);
        if (row.construction) {
            j["construction"] = *row.construction;
            j["construction_density"] = *row.construction_density;
            j["construction_verified"] = *row.construction_pass;
        }
        out.push_back(j);
    }
    return out;
}

}  // namespace hpart
