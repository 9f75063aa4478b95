#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hpart/json_io.hpp"

namespace hpart {

struct TableRow {
    std::string host;
    std::string relation;  // "=", "?=" (conjectured) or "<" (strict upper bound)
    std::string formula;
    double value = 0.0;
    std::string printed;   // value as printed in the summary table
    std::optional<std::string> construction;
    std::optional<double> construction_density;
    std::optional<bool> construction_pass;
};

// Connected-transversal thresholds for the connected 4-vertex hosts and C5.
std::vector<TableRow> paper_table();

// Printed values ending in "..." are truncated or rounded decimals; anything else is an exact fraction.
bool matches_printed(double value, const std::string& printed);

std::string render_table(const std::vector<TableRow>& rows);
Json table_to_json(const std::vector<TableRow>& rows);

}  // namespace hpart
