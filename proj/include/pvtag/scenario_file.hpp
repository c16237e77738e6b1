#pragma once

// Scenario files: `key = value` lines, `#` comments. Every physical quantity
// carries its unit in the key (reader.power_dbm, pv.cell_area_cm2, ...).
// Unknown or repeated keys are errors. See scenarios/README.md for the key list.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pvtag/inventory_sim.hpp"
#include "pvtag/sensing_apps.hpp"

namespace pvtag {

struct ScenarioConfig {
    Scenario scenario;
    DetectorParams detector;
};

/// Parses and validates. Errors are ValidationError naming source, line, key and unit.
ScenarioConfig parse_scenario(std::istream& in, std::string_view source = "<scenario>");

/// Throws IoError when the file cannot be read.
ScenarioConfig load_scenario_file(const std::filesystem::path& path);

/// Canonical text for `config`: every key spelled out, tags sorted by id.
/// Parsing the output yields an equivalent configuration.
std::string dump_normalized(const ScenarioConfig& config);

}  // namespace pvtag
