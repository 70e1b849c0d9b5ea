#pragma once

// Serialization of reports: CSV tables and JSON summaries. Exact rationals are
// written as separate numerator/denominator strings plus a 15-digit decimal.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hecke/density.hpp"
#include "hecke/experiment.hpp"
#include "hecke/galois_tower.hpp"
#include "hecke/matcount.hpp"

namespace hecke::io {

using Json = nlohmann::ordered_json;

Json rational_json(const ExactRational& r);
ExactRational rational_from_json(const Json& j);

/// {"num":..., "den":..., "decimal":..., ...}; timestamp added when non-empty.
Json density_json(const DensityReport& report, const std::string& timestamp = "");
DensityReport density_from_json(const Json& j);
std::string density_plain(const DensityReport& report);

std::vector<TowerLevel> parse_tower_csv(const std::string& csv);

/// Header u,v,count,expected_num,expected_den,sigmas.
std::string table_csv(const TableAnalysis& analysis);
std::vector<CellStat> parse_table_csv(const std::string& csv);

Json table_summary_json(const PiFTable& table, const TableAnalysis& analysis,
                        const std::string& timestamp = "");
Json ikeda_scan_json(const IkedaScan& scan, const std::string& timestamp = "");

/// "formula,<n>" [+ "brute,<n>"] then "z_profile,z0,z1,...".
std::string count_csv(const TraceDetCount& formula, const TraceDetCount* brute, const ZProfile& profile);

/// Round-trippable text for a double (17 significant digits, inf/-inf/nan).
std::string format_double(double x);
double parse_double(const std::string& s);

/// key=value lines, '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> parse_config(const std::string& text);

/// Current UTC time, ISO-8601.
std::string utc_timestamp();

}  // namespace hecke::io
