#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "adtarget/equilibrium.hpp"
#include "adtarget/scenarios.hpp"

namespace adtarget {

/// Parses flat `key = value` scenario text. Recognised keys are
/// marginal_cost, fixed_cost, population, lambda, uniform_ad_price and
/// segments[i].weight / .alpha / .ad_price. Blank lines and `#` comments are
/// ignored. Unset fields keep their base-case defaults; a segment beyond the
/// default two must set all three fields. Unknown or repeated keys, malformed
/// numbers and gaps in segment indices throw ValidationError.
ScenarioParams parse_scenario_config(std::string_view text);

/// Shortest representation that parses back to the same double.
std::string format_double(double x);

/// Rounds to `decimals` places, half away from zero.
double round_to(double x, int decimals);

void to_json(nlohmann::json& j, const Segment& s);
void from_json(const nlohmann::json& j, Segment& s);
void to_json(nlohmann::json& j, const ScenarioParams& p);
void from_json(const nlohmann::json& j, ScenarioParams& p);
void to_json(nlohmann::json& j, const UniformEquilibrium& e);
void from_json(const nlohmann::json& j, UniformEquilibrium& e);
void to_json(nlohmann::json& j, const SegmentOutcome& s);
void from_json(const nlohmann::json& j, SegmentOutcome& s);
void to_json(nlohmann::json& j, const TargetedEquilibrium& e);
void from_json(const nlohmann::json& j, TargetedEquilibrium& e);
void to_json(nlohmann::json& j, const Metrics& m);
void from_json(const nlohmann::json& j, Metrics& m);
void to_json(nlohmann::json& j, const ComparisonReport& r);
void from_json(const nlohmann::json& j, ComparisonReport& r);
void to_json(nlohmann::json& j, const MarketImpact& m);

/// `field,value` lines with dotted field paths.
void write_report_csv(std::ostream& os, const ComparisonReport& r);

/// Table layout: one line per row label, one column per scenario.
/// With `diff`, each label gets model (rounded to printed precision), published and
/// abs_dev lines, and abs_dev lines carry known-discrepancy notes.
void write_table_csv(std::ostream& os, TableId id, std::span<const TableRow> rows, bool diff);
nlohmann::json table_json(TableId id, std::span<const TableRow> rows, bool diff);

/// Decimal places the published tables print for each row.
int printed_decimals(std::size_t row_index);

/// Model values rounded to printed precision, minus the published values (absolute).
std::vector<std::array<double, kTableRowCount>> table_deviations(TableId id, std::span<const TableRow> rows);

/// Free-text notes on known discrepancies between a table's printed values
/// and the model, keyed by row index.
std::vector<std::pair<std::size_t, std::string>> table_notes(TableId id);

void write_sweep_csv(std::ostream& os, std::span<const SweepPoint> points);
nlohmann::json sweep_json(std::span<const SweepPoint> points);

}  // namespace adtarget
