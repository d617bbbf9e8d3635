#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adtarget/equilibrium.hpp"

namespace adtarget {

enum class TableId { T1, T2, T3, T4 };

/// Parses "T1".."T4" (case-insensitive). Throws DomainError otherwise.
TableId parse_table_id(std::string_view id);
std::string_view to_string(TableId id);

/// Which per-segment ad prices the presets use. `Tables` (R1 = 0.0125,
/// R2 = 0.0100) reproduces the published tables; `NarrativeText` charges
/// 0.0125 to both groups, which matches the A2 = 0.09 / Q2 = 0.62 quoted in
/// the base-case walkthrough instead.
enum class AdPriceReading { Tables, NarrativeText };

/// Four scenarios per table, in column order.
std::vector<MarketScenario> preset(TableId id, AdPriceReading reading = AdPriceReading::Tables);

inline constexpr std::size_t kTableRowCount = 13;

/// Row labels in the published order.
extern const std::array<std::string_view, kTableRowCount> kTableRowLabels;

/// One table column. `price_change_pct` is in percent (-2.4 means -2.4%).
struct TableRow {
    double w1 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double blended_alpha = 0.0;
    double uniform_ad = 0.0;
    double uniform_quantity = 0.0;
    double uniform_price = 0.0;
    double targeted_ad1 = 0.0;
    double targeted_ad2 = 0.0;
    double targeted_quantity1 = 0.0;
    double targeted_quantity2 = 0.0;
    double targeted_price = 0.0;
    double price_change_pct = 0.0;

    /// Values in kTableRowLabels order.
    std::array<double, kTableRowCount> values() const;
    static TableRow from_values(const std::array<double, kTableRowCount>& v);

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Builds a table column from a two-segment comparison.
TableRow make_table_row(const ComparisonReport& report);

/// Solves every preset column. Solver errors are rethrown as SolverError
/// prefixed with the column index.
std::vector<TableRow> run_table(TableId id, const SolverOptions& opt = {},
                                AdPriceReading reading = AdPriceReading::Tables);

/// Published values, one TableRow per column, as printed.
const std::vector<TableRow>& published_table(TableId id);

enum class SweepParam {
    Weight1,         ///< w1, with w2 = 1 - w1 (two segments)
    Alpha1FixedG,    ///< alpha1, alpha2 adjusted so G is unchanged (two segments)
    Alpha2FixedG,    ///< alpha2, alpha1 adjusted so G is unchanged (two segments)
    FixedCost,
    Lambda,
    UniformAdPrice,
    SegmentAdPrice,  ///< segments[segment_index].ad_price
};

/// Accepts w1, alpha1, alpha2, fixed_cost, lambda, uniform_ad_price and
/// ad_price[i] / segments[i].ad_price. Throws DomainError otherwise.
struct SweepPath {
    SweepParam param = SweepParam::Weight1;
    std::size_t segment_index = 0;

    static SweepPath parse(std::string_view path);
    friend bool operator==(const SweepPath&, const SweepPath&) = default;
};

struct SweepSpec {
    ScenarioParams base;
    SweepPath path;
    std::vector<double> values;
};

struct SweepPoint {
    double value = 0.0;
    std::optional<ComparisonReport> report;
    /// Empty on success.
    std::string error;

    friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

/// Base parameters with `path` set to `value`. Not validated.
ScenarioParams apply_sweep_value(const ScenarioParams& base, const SweepPath& path, double value);

/// One point per value, in input order. A point that fails validation or
/// solving records its error and the sweep continues. Points are solved
/// OpenMP-parallel.
std::vector<SweepPoint> sweep(const SweepSpec& spec, const SolverOptions& opt = {});

namespace serial {
std::vector<SweepPoint> sweep(const SweepSpec& spec, const SolverOptions& opt = {});
}

struct MarketImpact {
    double current_cost = 0.0;
    double with_offline = 0.0;
    double projected = 0.0;

    friend bool operator==(const MarketImpact&, const MarketImpact&) = default;
};

/// size * |change|, then scaled by the offline multiplier, then by growth.
/// Throws DomainError for a negative or non-finite market size.
MarketImpact market_impact(double online_market_size, double price_change_fraction,
                           double offline_multiplier, double growth_multiplier);

}  // namespace adtarget
