#include "adtarget/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "adtarget/errors.hpp"

namespace adtarget {

const std::array<std::string_view, kTableRowCount> kTableRowLabels = {
    "Fraction in Group1 - w_1",
    "Group 1 Probability of Purchase - alpha_1",
    "Group 2 Probability of Purchase - alpha_2",
    "Average Probability of Purchase - G",
    "Advertising w/o Target Marketing - A*",
    "Units Sold w/o Target Marketing - Q*",
    "Price w/o Target Marketing - P^w/oTM",
    "Advertising for Group 1 - A_1",
    "Advertising for Group 2 - A_2",
    "Units Sold for Group 1 - Q_1",
    "Units Sold for Group 2 - Q_2",
    "Price with Target Marketing - P^TM",
    "Percentage Price Change",
};

TableId parse_table_id(std::string_view id) {
    std::string up(id);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    if (up == "T1") return TableId::T1;
    if (up == "T2") return TableId::T2;
    if (up == "T3") return TableId::T3;
    if (up == "T4") return TableId::T4;
    throw DomainError("unknown table id '" + std::string(id) + "' (expected T1, T2, T3 or T4)");
}

std::string_view to_string(TableId id) {
    switch (id) {
        case TableId::T1: return "T1";
        case TableId::T2: return "T2";
        case TableId::T3: return "T3";
        case TableId::T4: return "T4";
    }
    return "T?";
}

namespace {

ScenarioParams base_params(AdPriceReading reading) {
    ScenarioParams p;  // C = 8, F = 50, N = 1000, R = 0.01, lambda = 0.1
    p.segments = {{0.5, 0.4, 0.0125}, {0.5, 0.04, 0.0100}};
    if (reading == AdPriceReading::NarrativeText) p.segments[1].ad_price = 0.0125;
    return p;
}

ScenarioParams with_weight(ScenarioParams p, double w1) {
    p.segments[0].weight = w1;
    p.segments[1].weight = 1.0 - w1;
    return p;
}

}  // namespace

std::vector<MarketScenario> preset(TableId id, AdPriceReading reading) {
    const ScenarioParams base = base_params(reading);
    constexpr std::array<double, 4> weights{0.5, 0.25, 0.1, 0.05};
    std::vector<MarketScenario> out;
    switch (id) {
        case TableId::T1:
            for (double w : weights) out.emplace_back(with_weight(base, w));
            break;
        case TableId::T2: {
            constexpr std::array<std::pair<double, double>, 4> alphas{
                {{0.40, 0.04}, {0.38, 0.06}, {0.34, 0.10}, {0.28, 0.16}}};
            for (auto [a1, a2] : alphas) {
                ScenarioParams p = base;
                p.segments[0].alpha = a1;
                p.segments[1].alpha = a2;
                out.emplace_back(p);
            }
            break;
        }
        case TableId::T3:
            for (double w : weights) {
                ScenarioParams p = with_weight(base, w);
                p.fixed_cost = 100.0;
                out.emplace_back(p);
            }
            break;
        case TableId::T4:
            for (double w : weights) {
                ScenarioParams p = with_weight(base, w);
                p.lambda = 0.2;
                out.emplace_back(p);
            }
            break;
    }
    return out;
}

std::array<double, kTableRowCount> TableRow::values() const {
    return {w1,           alpha1,       alpha2,             blended_alpha,      uniform_ad,
            uniform_quantity, uniform_price, targeted_ad1, targeted_ad2, targeted_quantity1,
            targeted_quantity2, targeted_price, price_change_pct};
}

TableRow TableRow::from_values(const std::array<double, kTableRowCount>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10], v[11], v[12]};
}

TableRow make_table_row(const ComparisonReport& r) {
    const auto& segs = r.scenario.segments;
    if (segs.size() != 2 || r.targeted.segments.size() != 2) {
        throw DomainError("make_table_row: table layout needs exactly two segments");
    }
    TableRow row;
    row.w1 = segs[0].weight;
    row.alpha1 = segs[0].alpha;
    row.alpha2 = segs[1].alpha;
    row.blended_alpha = segs[0].weight * segs[0].alpha + segs[1].weight * segs[1].alpha;
    row.uniform_ad = r.uniform.ad_intensity;
    row.uniform_quantity = r.uniform.quantity;
    row.uniform_price = r.uniform.price;
    row.targeted_ad1 = r.targeted.segments[0].ad_intensity;
    row.targeted_ad2 = r.targeted.segments[1].ad_intensity;
    row.targeted_quantity1 = r.targeted.segments[0].quantity;
    row.targeted_quantity2 = r.targeted.segments[1].quantity;
    row.targeted_price = r.targeted.price;
    row.price_change_pct = 100.0 * r.price_change_fraction;
    return row;
}

std::vector<TableRow> run_table(TableId id, const SolverOptions& opt, AdPriceReading reading) {
    const auto scenarios = preset(id, reading);
    std::vector<TableRow> rows;
    for (std::size_t c = 0; c < scenarios.size(); ++c) {
        try {
            rows.push_back(make_table_row(compare(scenarios[c], opt)));
        } catch (const SolverError& e) {
            throw SolverError(std::string(to_string(id)) + " column " + std::to_string(c + 1) + ": " + e.what());
        }
    }
    return rows;
}

SweepPath SweepPath::parse(std::string_view path) {
    if (path == "w1") return {SweepParam::Weight1, 0};
    if (path == "alpha1") return {SweepParam::Alpha1FixedG, 0};
    if (path == "alpha2") return {SweepParam::Alpha2FixedG, 1};
    if (path == "fixed_cost") return {SweepParam::FixedCost, 0};
    if (path == "lambda") return {SweepParam::Lambda, 0};
    if (path == "uniform_ad_price") return {SweepParam::UniformAdPrice, 0};

    auto indexed = [&](std::string_view prefix, std::string_view suffix) -> std::optional<std::size_t> {
        if (!path.starts_with(prefix) || !path.ends_with(suffix)) return std::nullopt;
        const auto digits = path.substr(prefix.size(), path.size() - prefix.size() - suffix.size());
        std::size_t idx = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
        if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
        return idx;
    };
    if (auto i = indexed("ad_price[", "]")) return {SweepParam::SegmentAdPrice, *i};
    if (auto i = indexed("segments[", "].ad_price")) return {SweepParam::SegmentAdPrice, *i};
    throw DomainError("invalid sweep parameter path '" + std::string(path) + "'");
}

ScenarioParams apply_sweep_value(const ScenarioParams& base, const SweepPath& path, double value) {
    ScenarioParams p = base;
    auto need_two = [&] {
        if (p.segments.size() != 2) throw DomainError("sweep path requires exactly two segments");
    };
    switch (path.param) {
        case SweepParam::Weight1:
            need_two();
            p.segments[0].weight = value;
            p.segments[1].weight = 1.0 - value;
            break;
        case SweepParam::Alpha1FixedG:
        case SweepParam::Alpha2FixedG: {
            need_two();
            const std::size_t set = path.param == SweepParam::Alpha1FixedG ? 0 : 1;
            const std::size_t other = 1 - set;
            const double g = p.segments[0].weight * p.segments[0].alpha + p.segments[1].weight * p.segments[1].alpha;
            if (p.segments[other].weight <= 0.0) {
                throw DomainError("cannot hold G fixed when the adjusted segment has zero weight");
            }
            p.segments[set].alpha = value;
            p.segments[other].alpha = (g - p.segments[set].weight * value) / p.segments[other].weight;
            break;
        }
        case SweepParam::FixedCost: p.fixed_cost = value; break;
        case SweepParam::Lambda: p.lambda = value; break;
        case SweepParam::UniformAdPrice: p.uniform_ad_price = value; break;
        case SweepParam::SegmentAdPrice:
            if (path.segment_index >= p.segments.size()) {
                throw DomainError("sweep path segment index " + std::to_string(path.segment_index) +
                                  " out of range");
            }
            p.segments[path.segment_index].ad_price = value;
            break;
    }
    return p;
}

namespace {

void check_path(const SweepSpec& spec) {
    const std::size_t k = spec.base.segments.size();
    switch (spec.path.param) {
        case SweepParam::Weight1:
        case SweepParam::Alpha1FixedG:
        case SweepParam::Alpha2FixedG:
            if (k != 2) throw DomainError("sweep path requires exactly two segments");
            break;
        case SweepParam::SegmentAdPrice:
            if (spec.path.segment_index >= k) {
                throw DomainError("sweep path segment index " + std::to_string(spec.path.segment_index) +
                                  " out of range");
            }
            break;
        default: break;
    }
}

SweepPoint evaluate_point(const SweepSpec& spec, double value, const SolverOptions& opt) {
    SweepPoint pt;
    pt.value = value;
    try {
        pt.report = compare(MarketScenario(apply_sweep_value(spec.base, spec.path, value)), opt);
    } catch (const std::exception& e) {
        pt.error = e.what();
    }
    return pt;
}

}  // namespace

std::vector<SweepPoint> sweep(const SweepSpec& spec, const SolverOptions& opt) {
    check_path(spec);
    std::vector<SweepPoint> out(spec.values.size());
    const auto n = static_cast<std::ptrdiff_t>(spec.values.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = evaluate_point(spec, spec.values[static_cast<std::size_t>(i)], opt);
    }
    return out;
}

namespace serial {

std::vector<SweepPoint> sweep(const SweepSpec& spec, const SolverOptions& opt) {
    check_path(spec);
    std::vector<SweepPoint> out;
    out.reserve(spec.values.size());
    for (double v : spec.values) out.push_back(evaluate_point(spec, v, opt));
    return out;
}

}  // namespace serial

MarketImpact market_impact(double online_market_size, double price_change_fraction, double offline_multiplier,
                           double growth_multiplier) {
    if (!(online_market_size >= 0.0) || !std::isfinite(online_market_size)) {
        throw DomainError("market_impact: market size must be finite and >= 0");
    }
    MarketImpact m;
    m.current_cost = online_market_size * std::abs(price_change_fraction);
    m.with_offline = m.current_cost * offline_multiplier;
    m.projected = m.with_offline * growth_multiplier;
    return m;
}

}  // namespace adtarget
