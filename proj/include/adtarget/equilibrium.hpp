#pragma once

#include <span>
#include <vector>

#include "adtarget/info_model.hpp"
#include "adtarget/root_find.hpp"

namespace adtarget {

/// One consumer group: population share, purchase probability of an informed
/// member, and the price of one unit of advertising intensity per member.
struct Segment {
    double weight = 0.0;
    double alpha = 0.0;
    double ad_price = 0.0;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Unvalidated scenario parameters. Defaults are the base case: C = 8, F = 50,
/// N = 1000, R = 0.01, lambda = 0.1, two equal groups with purchase
/// probabilities 0.4 and 0.04 and targeted ad prices 0.0125 and 0.0100.
struct ScenarioParams {
    double marginal_cost = 8.0;
    double fixed_cost = 50.0;
    double population = 1000.0;
    double uniform_ad_price = 0.01;
    double lambda = 0.1;
    std::vector<Segment> segments{{0.5, 0.4, 0.0125}, {0.5, 0.04, 0.0100}};

    friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

/// Validated market scenario. Zero-weight segments are dropped; the remaining
/// weights must sum to 1 within 1e-12 and the blended purchase probability
/// G = sum w_i alpha_i must lie in (0, 1]. Violations throw ValidationError
/// naming the field (`segments[i].alpha`, `fixed_cost`, ...).
class MarketScenario {
public:
    explicit MarketScenario(ScenarioParams params);
    MarketScenario() : MarketScenario(ScenarioParams{}) {}

    const ScenarioParams& params() const noexcept { return params_; }
    double marginal_cost() const noexcept { return params_.marginal_cost; }
    double fixed_cost() const noexcept { return params_.fixed_cost; }
    double population() const noexcept { return params_.population; }
    double uniform_ad_price() const noexcept { return params_.uniform_ad_price; }
    const InfoTechnology& tech() const noexcept { return tech_; }
    std::span<const Segment> segments() const noexcept { return params_.segments; }
    double blended_alpha() const noexcept { return blended_alpha_; }

    friend bool operator==(const MarketScenario&, const MarketScenario&) = default;

private:
    ScenarioParams params_;
    InfoTechnology tech_;
    double blended_alpha_;
};

struct SolverOptions {
    /// Relative bracket width at which the outer margin bisection stops.
    double margin_rel_tol = 1e-12;
};

struct UniformEquilibrium {
    double ad_intensity = 0.0;
    double price = 0.0;
    double margin = 0.0;
    double quantity = 0.0;
    double foc_residual = 0.0;
    double zero_profit_residual = 0.0;

    friend bool operator==(const UniformEquilibrium&, const UniformEquilibrium&) = default;
};

struct SegmentOutcome {
    double ad_intensity = 0.0;
    double quantity = 0.0;
    double foc_residual = 0.0;

    friend bool operator==(const SegmentOutcome&, const SegmentOutcome&) = default;
};

struct TargetedEquilibrium {
    double price = 0.0;
    double margin = 0.0;
    std::vector<SegmentOutcome> segments;
    double zero_profit_residual = 0.0;

    double total_quantity() const;

    friend bool operator==(const TargetedEquilibrium&, const TargetedEquilibrium&) = default;
};

struct Metrics {
    /// -P / (P - C), the elasticity implied by the Lerner identity.
    double implied_elasticity = 0.0;
    double ad_to_sales = 0.0;
    /// F / (C Q + F + advertising spend).
    double fixed_cost_share = 0.0;
    /// Q_i / (alpha_i w_i N) per segment.
    std::vector<double> take_up;
    /// Q / (G N).
    double blended_take_up = 0.0;

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

struct ComparisonReport {
    ScenarioParams scenario;
    UniformEquilibrium uniform;
    TargetedEquilibrium targeted;
    /// (P_targeted - P_uniform) / P_uniform; negative means targeting lowers price.
    double price_change_fraction = 0.0;
    Metrics uniform_metrics;
    Metrics targeted_metrics;

    friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

struct ShortRunResult {
    double profit = 0.0;
    double revenue = 0.0;
    std::vector<double> ad_intensity;
    std::vector<double> quantity;
};

/// (P - C) N G phi(A) - F - R A N.
double uniform_profit(const MarketScenario& scenario, double price, double ad_intensity);

/// Free-entry equilibrium with one advertising intensity for everyone.
/// A* solves phi(A)/phi'(A) - A = F/(R N), which depends on neither G nor C;
/// the margin then follows from the advertising condition
/// phi'(A*) G (P - C) = R. Throws SolverError when F/(R N) <= 0.
UniformEquilibrium solve_uniform(const MarketScenario& scenario);

/// True iff every scenario's uniform A* agrees with the first within 1e-8.
bool uniform_ad_invariance_certificate(std::span<const MarketScenario> family);

/// (P - C) sum alpha_i w_i N phi(A_i) - sum R_i A_i w_i N - F.
double targeted_profit(const MarketScenario& scenario, double price,
                       std::span<const double> ad_intensities);

/// Per-segment intensities that satisfy phi'(A_i) = R_i / (alpha_i m).
/// Segments with alpha_i = 0 get A_i = 0.
std::vector<double> optimal_intensities(const MarketScenario& scenario, double margin);

/// Targeted profit at margin m with every A_i at its optimum for that margin.
double targeted_profit_at_margin(const MarketScenario& scenario, double margin);

/// Margin bracket [lo, hi] with profit(lo) < 0 < profit(hi) for the targeted
/// free-entry search. lo starts at 1e-6 C and shrinks by 10x as needed; hi
/// doubles from 1. Throws SolverError("market not viable ...") on failure.
root_find::Bracket targeted_margin_bracket(const MarketScenario& scenario);

/// Free-entry equilibrium with per-segment advertising.
TargetedEquilibrium solve_targeted(const MarketScenario& scenario, const SolverOptions& opt = {});

/// Profit at a fixed price with every A_i at its first-order optimum.
/// Throws DomainError unless fixed_price > C.
ShortRunResult short_run_targeted_profit(const MarketScenario& scenario, double fixed_price);

/// R_1 / R_2 < alpha_1 / alpha_2. Requires exactly two segments.
bool targeting_worthwhile(const MarketScenario& scenario);

Metrics derived_metrics(const UniformEquilibrium& eq, const MarketScenario& scenario);
Metrics derived_metrics(const TargetedEquilibrium& eq, const MarketScenario& scenario);

ComparisonReport compare(const MarketScenario& scenario, const SolverOptions& opt = {});

}  // namespace adtarget
