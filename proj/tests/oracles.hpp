#pragma once

// Test-only reference computations. Nothing here calls the library's
// phi / phi_prime / solvers; scenarios are only read for their parameters.

#include <cstddef>
#include <vector>

#include "adtarget/equilibrium.hpp"

namespace oracles {

/// 1 - (1 - lambda)^sqrt(a), computed with pow.
double informed_share(double lambda, double a);

/// Central difference of informed_share.
double central_difference(double lambda, double a, double h);

/// Plain bisection on s = sqrt(a) over [1e-12, 1e6] for phi'(s^2) = y.
double bisect_inverse_marginal(double lambda, double y);

/// 1 - (1 - lambda)^M.
double binomial_informed(double lambda, unsigned message_count);

struct GridOptimum {
    double profit;
    double a1;
    double a2;
};

/// Exhaustive search of two-segment targeted profit at a fixed price over
/// a1 in [0, a1_max], a2 in [0, a2_max] on a `step` grid. OpenMP-parallel
/// over a1 rows; ties resolve to the lowest (a1, a2) index.
GridOptimum grid_max_targeted_profit(const adtarget::MarketScenario& sc, double price, double a1_max,
                                     double a2_max, double step);
GridOptimum grid_max_targeted_profit_serial(const adtarget::MarketScenario& sc, double price, double a1_max,
                                            double a2_max, double step);

/// Two-segment targeted profit from first principles.
double targeted_profit(const adtarget::MarketScenario& sc, double price, double a1, double a2);

/// Free entry drives price to the minimum of average cost over advertising
/// choices. Ternary search on the average-cost price C + (F + R A N) / (N G phi(A)).
struct AverageCostMin {
    double price;
    double a1;
    double a2;
};
AverageCostMin min_average_cost_uniform(const adtarget::MarketScenario& sc);
/// Nested ternary search over (a1, a2) for two segments.
AverageCostMin min_average_cost_targeted(const adtarget::MarketScenario& sc);

}  // namespace oracles
