#include "adtarget/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "adtarget/errors.hpp"

namespace adtarget {

namespace {

std::string seg_field(std::size_t i, const char* name) {
    return "segments[" + std::to_string(i) + "]." + name;
}

void require(bool ok, const std::string& field, const char* what) {
    if (!ok) throw ValidationError(field, what);
}

ScenarioParams validated(ScenarioParams p) {
    auto finite = [](double x) { return std::isfinite(x); };
    require(finite(p.marginal_cost) && p.marginal_cost >= 0.0, "marginal_cost", "must be finite and >= 0");
    require(finite(p.fixed_cost) && p.fixed_cost >= 0.0, "fixed_cost", "must be finite and >= 0");
    require(finite(p.population) && p.population > 0.0, "population", "must be finite and > 0");
    require(finite(p.uniform_ad_price) && p.uniform_ad_price > 0.0, "uniform_ad_price",
            "must be finite and > 0");

    std::vector<Segment> kept;
    for (std::size_t i = 0; i < p.segments.size(); ++i) {
        const Segment& s = p.segments[i];
        require(finite(s.weight) && s.weight >= 0.0 && s.weight <= 1.0, seg_field(i, "weight"),
                "must lie in [0, 1]");
        require(finite(s.alpha) && s.alpha >= 0.0 && s.alpha <= 1.0, seg_field(i, "alpha"),
                "must lie in [0, 1]");
        require(finite(s.ad_price) && s.ad_price > 0.0, seg_field(i, "ad_price"), "must be finite and > 0");
        if (s.weight > 0.0) kept.push_back(s);
    }
    require(!kept.empty(), "segments", "at least one segment with positive weight is required");
    const double total = std::accumulate(kept.begin(), kept.end(), 0.0,
                                         [](double acc, const Segment& s) { return acc + s.weight; });
    require(std::abs(total - 1.0) <= 1e-12, "segments", "weights must sum to 1");
    p.segments = std::move(kept);
    return p;
}

double blended(const ScenarioParams& p) {
    double g = 0.0;
    for (const auto& s : p.segments) g += s.weight * s.alpha;
    return g;
}

}  // namespace

MarketScenario::MarketScenario(ScenarioParams params)
    : params_(validated(std::move(params))), tech_(params_.lambda), blended_alpha_(blended(params_)) {
    require(blended_alpha_ > 0.0 && blended_alpha_ <= 1.0, "segments",
            "blended purchase probability must lie in (0, 1]");
}

double TargetedEquilibrium::total_quantity() const {
    double q = 0.0;
    for (const auto& s : segments) q += s.quantity;
    return q;
}

double uniform_profit(const MarketScenario& sc, double price, double ad_intensity) {
    const double n = sc.population();
    return (price - sc.marginal_cost()) * n * sc.blended_alpha() * phi(sc.tech(), ad_intensity) -
           sc.fixed_cost() - sc.uniform_ad_price() * ad_intensity * n;
}

UniformEquilibrium solve_uniform(const MarketScenario& sc) {
    const double k = sc.tech().decay();
    const double n = sc.population();
    const double r = sc.uniform_ad_price();
    const double target = sc.fixed_cost() / (r * n);
    if (!(target > 0.0)) {
        throw SolverError("solve_uniform: no positive root (F / (R N) = " + std::to_string(target) +
                          "); a positive fixed cost is required");
    }

    // In s = sqrt(A): phi/phi' - A = 2 s (e^{ks} - 1) / k - s^2, increasing from 0.
    auto h = [&](double s) {
        const double em1 = std::expm1(k * s);
        const double value = 2.0 * s * em1 / k - s * s - target;
        const double slope = 2.0 * em1 / k + 2.0 * s * em1;
        return std::pair{value, slope};
    };
    double hi = 1.0;
    while (h(hi).first <= 0.0) {
        hi *= 2.0;
        if (!std::isfinite(h(hi).first)) {
            throw SolverError("solve_uniform: upper bracket overflowed (F / (R N) = " +
                              std::to_string(target) + ")");
        }
    }
    double lo = 0.5 * hi;
    while (h(lo).first >= 0.0) lo *= 0.5;
    const double s = root_find::safeguarded_newton(h, {lo, hi}, {.rel_tol = 1e-15, .max_iter = 200});

    UniformEquilibrium eq;
    eq.ad_intensity = s * s;
    const double g = sc.blended_alpha();
    const double dphi = phi_prime(sc.tech(), eq.ad_intensity);
    eq.margin = r / (g * dphi);
    eq.price = sc.marginal_cost() + eq.margin;
    eq.quantity = n * g * phi(sc.tech(), eq.ad_intensity);
    eq.foc_residual = (dphi * g * eq.margin - r) / std::max(1.0, r);
    const double costs = sc.fixed_cost() + r * eq.ad_intensity * n;
    eq.zero_profit_residual = (eq.margin * eq.quantity - costs) / std::max(1.0, costs);
    return eq;
}

bool uniform_ad_invariance_certificate(std::span<const MarketScenario> family) {
    if (family.empty()) return true;
    const double first = solve_uniform(family.front()).ad_intensity;
    return std::all_of(family.begin() + 1, family.end(), [&](const MarketScenario& sc) {
        return std::abs(solve_uniform(sc).ad_intensity - first) <= 1e-8;
    });
}

double targeted_profit(const MarketScenario& sc, double price, std::span<const double> ad_intensities) {
    const auto segs = sc.segments();
    if (ad_intensities.size() != segs.size()) {
        throw DomainError("targeted_profit: expected " + std::to_string(segs.size()) +
                          " intensities, got " + std::to_string(ad_intensities.size()));
    }
    const double n = sc.population();
    double informed_buyers = 0.0;
    double ad_spend = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const double reach = segs[i].weight * n;
        informed_buyers += segs[i].alpha * reach * phi(sc.tech(), ad_intensities[i]);
        ad_spend += segs[i].ad_price * ad_intensities[i] * reach;
    }
    return (price - sc.marginal_cost()) * informed_buyers - ad_spend - sc.fixed_cost();
}

std::vector<double> optimal_intensities(const MarketScenario& sc, double margin) {
    if (!(margin > 0.0)) throw DomainError("optimal_intensities: margin must be positive");
    const auto segs = sc.segments();
    std::vector<double> a(segs.size(), 0.0);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (segs[i].alpha == 0.0) continue;
        const double y = segs[i].ad_price / (segs[i].alpha * margin);
        try {
            a[i] = inverse_phi_prime(sc.tech(), y);
        } catch (const std::exception& e) {
            throw SolverError("segment " + std::to_string(i) + ": " + e.what());
        }
    }
    return a;
}

double targeted_profit_at_margin(const MarketScenario& sc, double margin) {
    const auto a = optimal_intensities(sc, margin);
    return targeted_profit(sc, sc.marginal_cost() + margin, a);
}

root_find::Bracket targeted_margin_bracket(const MarketScenario& sc) {
    auto profit = [&](double m) { return targeted_profit_at_margin(sc, m); };

    double hi = 1.0;
    int doublings = 0;
    while (!(profit(hi) > 0.0)) {
        if (++doublings > 1024 || !std::isfinite(hi * 2.0)) {
            throw SolverError("market not viable: targeted profit never turns positive (last margin " +
                              std::to_string(hi) + ")");
        }
        hi *= 2.0;
    }

    double lo = sc.marginal_cost() > 0.0 ? 1e-6 * sc.marginal_cost() : 1e-6;
    lo = std::min(lo, 0.5 * hi);
    int shrinks = 0;
    while (!(profit(lo) < 0.0)) {
        if (++shrinks > 300 || lo < 1e-300) {
            throw SolverError("market not viable: targeted profit is nonnegative at every margin tried "
                              "(F = " + std::to_string(sc.fixed_cost()) + ")");
        }
        lo *= 0.1;
    }
    return {lo, hi};
}

TargetedEquilibrium solve_targeted(const MarketScenario& sc, const SolverOptions& opt) {
    const auto bracket = targeted_margin_bracket(sc);
    const double m = root_find::bisect([&](double x) { return targeted_profit_at_margin(sc, x); }, bracket,
                                       {.rel_tol = opt.margin_rel_tol, .max_iter = 2000});

    const auto a = optimal_intensities(sc, m);
    const auto segs = sc.segments();
    const double n = sc.population();

    TargetedEquilibrium eq;
    eq.margin = m;
    eq.price = sc.marginal_cost() + m;
    double ad_spend = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        SegmentOutcome out;
        out.ad_intensity = a[i];
        out.quantity = segs[i].alpha * segs[i].weight * n * phi(sc.tech(), a[i]);
        if (a[i] > 0.0) {
            out.foc_residual = (phi_prime(sc.tech(), a[i]) * segs[i].alpha * m - segs[i].ad_price) /
                               std::max(1.0, segs[i].ad_price);
        }
        ad_spend += segs[i].ad_price * a[i] * segs[i].weight * n;
        eq.segments.push_back(out);
    }
    const double costs = sc.fixed_cost() + ad_spend;
    eq.zero_profit_residual = (m * eq.total_quantity() - costs) / std::max(1.0, costs);
    return eq;
}

ShortRunResult short_run_targeted_profit(const MarketScenario& sc, double fixed_price) {
    if (!(fixed_price > sc.marginal_cost())) {
        throw DomainError("short_run_targeted_profit: price must exceed marginal cost");
    }
    ShortRunResult out;
    out.ad_intensity = optimal_intensities(sc, fixed_price - sc.marginal_cost());
    out.profit = targeted_profit(sc, fixed_price, out.ad_intensity);
    const auto segs = sc.segments();
    double q = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        out.quantity.push_back(segs[i].alpha * segs[i].weight * sc.population() *
                               phi(sc.tech(), out.ad_intensity[i]));
        q += out.quantity.back();
    }
    out.revenue = fixed_price * q;
    return out;
}

bool targeting_worthwhile(const MarketScenario& sc) {
    const auto segs = sc.segments();
    if (segs.size() != 2) {
        throw DomainError("targeting_worthwhile: exactly two segments required, got " +
                          std::to_string(segs.size()));
    }
    // R1/R2 < a1/a2 with R2 > 0 and a2 >= 0.
    return segs[0].ad_price * segs[1].alpha < segs[0].alpha * segs[1].ad_price;
}

Metrics derived_metrics(const UniformEquilibrium& eq, const MarketScenario& sc) {
    const double n = sc.population();
    const double ad_spend = sc.uniform_ad_price() * eq.ad_intensity * n;
    Metrics m;
    m.implied_elasticity = -eq.price / eq.margin;
    m.ad_to_sales = ad_spend / (eq.price * eq.quantity);
    m.fixed_cost_share = sc.fixed_cost() / (sc.marginal_cost() * eq.quantity + sc.fixed_cost() + ad_spend);
    const double informed = phi(sc.tech(), eq.ad_intensity);
    m.take_up.assign(sc.segments().size(), informed);
    m.blended_take_up = eq.quantity / (sc.blended_alpha() * n);
    return m;
}

Metrics derived_metrics(const TargetedEquilibrium& eq, const MarketScenario& sc) {
    const auto segs = sc.segments();
    const double n = sc.population();
    double ad_spend = 0.0;
    Metrics m;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        ad_spend += segs[i].ad_price * eq.segments[i].ad_intensity * segs[i].weight * n;
        const double potential = segs[i].alpha * segs[i].weight * n;
        m.take_up.push_back(potential > 0.0 ? eq.segments[i].quantity / potential : 0.0);
    }
    const double q = eq.total_quantity();
    m.implied_elasticity = -eq.price / eq.margin;
    m.ad_to_sales = ad_spend / (eq.price * q);
    m.fixed_cost_share = sc.fixed_cost() / (sc.marginal_cost() * q + sc.fixed_cost() + ad_spend);
    m.blended_take_up = q / (sc.blended_alpha() * n);
    return m;
}

ComparisonReport compare(const MarketScenario& sc, const SolverOptions& opt) {
    ComparisonReport r;
    r.scenario = sc.params();
    r.uniform = solve_uniform(sc);
    r.targeted = solve_targeted(sc, opt);
    r.price_change_fraction = (r.targeted.price - r.uniform.price) / r.uniform.price;
    r.uniform_metrics = derived_metrics(r.uniform, sc);
    r.targeted_metrics = derived_metrics(r.targeted, sc);
    return r;
}

}  // namespace adtarget
