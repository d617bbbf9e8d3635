#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "adtarget/errors.hpp"
#include "adtarget/equilibrium.hpp"
#include "adtarget/scenarios.hpp"
#include "oracles.hpp"

using namespace adtarget;

namespace {

MarketScenario base() { return MarketScenario{}; }

MarketScenario with(auto&& edit) {
    ScenarioParams p;
    edit(p);
    return MarketScenario(p);
}

}  // namespace

TEST_CASE("scenario validation") {
    CHECK(base().blended_alpha() == doctest::Approx(0.22).epsilon(1e-14));
    CHECK_THROWS_AS(with([](auto& p) { p.segments[0].weight = 0.6; }), ValidationError);
    CHECK_THROWS_AS(with([](auto& p) { p.lambda = 1.5; }), ValidationError);
    CHECK_THROWS_AS(with([](auto& p) { p.population = 0.0; }), ValidationError);
    CHECK_THROWS_AS(with([](auto& p) { p.fixed_cost = -1.0; }), ValidationError);
    CHECK_THROWS_AS(with([](auto& p) { p.segments[1].ad_price = 0.0; }), ValidationError);
    CHECK_THROWS_AS(with([](auto& p) { p.segments.clear(); }), ValidationError);
    CHECK_THROWS_AS(with([](auto& p) { p.segments = {{1.0, 0.0, 0.01}}; }), ValidationError);
    try {
        with([](auto& p) { p.segments[1].alpha = 1.2; });
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "segments[1].alpha");
    }

    const auto dropped = with([](auto& p) {
        p.segments = {{0.5, 0.4, 0.0125}, {0.0, 0.9, 0.01}, {0.5, 0.04, 0.01}};
    });
    CHECK(dropped.segments().size() == 2);
    CHECK(dropped == base());
}

TEST_CASE("uniform_profit examples") {
    const auto sc = base();
    CHECK(std::abs(uniform_profit(sc, 10.152, 4.06)) < 0.2);
    CHECK(uniform_profit(sc, 12.0, 0.0) == -50.0);
    CHECK(uniform_profit(sc, 8.0, 3.0) == doctest::Approx(-50.0 - 0.01 * 3.0 * 1000.0));
    CHECK_THROWS_AS(uniform_profit(sc, 10.0, -1.0), DomainError);
}

TEST_CASE("solve_uniform examples") {
    const auto eq = solve_uniform(base());
    CHECK(std::abs(eq.ad_intensity - 4.06) <= 0.02);
    CHECK(std::abs(eq.quantity - 42.08) <= 0.25);
    CHECK(std::abs(eq.price - 10.152) <= 0.01);
    CHECK(std::abs(eq.foc_residual) <= 1e-10);
    CHECK(std::abs(eq.zero_profit_residual) <= 1e-10);

    const auto f100 = solve_uniform(with([](auto& p) { p.fixed_cost = 100.0; }));
    CHECK(std::abs(f100.ad_intensity - 7.57) <= 0.03);
    CHECK(std::abs(f100.quantity - 55.36) <= 0.3);
    CHECK(std::abs(f100.price - 11.173) <= 0.02);

    const auto l2 = solve_uniform(with([](auto& p) { p.lambda = 0.2; }));
    CHECK(std::abs(l2.ad_intensity - 3.39) <= 0.02);
    CHECK(std::abs(l2.price - 9.131) <= 0.01);

    CHECK_THROWS_AS(solve_uniform(with([](auto& p) { p.fixed_cost = 0.0; })), SolverError);
}

TEST_CASE("solve_uniform agrees with the average-cost minimum") {
    for (const auto& sc : preset(TableId::T1)) {
        const auto eq = solve_uniform(sc);
        const auto ref = oracles::min_average_cost_uniform(sc);
        CHECK(eq.price == doctest::Approx(ref.price).epsilon(1e-10));
        CHECK(eq.ad_intensity == doctest::Approx(ref.a1).epsilon(1e-5));
    }
}

TEST_CASE("uniform A* invariance certificate") {
    CHECK(uniform_ad_invariance_certificate(preset(TableId::T1)));
    CHECK(uniform_ad_invariance_certificate(preset(TableId::T2)));
    std::vector<MarketScenario> mixed{base(), with([](auto& p) { p.fixed_cost = 100.0; })};
    CHECK_FALSE(uniform_ad_invariance_certificate(mixed));
    const std::vector<MarketScenario> single{base()};
    CHECK(uniform_ad_invariance_certificate(single));
}

TEST_CASE("targeted_profit examples") {
    const auto sc = base();
    const std::vector<double> a{7.41, 0.188};
    const double profit = targeted_profit(sc, 10.152, a);
    CHECK(profit > 11.0);
    CHECK(profit < 12.0);
    CHECK(profit == doctest::Approx(oracles::targeted_profit(sc, 10.152, 7.41, 0.188)).epsilon(1e-12));
    const std::vector<double> zero{0.0, 0.0};
    CHECK(targeted_profit(sc, 10.152, zero) == -50.0);
    const std::vector<double> short_list{1.0};
    CHECK_THROWS_AS(targeted_profit(sc, 10.0, short_list), DomainError);

    const auto eq = solve_targeted(sc);
    std::vector<double> at_eq;
    for (const auto& s : eq.segments) at_eq.push_back(s.ad_intensity);
    CHECK(std::abs(targeted_profit(sc, eq.price, at_eq)) < 0.1);
    CHECK(std::abs(eq.price - 9.907) <= 0.02);
}

TEST_CASE("solve_targeted examples") {
    const auto b = solve_targeted(base());
    CHECK(std::abs(b.price - 9.907) <= 0.02);
    CHECK(std::abs(b.segments[0].ad_intensity - 6.13) <= 0.05);
    CHECK(std::abs(b.segments[0].quantity - 45.92) <= 0.3);

    const auto cols = preset(TableId::T1);
    const auto w25 = solve_targeted(cols[1]);
    CHECK(std::abs(w25.price - 10.778) <= 0.05);
    CHECK(std::abs(w25.segments[0].ad_intensity - 10.92) <= 0.1);
    CHECK(std::abs(w25.segments[1].ad_intensity - 0.30) <= 0.02);
    CHECK(std::abs(w25.segments[1].quantity - 1.68) <= 0.05);

    const auto w05 = solve_targeted(cols[3]);
    CHECK(std::abs(w05.price - 14.20) <= 0.07);
    CHECK(std::abs(w05.segments[0].ad_intensity - 32.72) <= 0.3);
    CHECK(std::abs(w05.segments[1].ad_intensity - 1.33) <= 0.05);
    CHECK(std::abs(w05.segments[1].quantity - 4.35) <= 0.1);
}

TEST_CASE("solve_targeted agrees with the average-cost minimum over (A1, A2)") {
    for (auto id : {TableId::T1, TableId::T2, TableId::T3, TableId::T4}) {
        for (const auto& sc : preset(id)) {
            const auto eq = solve_targeted(sc);
            const auto ref = oracles::min_average_cost_targeted(sc);
            CHECK(eq.price == doctest::Approx(ref.price).epsilon(1e-9));
            CHECK(eq.segments[0].ad_intensity == doctest::Approx(ref.a1).epsilon(1e-4));
        }
    }
}

TEST_CASE("solve_targeted handles zero purchase probability and k != 2") {
    const auto zero_alpha = with([](auto& p) {
        p.segments = {{0.5, 0.44, 0.0125}, {0.5, 0.0, 0.01}};
    });
    const auto eq = solve_targeted(zero_alpha);
    CHECK(eq.segments[1].ad_intensity == 0.0);
    CHECK(eq.segments[1].quantity == 0.0);

    const auto three = with([](auto& p) {
        p.segments = {{0.2, 0.6, 0.015}, {0.3, 0.3, 0.012}, {0.5, 0.05, 0.01}};
    });
    const auto eq3 = solve_targeted(three);
    REQUIRE(eq3.segments.size() == 3);
    CHECK(eq3.segments[0].ad_intensity > eq3.segments[1].ad_intensity);
    CHECK(eq3.segments[1].ad_intensity > eq3.segments[2].ad_intensity);
    CHECK(std::abs(eq3.zero_profit_residual) <= 1e-10);
    for (const auto& s : eq3.segments) CHECK(std::abs(s.foc_residual) <= 1e-10);

    const auto single = with([](auto& p) { p.segments = {{1.0, 0.22, 0.01}}; });
    CHECK(solve_targeted(single).price == doctest::Approx(solve_uniform(single).price).epsilon(1e-10));
}

TEST_CASE("market not viable without fixed cost") {
    CHECK_THROWS_AS(solve_targeted(with([](auto& p) { p.fixed_cost = 0.0; })), SolverError);
}

TEST_CASE("short_run_targeted_profit examples") {
    const auto sc = base();
    const auto sr = short_run_targeted_profit(sc, 10.152);
    CHECK(sr.profit > 11.0);
    CHECK(sr.profit < 12.0);
    CHECK(sr.revenue > 513.0);
    CHECK(sr.revenue < 516.0);

    const auto edge = short_run_targeted_profit(sc, 8.0 + 1e-6);
    CHECK(edge.profit == doctest::Approx(-50.0).epsilon(1e-6));
    CHECK(edge.ad_intensity[0] < 1e-9);

    CHECK_THROWS_AS(short_run_targeted_profit(sc, 8.0), DomainError);
    CHECK_THROWS_AS(short_run_targeted_profit(sc, 7.0), DomainError);

    for (double d1 : {-0.01, 0.0, 0.01}) {
        for (double d2 : {-0.01, 0.0, 0.01}) {
            std::vector<double> a{sr.ad_intensity[0] + d1, std::max(0.0, sr.ad_intensity[1] + d2)};
            CHECK(sr.profit >= targeted_profit(sc, 10.152, a));
        }
    }
}

TEST_CASE("targeting_worthwhile") {
    CHECK(targeting_worthwhile(base()));
    CHECK(targeting_worthwhile(preset(TableId::T2)[3]));
    CHECK_FALSE(targeting_worthwhile(with([](auto& p) {
        p.segments = {{0.5, 0.22, 0.01}, {0.5, 0.22, 0.01}};
    })));
    CHECK_THROWS_AS(targeting_worthwhile(with([](auto& p) { p.segments = {{1.0, 0.22, 0.01}}; })), DomainError);
}

TEST_CASE("compare examples") {
    const auto r = compare(base());
    CHECK(std::abs(100.0 * r.price_change_fraction - -2.4) <= 0.3);
    CHECK(r.price_change_fraction == (r.targeted.price - r.uniform.price) / r.uniform.price);

    const auto flip = compare(preset(TableId::T2)[3]);
    CHECK(std::abs(100.0 * flip.price_change_fraction - 0.9) <= 0.5);

    const auto same = compare(with([](auto& p) {
        p.segments = {{0.5, 0.22, 0.01}, {0.5, 0.22, 0.01}};
    }));
    CHECK(std::abs(same.price_change_fraction) <= 1e-6);
}

TEST_CASE("derived_metrics") {
    const auto sc = base();
    const auto r = compare(sc);
    CHECK(r.uniform_metrics.implied_elasticity == doctest::Approx(-4.7).epsilon(0.1 / 4.7));
    CHECK(std::abs(r.uniform_metrics.ad_to_sales - 0.095) <= 0.002);
    CHECK(std::abs(r.uniform_metrics.fixed_cost_share - 0.117) <= 0.002);
    CHECK(std::abs(r.uniform_metrics.blended_take_up - 0.191) <= 0.002);

    CHECK(std::abs(r.targeted_metrics.implied_elasticity - -5.2) <= 0.1);
    CHECK(std::abs(r.targeted_metrics.ad_to_sales - 0.084) <= 0.002);
    CHECK(std::abs(r.targeted_metrics.fixed_cost_share - 0.108) <= 0.002);
    CHECK(std::abs(r.targeted_metrics.take_up[0] - 0.230) <= 0.002);
    CHECK(r.targeted_metrics.take_up[1] > 0.03);
    CHECK(r.targeted_metrics.take_up[1] < 0.04);

    UniformEquilibrium doubled = r.uniform;
    doubled.price = 16.0;
    doubled.margin = 8.0;
    CHECK(derived_metrics(doubled, sc).implied_elasticity == -2.0);
}

TEST_CASE("narrative ad prices reproduce the walkthrough's group-2 values") {
    const auto sc = preset(TableId::T1, AdPriceReading::NarrativeText)[0];
    const auto eq = solve_targeted(sc);
    CHECK(std::abs(eq.segments[1].ad_intensity - 0.09) <= 0.01);
    CHECK(std::abs(eq.segments[1].quantity - 0.62) <= 0.03);
    CHECK(std::abs(eq.price - 9.907) <= 0.01);
}

TEST_CASE("ordering and profit dominance under equal ad prices") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        ScenarioParams p;
        const double w1 = 0.05 + 0.9 * u(rng);
        const double a1 = 0.1 + 0.9 * u(rng);
        const double a2 = a1 * (0.01 + 0.9 * u(rng));
        const double r = 0.005 + 0.02 * u(rng);
        p.uniform_ad_price = r;
        p.fixed_cost = 10.0 + 200.0 * u(rng);
        p.lambda = 0.05 + 0.5 * u(rng);
        p.segments = {{w1, a1, r}, {1.0 - w1, a2, r}};
        const MarketScenario sc(p);
        const auto eq = solve_uniform(sc);
        const auto sr = short_run_targeted_profit(sc, eq.price);
        CHECK(sr.ad_intensity[0] > eq.ad_intensity);
        CHECK(eq.ad_intensity > sr.ad_intensity[1]);
        CHECK(sr.profit >= -1e-8);
    }
}

TEST_CASE("residual bounds on random feasible scenarios") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        ScenarioParams p;
        const double w1 = 0.02 + 0.96 * u(rng);
        p.marginal_cost = 20.0 * u(rng);
        p.fixed_cost = 1.0 + 500.0 * u(rng);
        p.population = 100.0 + 1e5 * u(rng);
        p.uniform_ad_price = 0.001 + 0.05 * u(rng);
        p.lambda = 0.01 + 0.9 * u(rng);
        p.segments = {{w1, 0.01 + 0.99 * u(rng), 0.001 + 0.05 * u(rng)},
                      {1.0 - w1, 0.01 + 0.99 * u(rng), 0.001 + 0.05 * u(rng)}};
        const MarketScenario sc(p);
        const auto r = compare(sc);
        CHECK(std::abs(r.uniform.foc_residual) <= 1e-10);
        CHECK(std::abs(r.uniform.zero_profit_residual) <= 1e-10);
        CHECK(std::abs(r.targeted.zero_profit_residual) <= 1e-10);
        for (const auto& s : r.targeted.segments) CHECK(std::abs(s.foc_residual) <= 1e-10);
    }
}

TEST_CASE("outer bracket has a single sign change for every table scenario") {
    for (auto id : {TableId::T1, TableId::T2, TableId::T3, TableId::T4}) {
        for (const auto& sc : preset(id)) {
            const auto b = targeted_margin_bracket(sc);
            CHECK(targeted_profit_at_margin(sc, b.lo) < 0.0);
            CHECK(targeted_profit_at_margin(sc, b.hi) > 0.0);
            int changes = 0;
            double prev = targeted_profit_at_margin(sc, b.lo);
            for (int i = 1; i <= 1000; ++i) {
                const double m = b.lo + (b.hi - b.lo) * i / 1000.0;
                const double cur = targeted_profit_at_margin(sc, m);
                if (std::signbit(cur) != std::signbit(prev)) ++changes;
                prev = cur;
            }
            CHECK(changes == 1);
        }
    }
}
