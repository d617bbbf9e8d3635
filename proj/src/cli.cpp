#include "adtarget/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "adtarget/errors.hpp"
#include "adtarget/info_model.hpp"
#include "adtarget/report_io.hpp"
#include "adtarget/scenarios.hpp"

namespace adtarget::cli {

using nlohmann::json;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string format;
    std::string out_path;
    std::uint64_t seed = 20011;
    double rel_tol = 1e-12;
};

ScenarioParams load_config(const GlobalOptions& g) {
    if (g.config_path.empty()) return ScenarioParams{};
    std::ifstream in(g.config_path);
    if (!in) throw ValidationError("--config", "cannot open '" + g.config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_config(buf.str());
}

std::string resolve_format(const GlobalOptions& g, const char* fallback) {
    return g.format.empty() ? fallback : g.format;
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ValidationError("--values", "not a number: '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
            throw ValidationError("--values", "not a number: '" + item + "'");
        }
        values.push_back(v);
    }
    return values;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Free-entry equilibria with and without target marketing"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--config", g.config_path, "Scenario file (key = value lines)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out_path, "Write the document to this path instead of stdout");
    app.add_option("--seed", g.seed, "Seed for Monte Carlo commands");
    app.add_option("--rel-tol", g.rel_tol, "Relative bracket width for the margin bisection")
        ->check(CLI::PositiveNumber);

    auto* solve = app.add_subcommand("solve", "Solve one scenario with and without targeting");

    std::string table_id;
    bool diff = false;
    bool narrative_prices = false;
    auto* table = app.add_subcommand("table", "Reproduce a published table");
    table->add_option("--id", table_id, "T1..T4")->required();
    table->add_flag("--diff", diff, "Add published values and absolute deviations");
    table->add_flag("--narrative-ad-prices", narrative_prices, "Charge 0.0125 to both groups");

    std::string sweep_param;
    std::string sweep_values;
    auto* sweep_cmd = app.add_subcommand("sweep", "Comparative statics over one parameter");
    sweep_cmd->add_option("--param", sweep_param,
                          "w1 | alpha1 | alpha2 | fixed_cost | lambda | uniform_ad_price | ad_price[i]")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required();

    double curve_lambda = 0.1, curve_max = 40.0, curve_step = 0.1;
    auto* curve = app.add_subcommand("phi-curve", "Informed fraction over a grid of intensities");
    curve->add_option("--lambda", curve_lambda);
    curve->add_option("--max-a", curve_max);
    curve->add_option("--step", curve_step);

    double size = 40e9, change = 0.01, offline = 2.0, growth = 5.0;
    auto* impact = app.add_subcommand("impact", "Aggregate cost of a price change");
    impact->add_option("--market-size", size);
    impact->add_option("--price-change", change, "Fractional price change (0.01 = 1%)");
    impact->add_option("--offline-multiplier", offline);
    impact->add_option("--growth-multiplier", growth);

    double mc_lambda = 0.1;
    std::uint64_t mc_messages = 4, mc_trials = 1'000'000;
    auto* mc = app.add_subcommand("mc-check", "Monte Carlo check of the informed fraction");
    mc->add_option("--lambda", mc_lambda);
    mc->add_option("--messages", mc_messages);
    mc->add_option("--trials", mc_trials);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    std::ostringstream doc;
    try {
        if (solve->parsed()) {
            const MarketScenario sc(load_config(g));
            const auto report = compare(sc, {.margin_rel_tol = g.rel_tol});
            if (resolve_format(g, "json") == "json") {
                doc << json(report).dump(2) << '\n';
            } else {
                write_report_csv(doc, report);
            }
        } else if (table->parsed()) {
            const TableId id = parse_table_id(table_id);
            const auto rows = run_table(id, {.margin_rel_tol = g.rel_tol},
                                        narrative_prices ? AdPriceReading::NarrativeText : AdPriceReading::Tables);
            if (resolve_format(g, "csv") == "json") {
                doc << table_json(id, rows, diff).dump(2) << '\n';
            } else {
                write_table_csv(doc, id, rows, diff);
            }
        } else if (sweep_cmd->parsed()) {
            SweepSpec spec{load_config(g), SweepPath::parse(sweep_param), parse_value_list(sweep_values)};
            static_cast<void>(MarketScenario{spec.base});
            const auto points = sweep(spec, {.margin_rel_tol = g.rel_tol});
            if (resolve_format(g, "csv") == "json") {
                doc << sweep_json(points).dump(2) << '\n';
            } else {
                write_sweep_csv(doc, points);
            }
        } else if (curve->parsed()) {
            const InfoTechnology tech(curve_lambda);
            if (!(curve_step > 0.0) || !(curve_max >= 0.0)) {
                throw ValidationError("--step", "step must be > 0 and max-a >= 0");
            }
            const auto count = static_cast<std::size_t>(std::floor(curve_max / curve_step + 1e-9)) + 1;
            if (resolve_format(g, "csv") == "json") {
                json pts = json::array();
                for (std::size_t i = 0; i < count; ++i) {
                    const double a = static_cast<double>(i) * curve_step;
                    pts.push_back({{"a", a}, {"phi", phi(tech, a)}});
                }
                doc << json{{"lambda", curve_lambda}, {"points", pts}}.dump(2) << '\n';
            } else {
                doc << "a,phi\n";
                for (std::size_t i = 0; i < count; ++i) {
                    const double a = static_cast<double>(i) * curve_step;
                    doc << format_double(a) << ',' << format_double(phi(tech, a)) << '\n';
                }
            }
        } else if (impact->parsed()) {
            if (!(size >= 0.0)) throw ValidationError("--market-size", "must be >= 0");
            const auto m = market_impact(size, change, offline, growth);
            if (resolve_format(g, "json") == "json") {
                doc << json(m).dump(2) << '\n';
            } else {
                doc << "current_cost,with_offline,projected\n"
                    << format_double(m.current_cost) << ',' << format_double(m.with_offline) << ','
                    << format_double(m.projected) << '\n';
            }
        } else if (mc->parsed()) {
            if (!(mc_lambda >= 0.0 && mc_lambda <= 1.0)) throw ValidationError("--lambda", "must lie in [0, 1]");
            if (mc_trials < 1) throw ValidationError("--trials", "must be >= 1");
            const auto est = informed_fraction_monte_carlo(mc_lambda, mc_messages, mc_trials, g.seed);
            const double exact = 1.0 - std::pow(1.0 - mc_lambda, static_cast<double>(mc_messages));
            const double z = est.std_error > 0.0 ? (est.estimate - exact) / est.std_error : 0.0;
            const bool within = std::abs(est.estimate - exact) <= 3.0 * est.std_error + 1e-15;
            if (resolve_format(g, "json") == "json") {
                doc << json{{"lambda", mc_lambda},   {"messages", mc_messages}, {"trials", mc_trials},
                            {"seed", g.seed},        {"estimate", est.estimate}, {"std_error", est.std_error},
                            {"closed_form", exact},  {"z", z},                   {"within_3_sigma", within}}
                           .dump(2)
                    << '\n';
            } else {
                doc << "lambda,messages,trials,seed,estimate,std_error,closed_form,z,within_3_sigma\n"
                    << format_double(mc_lambda) << ',' << mc_messages << ',' << mc_trials << ',' << g.seed << ','
                    << format_double(est.estimate) << ',' << format_double(est.std_error) << ','
                    << format_double(exact) << ',' << format_double(z) << ',' << (within ? "true" : "false")
                    << '\n';
            }
        }
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kUsage;
    }

    if (g.out_path.empty()) {
        out << doc.str();
    } else {
        std::ofstream file(g.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << g.out_path << "'\n";
            return kUsage;
        }
        file << doc.str();
    }
    return kOk;
}

}  // namespace adtarget::cli
