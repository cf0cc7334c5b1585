#include "microgrid/cli.hpp"

#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "microgrid/errors.hpp"
#include "microgrid/nasa_power.hpp"
#include "microgrid/reports.hpp"
#include "microgrid/scenario_config.hpp"
#include "text_util.hpp"

namespace microgrid {

namespace {

struct Options {
    std::string command;
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string strategy;
    unsigned workers = 0;
    bool allow_network = false;
};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

void report_error(std::ostream& err, const std::string& cls, const std::string& field, const std::string& message) {
    err << "error: class=" << cls << " field=" << (field.empty() ? "-" : field) << " message=\"" << escape(message)
        << "\"\n";
}

std::string output_dir(const Options& opt, const ScenarioConfig& config) {
    if (!opt.out.empty()) return opt.out;
    if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
    return config.output_dir;
}

std::string lcoe_text(const EconomicSummary& e) { return e.lcoe ? detail::format_fixed(*e.lcoe, 4) : "n/a"; }

int cmd_baseline(const ScenarioConfig& config, const ScenarioData& data, const ReportHeader& h, const std::string& dir,
                 std::ostream& out) {
    const auto econ = baseline_grid(data.load, config.grid_tariff, config.finance);
    const auto em = grid_emissions(data.load.sum(), config.emissions);
    write_baseline_reports(dir, h, config, data.load, econ, em);
    out << "annual_kwh=" << detail::format_fixed(data.load.sum(), 1)
        << " operating_cost=" << detail::format_fixed(econ.operating_cost, 2)
        << " npc=" << detail::format_fixed(econ.npc, 2) << " lcoe=" << lcoe_text(econ)
        << " co2_kg=" << detail::format_fixed(em.total(Species::co2), 1) << '\n';
    return kExitOk;
}

int cmd_simulate(const ScenarioConfig& config, const ScenarioData& data, const ReportHeader& h,
                 const std::string& dir, std::ostream& out) {
    const auto result = simulate_year(config.system, data.resources, data.load, config.initial_soc);
    const auto econ = system_costs(config.system, result.totals, config.prices, config.finance);
    const auto em = genset_emissions(result.totals.fuel_l, config.emissions);
    write_simulation_reports(dir, h, config, result, econ, em);
    const auto& t = result.totals;
    out << "npc=" << detail::format_fixed(econ.npc, 2) << " lcoe=" << lcoe_text(econ)
        << " renewable_fraction=" << detail::format_fixed(t.renewable_fraction, 4)
        << " unmet_fraction=" << detail::format_fixed(t.load_kwh > 0 ? t.unmet_kwh / t.load_kwh : 0.0, 6)
        << " fuel_l=" << detail::format_fixed(t.fuel_l, 1) << '\n';
    return kExitOk;
}

int cmd_optimize(const ScenarioConfig& config, const ScenarioData& data, const ReportHeader& h,
                 const std::string& dir, unsigned workers, std::ostream& out, std::ostream& err) {
    if (!config.search) throw ConfigError("search", "required for the optimize command");
    const auto inputs = evaluation_inputs(config, data);
    const auto result = optimize(*config.search, inputs, config.constraints, workers);
    write_optimization_reports(dir, h, config, result);
    out << "evaluated=" << result.evaluated << " feasible=" << result.ranked.size() << '\n';
    if (result.empty()) {
        const auto& st = result.stats;
        report_error(err, "infeasible", "constraints",
                     "no feasible candidate among " + std::to_string(result.evaluated) +
                         " (unmet violations " + std::to_string(st.unmet_violations) + ", renewable violations " +
                         std::to_string(st.renewable_violations) + ")");
        return kExitInfeasible;
    }
    const auto& best = result.ranked.front();
    const auto& f = best.fleet;
    out << "best n_pv=" << f.n_pv << " n_wt=" << f.n_wt << " n_batt=" << f.n_batt
        << " genset_kw=" << detail::format_double(f.genset_kw)
        << " converter_kw=" << detail::format_double(f.converter_kw)
        << " npc=" << detail::format_fixed(best.economics.npc, 2) << " lcoe=" << lcoe_text(best.economics) << '\n';
    return kExitOk;
}

int cmd_synth(const ScenarioData& data, const ReportHeader& h, const std::string& dir, std::ostream& out) {
    write_synthesis_reports(dir, h, data);
    out << "ghi_kwh_m2_day=" << detail::format_fixed(data.resources.ghi.mean() * 24.0, 3)
        << " wind_ms=" << detail::format_fixed(data.resources.wind.mean(), 3)
        << " load_kwh_day=" << detail::format_fixed(data.load.mean() * 24.0, 1) << '\n';
    return kExitOk;
}

int run(const Options& opt, std::ostream& out, std::ostream& err) {
    auto config = load_scenario(opt.config);
    if (opt.seed) config.seed = *opt.seed;
    if (!opt.strategy.empty()) {
        config.system.strategy = opt.strategy == "cc" ? Strategy::cycle_charging : Strategy::load_following;
    }
    const auto dir = output_dir(opt, config);

    ReportHeader h{opt.command, config.name, config.seed,
                   opt.command == "simulate" || opt.command == "optimize"
                       ? std::string(to_string(config.system.strategy))
                       : std::string()};
    out << header_line(h) << '\n';

    const auto data = prepare_data(config, opt.allow_network);
    int code = kExitOk;
    if (opt.command == "baseline") code = cmd_baseline(config, data, h, dir, out);
    else if (opt.command == "simulate") code = cmd_simulate(config, data, h, dir, out);
    else if (opt.command == "optimize") {
        unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
        code = cmd_optimize(config, data, h, dir, workers, out, err);
    } else code = cmd_synth(data, h, dir, out);
    out << "output_dir=" << dir << '\n';
    return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Hybrid microgrid simulation, costing and sizing", "microgrid"};
    app.add_option("command", opt.command, "baseline | simulate | optimize | synth")
        ->required()
        ->check(CLI::IsMember({"baseline", "simulate", "optimize", "synth"}));
    app.add_option("--config", opt.config, "Scenario file (JSON, comments allowed)")->required();
    app.add_option("--out", opt.out, "Output directory (overrides MICROGRID_OUT_DIR and the config)");
    app.add_option("--seed", opt.seed, "Seed for synthesized series");
    app.add_option("--strategy", opt.strategy, "Dispatch strategy")->check(CLI::IsMember({"lf", "cc"}));
    app.add_option("--workers", opt.workers, "Optimizer threads (default: hardware concurrency)")
        ->check(CLI::Range(1u, 1024u));
    app.add_flag("--allow-network", opt.allow_network, "Permit fetching climatology from NASA POWER");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", "", e.what());
        return kExitConfig;
    }

    try {
        return run(opt, out, err);
    } catch (const ConfigError& e) {
        report_error(err, "config", e.field(), e.what());
        return kExitConfig;
    } catch (const nasa::OfflineError& e) {
        report_error(err, "offline", "resources.source", e.what());
        return kExitRuntime;
    } catch (const nasa::ResponseParseError& e) {
        report_error(err, "network", e.field(), e.what());
        return kExitRuntime;
    } catch (const nasa::HttpStatusError& e) {
        report_error(err, "network", "", e.what());
        return kExitRuntime;
    } catch (const nasa::NetworkError& e) {
        report_error(err, "network", "", e.what());
        return kExitRuntime;
    } catch (const ValidationError& e) {
        report_error(err, "validation", "", e.what());
        return kExitRuntime;
    } catch (const std::exception& e) {
        report_error(err, "runtime", "", e.what());
        return kExitRuntime;
    }
}

}  // namespace microgrid
