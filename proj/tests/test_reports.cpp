#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "microgrid/errors.hpp"
#include "microgrid/reports.hpp"
#include "support.hpp"

using namespace microgrid;
using json = nlohmann::json;
using testing_support::read_file;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

struct SimRun {
    ScenarioConfig config;
    std::string dir;
};

SimRun run_scenario_one(const std::string& name) {
    SimRun r{load_scenario(testing_support::source_path("scenarios/scenario1.json")),
             testing_support::temp_dir(name)};
    const auto& d = testing_support::khobar_data();
    auto result = simulate_year(r.config.system, d.resources, d.load, r.config.initial_soc);
    auto econ = system_costs(r.config.system, result.totals, r.config.prices, r.config.finance);
    auto em = genset_emissions(result.totals.fuel_l, r.config.emissions);
    ReportHeader h{"simulate", r.config.name, r.config.seed, "lf"};
    write_simulation_reports(r.dir, h, r.config, result, econ, em);
    return r;
}

}  // namespace

TEST(HeaderLine, Format) {
    EXPECT_EQ(header_line({"simulate", "s1", 7, "cc"}), "microgrid simulate scenario=s1 seed=7 strategy=cc");
    EXPECT_EQ(header_line({"baseline", "b", 3, ""}), "microgrid baseline scenario=b seed=3");
}

TEST(SimulationReports, FilesAndCostRows) {
    auto run = run_scenario_one("reports_files");
    for (const char* f : {"summary.json", "hourly.csv", "costs.csv", "monthly.csv", "cost_shares.csv",
                          "emissions.json"}) {
        EXPECT_TRUE(std::filesystem::exists(run.dir + "/" + f)) << f;
    }
    auto costs = parse_csv(read_file(run.dir + "/costs.csv"));
    ASSERT_EQ(costs.size(), 7u);
    EXPECT_EQ(costs[0], (std::vector<std::string>{"component", "capital", "replacement", "om", "fuel", "salvage",
                                                   "total"}));
    const char* names[] = {"DG", "BT", "WT", "PV", "Converter", "System"};
    for (int i = 0; i < 6; ++i) EXPECT_EQ(costs[i + 1][0], names[i]);

    auto hourly = parse_csv(read_file(run.dir + "/hourly.csv"));
    EXPECT_EQ(hourly.size(), 8761u);
    EXPECT_EQ(hourly[0].size(), 12u);
    EXPECT_EQ(hourly[0][0], "hour");
    EXPECT_EQ(hourly[8760][0], "8759");

    auto monthly = parse_csv(read_file(run.dir + "/monthly.csv"));
    EXPECT_EQ(monthly.size(), 37u);
}

// Rebuild the headline numbers from the two CSV files alone.
TEST(SimulationReports, SummaryReproducibleFromCsv) {
    auto run = run_scenario_one("reports_reproduce");
    auto hourly = parse_csv(read_file(run.dir + "/hourly.csv"));
    auto costs = parse_csv(read_file(run.dir + "/costs.csv"));
    auto summary = json::parse(read_file(run.dir + "/summary.json"));

    double genset = 0, fuel = 0, load = 0, unmet = 0, pv = 0, worst = 0;
    for (std::size_t i = 1; i < hourly.size(); ++i) {
        std::vector<double> v;
        for (const auto& c : hourly[i]) v.push_back(std::stod(c));
        pv += v[1];
        genset += v[3];
        load += v[7];
        unmet += v[8];
        fuel += v[11];
        const double residual =
            v[1] + v[2] + v[3] + v[5] - ((v[7] - v[8]) + v[4] + v[9] + v[10]);
        worst = std::max(worst, std::abs(residual));
    }
    const double served = load - unmet;
    EXPECT_LT(worst, 1e-6);
    EXPECT_NEAR(summary["energy"]["pv_kwh"].get<double>(), pv, 1e-6 * pv);
    EXPECT_NEAR(summary["energy"]["fuel_l"].get<double>(), fuel, 1e-6 * fuel);
    EXPECT_NEAR(summary["renewable_fraction"].get<double>(), 1.0 - genset / served, 1e-9);
    EXPECT_NEAR(summary["unmet_fraction"].get<double>(), unmet / load, 1e-12);

    const auto& sys = costs.back();
    const double capital = std::stod(sys[1]);
    const double npc = std::stod(sys[6]);
    const double i = 0.06;
    const int n = run.config.finance.project_life_years;
    const double crf = i * std::pow(1 + i, n) / (std::pow(1 + i, n) - 1);
    const auto& econ = summary["economics"];
    EXPECT_NEAR(econ["npc"].get<double>(), npc, 1e-9 * npc);
    EXPECT_NEAR(econ["crf"].get<double>(), crf, 1e-7);
    EXPECT_NEAR(econ["lcoe"].get<double>(), npc * crf / served, 1e-9);
    EXPECT_NEAR(econ["operating_cost"].get<double>(), (npc - capital) * crf, 1e-6 * npc);

    double col_sum = 0;
    for (std::size_t r = 1; r + 1 < costs.size(); ++r) col_sum += std::stod(costs[r][6]);
    EXPECT_NEAR(col_sum, npc, 1e-6 * npc);

    EXPECT_TRUE(summary["checks"]["soc_within_bounds"].get<bool>());
    EXPECT_EQ(summary["header"]["scenario"], "scenario1");
}

TEST(SimulationReports, CostSharesSumToOne) {
    auto run = run_scenario_one("reports_shares");
    auto rows = parse_csv(read_file(run.dir + "/cost_shares.csv"));
    double total = 0;
    bool negative_salvage = false;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        total += std::stod(rows[r][3]);
        if (rows[r][1] == "salvage" && std::stod(rows[r][2]) < 0) negative_salvage = true;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
    EXPECT_TRUE(negative_salvage);
}

TEST(SimulationReports, RerunIsByteIdentical) {
    auto a = run_scenario_one("reports_rerun_a");
    auto b = run_scenario_one("reports_rerun_b");
    for (const char* f : {"summary.json", "hourly.csv", "costs.csv", "monthly.csv", "cost_shares.csv",
                          "emissions.json"}) {
        EXPECT_EQ(read_file(a.dir + "/" + f), read_file(b.dir + "/" + f)) << f;
    }
}

TEST(RankedCsv, EmptyResultIsHeaderOnly) {
    RankedResult r;
    std::ostringstream os;
    write_ranked_csv(os, r);
    EXPECT_EQ(os.str(),
              "rank,n_pv,n_wt,n_batt,genset_kw,converter_kw,npc,lcoe,operating_cost,total_capital,renewable_fraction,"
              "unmet_fraction,fuel_l\n");
}

TEST(RankedJson, CarriesConstraintsAndRanks) {
    RankedResult r;
    Evaluation e;
    e.fleet = {1, 2, 3, 4.0, 5.0};
    e.feasible = true;
    e.economics.npc = 10.0;
    r.ranked.push_back(e);
    r.evaluated = 1;
    auto j = json::parse(ranked_json({"optimize", "x", 1, "lf"}, r, Constraints{0.01, 0.5}));
    EXPECT_EQ(j["ranked"].size(), 1u);
    EXPECT_EQ(j["ranked"][0]["fleet"]["n_wt"], 2);
    EXPECT_EQ(j["constraints"]["min_renewable_fraction"], 0.5);
}

TEST(Reports, UnwritableDirectoryNamesPath) {
    const auto dir = testing_support::temp_dir("reports_blocked");
    const auto blocker = dir + "/file";
    testing_support::write_text(blocker, "x");
    try {
        write_optimization_reports(blocker + "/sub", {"optimize", "x", 1, "lf"}, ScenarioConfig{}, RankedResult{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find(blocker), std::string::npos) << e.what();
    }
}

TEST(DispatchCsv, ShortestRoundTripNumbers) {
    const auto& d = testing_support::khobar_data();
    auto cfg = testing_support::system_with({300, 20, 300, 200.0, 150.0});
    auto result = simulate_year(cfg, d.resources, d.load);
    std::ostringstream os;
    write_dispatch_csv(os, result);
    auto rows = parse_csv(os.str());
    for (std::size_t h = 0; h < 50; ++h) {
        EXPECT_EQ(std::stod(rows[h + 1][1]), result.hours[h].pv_kw);
        EXPECT_EQ(std::stod(rows[h + 1][6]), result.hours[h].soc_kwh);
    }
}
