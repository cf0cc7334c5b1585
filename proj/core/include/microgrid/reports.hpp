#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "microgrid/dispatch.hpp"
#include "microgrid/economics.hpp"
#include "microgrid/emissions.hpp"
#include "microgrid/optimizer.hpp"
#include "microgrid/scenario_config.hpp"

namespace microgrid {

/// Identifies a run in every output file.
struct ReportHeader {
    std::string command;
    std::string scenario;
    std::uint64_t seed = kDefaultSeed;
    std::string strategy;
};

/// One line for stdout: `microgrid <command> scenario=<name> seed=<seed> strategy=<s>`.
std::string header_line(const ReportHeader& h);

// Individual writers. All numbers use shortest round-trip formatting.

/// hour,pv_kw,wind_kw,genset_kw,batt_charge_kw,batt_discharge_kw,soc_kwh,load_kw,unmet_kw,excess_kw,converter_loss_kw,fuel_l
void write_dispatch_csv(std::ostream& out, const DispatchResult& result);

/// component,capital,replacement,om,fuel,salvage,total with a trailing System row.
void write_costs_csv(std::ostream& out, const EconomicSummary& summary);

/// month,source,kwh for sources pv, wind and genset.
void write_monthly_csv(std::ostream& out, const DispatchResult& result);

/// component,category,npc,share where share is relative to the system NPC.
void write_cost_shares_csv(std::ostream& out, const EconomicSummary& summary);

/// Ranked feasible candidates; header only when there are none.
void write_ranked_csv(std::ostream& out, const RankedResult& result);
void write_rejected_csv(std::ostream& out, const RankedResult& result);

std::string emissions_json(const ReportHeader& h, const EmissionsReport& report, const EmissionFactors& factors,
                           double fuel_l, double grid_kwh);
std::string simulation_summary_json(const ReportHeader& h, const SystemConfig& config, const DispatchResult& result,
                                    const EconomicSummary& economics, const EmissionsReport& emissions,
                                    const FinanceSpec& finance);
std::string baseline_summary_json(const ReportHeader& h, const TimeSeries& load, double tariff,
                                  const EconomicSummary& economics, const EmissionsReport& emissions,
                                  const FinanceSpec& finance);
std::string ranked_json(const ReportHeader& h, const RankedResult& result, const Constraints& constraints);

// Whole-command writers. Each creates `dir` if needed and raises Error naming
// the path on any I/O failure.

void write_simulation_reports(const std::string& dir, const ReportHeader& h, const ScenarioConfig& config,
                              const DispatchResult& result, const EconomicSummary& economics,
                              const EmissionsReport& emissions);
void write_baseline_reports(const std::string& dir, const ReportHeader& h, const ScenarioConfig& config,
                            const TimeSeries& load, const EconomicSummary& economics,
                            const EmissionsReport& emissions);
void write_optimization_reports(const std::string& dir, const ReportHeader& h, const ScenarioConfig& config,
                                const RankedResult& result);
void write_synthesis_reports(const std::string& dir, const ReportHeader& h, const ScenarioData& data);

}  // namespace microgrid
