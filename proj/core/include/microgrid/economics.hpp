#pragma once

#include <optional>
#include <string>
#include <vector>

#include "microgrid/dispatch.hpp"
#include "microgrid/time_series.hpp"

namespace microgrid {

struct FinanceSpec {
    double nominal_rate = 0.0812;
    double inflation = 0.02;
    int project_life_years = 25;

    void validate() const;
    double real_rate() const;
    friend bool operator==(const FinanceSpec&, const FinanceSpec&) = default;
};

double real_rate(double nominal, double inflation);

/// Capital recovery factor: uniform annual amount per unit present value.
double crf(double rate, int years);

/// Present value of 1 $/yr for `years` years (1 / crf).
double annuity_present_value(double rate, int years);

double discount_factor(double rate, double years);

/// Residual value of the installed unit at project end, proportional to its remaining life.
double salvage_value(double replacement_cost, double component_life, double used_life);

/// Cash flows of one component over the project. `lifetime_years` may be
/// infinite (never wears out, e.g. an idle genset).
struct CostEvents {
    double capital = 0.0;           // $ at year 0
    double replacement_cost = 0.0;  // $ per replacement
    double lifetime_years = 0.0;
    double om_per_year = 0.0;
    double fuel_per_year = 0.0;
};

/// Present values of one cost-table row. `total` nets out salvage.
struct CostRow {
    std::string component;
    double capital = 0.0;
    double replacement = 0.0;
    double om = 0.0;
    double fuel = 0.0;
    double salvage = 0.0;
    double total = 0.0;
};

/// Replacement years strictly inside the project.
std::vector<double> replacement_years(double lifetime_years, int project_life_years);

CostRow component_npc(const std::string& name, const CostEvents& events, const FinanceSpec& fin);

struct PvPrices {
    double capital_per_kw = 222.7;
    double replacement_per_kw = 222.7;
    double om_per_kw_year = 4.45;
    double lifetime_years = 25.0;
    friend bool operator==(const PvPrices&, const PvPrices&) = default;
};

struct WindPrices {
    double capital_per_unit = 1086.0;
    double replacement_per_unit = 1086.0;
    double om_per_unit_year = 44.0;
    double lifetime_years = 20.0;
    friend bool operator==(const WindPrices&, const WindPrices&) = default;
};

struct BatteryPrices {
    double capital_per_unit = 200.0;
    double replacement_per_unit = 200.0;
    double om_per_unit_year = 2.0;
    double lifetime_years = 5.0;
    friend bool operator==(const BatteryPrices&, const BatteryPrices&) = default;
};

struct GensetPrices {
    double capital_per_kw = 500.0;
    double replacement_per_kw = 500.0;
    double om_per_op_hour = 0.03;
    /// When true the hourly O&M rate applies per rated kW, otherwise per machine.
    bool om_per_rated_kw = true;
    double fuel_per_l = 0.168;
    friend bool operator==(const GensetPrices&, const GensetPrices&) = default;
};

struct ConverterPrices {
    double capital_per_kw = 280.0;
    double replacement_per_kw = 280.0;
    double om_per_kw_year = 10.0;
    double lifetime_years = 25.0;
    friend bool operator==(const ConverterPrices&, const ConverterPrices&) = default;
};

struct PriceSet {
    PvPrices pv;
    WindPrices wind;
    BatteryPrices battery;
    GensetPrices genset;
    ConverterPrices converter;

    /// Unit prices as listed in the component table.
    static PriceSet component_table();
    /// Battery priced at 100 $/unit and 1 $/unit/yr, the values the published
    /// cost breakdowns were computed with.
    static PriceSet cost_breakdown();

    void validate() const;
    /// Every price multiplied by `factor` (lifetimes unchanged).
    PriceSet scaled(double factor) const;
    friend bool operator==(const PriceSet&, const PriceSet&) = default;
};

struct EconomicSummary {
    std::vector<CostRow> components;
    CostRow system;
    double npc = 0.0;
    std::optional<double> lcoe;  // absent when nothing is served
    double operating_cost = 0.0;
    double total_capital = 0.0;
    double served_kwh = 0.0;
    double crf = 0.0;
    double renewable_fraction = 0.0;
};

/// Cash-flow events per installed component, in table order DG, BT, WT, PV, Converter.
/// Components with zero size are omitted.
std::vector<std::pair<std::string, CostEvents>> component_events(const SystemConfig& config,
                                                                 const DispatchTotals& totals, const PriceSet& prices);

/// Builds the system row and headline metrics from component rows.
EconomicSummary summarize(std::vector<CostRow> rows, double served_kwh, const FinanceSpec& fin,
                          double renewable_fraction = 0.0);

/// Full lifecycle costing of a simulated system. Throws if no energy was served.
EconomicSummary system_summary(const SystemConfig& config, const DispatchResult& dispatch, const PriceSet& prices,
                               const FinanceSpec& fin);

/// Same as system_summary but tolerates zero served energy (lcoe left empty).
EconomicSummary system_costs(const SystemConfig& config, const DispatchTotals& totals, const PriceSet& prices,
                             const FinanceSpec& fin);

/// Status quo of buying every kWh from the grid at a flat tariff.
EconomicSummary baseline_grid(const TimeSeries& load, double tariff, const FinanceSpec& fin);

}  // namespace microgrid
