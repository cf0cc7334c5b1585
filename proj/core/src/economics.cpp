#include "microgrid/economics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "microgrid/errors.hpp"
#include "text_util.hpp"

namespace microgrid {

void FinanceSpec::validate() const {
    if (!(inflation > -1.0)) throw ValidationError("finance.inflation must exceed -1");
    if (project_life_years < 1) throw ValidationError("finance.project_life_years must be at least 1");
    if (real_rate() < 0.0) throw ValidationError("real discount rate must be nonnegative");
}

double FinanceSpec::real_rate() const { return microgrid::real_rate(nominal_rate, inflation); }

double real_rate(double nominal, double inflation) {
    if (!(inflation > -1.0)) throw ValidationError("inflation must exceed -1");
    return (1.0 + nominal) / (1.0 + inflation) - 1.0;
}

double crf(double rate, int years) {
    if (years < 1) throw ValidationError("capital recovery needs at least one year");
    if (rate < 0.0) throw ValidationError("discount rate must be nonnegative");
    if (rate == 0.0) return 1.0 / years;
    const double growth = std::pow(1.0 + rate, years);
    return rate * growth / (growth - 1.0);
}

double annuity_present_value(double rate, int years) { return 1.0 / crf(rate, years); }

double discount_factor(double rate, double years) { return std::pow(1.0 + rate, -years); }

double salvage_value(double replacement_cost, double component_life, double used_life) {
    if (!(component_life > 0.0)) throw ValidationError("component life must be positive");
    if (std::isinf(component_life)) return replacement_cost;
    const double remaining = std::clamp(component_life - used_life, 0.0, component_life);
    return replacement_cost * remaining / component_life;
}

std::vector<double> replacement_years(double lifetime_years, int project_life_years) {
    std::vector<double> out;
    if (!(lifetime_years > 0.0) || std::isinf(lifetime_years)) return out;
    for (int k = 1;; ++k) {
        const double t = k * lifetime_years;
        if (t >= project_life_years - 1e-9) break;
        out.push_back(t);
    }
    return out;
}

CostRow component_npc(const std::string& name, const CostEvents& ev, const FinanceSpec& fin) {
    const double i = fin.real_rate();
    const int n = fin.project_life_years;
    const double annuity = annuity_present_value(i, n);

    CostRow row;
    row.component = name;
    row.capital = ev.capital;
    const auto years = replacement_years(ev.lifetime_years, n);
    for (double t : years) row.replacement += ev.replacement_cost * discount_factor(i, t);
    row.om = ev.om_per_year * annuity;
    row.fuel = ev.fuel_per_year * annuity;
    if (ev.lifetime_years > 0.0) {
        const double last_install = years.empty() ? 0.0 : years.back();
        row.salvage = salvage_value(ev.replacement_cost, ev.lifetime_years, n - last_install) * discount_factor(i, n);
    }
    row.total = row.capital + row.replacement + row.om + row.fuel - row.salvage;
    return row;
}

PriceSet PriceSet::component_table() { return PriceSet{}; }

PriceSet PriceSet::cost_breakdown() {
    PriceSet p;
    p.battery.capital_per_unit = 100.0;
    p.battery.replacement_per_unit = 100.0;
    p.battery.om_per_unit_year = 1.0;
    return p;
}

void PriceSet::validate() const {
    const double prices[] = {pv.capital_per_kw,          pv.replacement_per_kw,        pv.om_per_kw_year,
                             wind.capital_per_unit,      wind.replacement_per_unit,    wind.om_per_unit_year,
                             battery.capital_per_unit,   battery.replacement_per_unit, battery.om_per_unit_year,
                             genset.capital_per_kw,      genset.replacement_per_kw,    genset.om_per_op_hour,
                             genset.fuel_per_l,          converter.capital_per_kw,     converter.replacement_per_kw,
                             converter.om_per_kw_year};
    for (double p : prices) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("prices must be finite and nonnegative");
    }
    for (double life : {pv.lifetime_years, wind.lifetime_years, battery.lifetime_years, converter.lifetime_years}) {
        if (!(life > 0.0)) throw ValidationError("component lifetimes must be positive");
    }
}

PriceSet PriceSet::scaled(double f) const {
    PriceSet p = *this;
    p.pv.capital_per_kw *= f;
    p.pv.replacement_per_kw *= f;
    p.pv.om_per_kw_year *= f;
    p.wind.capital_per_unit *= f;
    p.wind.replacement_per_unit *= f;
    p.wind.om_per_unit_year *= f;
    p.battery.capital_per_unit *= f;
    p.battery.replacement_per_unit *= f;
    p.battery.om_per_unit_year *= f;
    p.genset.capital_per_kw *= f;
    p.genset.replacement_per_kw *= f;
    p.genset.om_per_op_hour *= f;
    p.genset.fuel_per_l *= f;
    p.converter.capital_per_kw *= f;
    p.converter.replacement_per_kw *= f;
    p.converter.om_per_kw_year *= f;
    return p;
}

std::vector<std::pair<std::string, CostEvents>> component_events(const SystemConfig& config,
                                                                 const DispatchTotals& totals, const PriceSet& prices) {
    std::vector<std::pair<std::string, CostEvents>> out;
    const auto& f = config.fleet;

    if (f.genset_kw > 0.0) {
        const auto& g = prices.genset;
        const double runtime = totals.genset_hours;
        const double life = runtime > 0.0 ? config.genset.lifetime_hours / runtime
                                           : std::numeric_limits<double>::infinity();
        const double om_rate = g.om_per_op_hour * (g.om_per_rated_kw ? f.genset_kw : 1.0);
        out.emplace_back("DG", CostEvents{g.capital_per_kw * f.genset_kw, g.replacement_per_kw * f.genset_kw, life,
                                          om_rate * runtime, totals.fuel_l * g.fuel_per_l});
    }
    if (f.n_batt > 0) {
        const auto& b = prices.battery;
        out.emplace_back("BT", CostEvents{b.capital_per_unit * f.n_batt, b.replacement_per_unit * f.n_batt,
                                          b.lifetime_years, b.om_per_unit_year * f.n_batt, 0.0});
    }
    if (f.n_wt > 0) {
        const auto& w = prices.wind;
        out.emplace_back("WT", CostEvents{w.capital_per_unit * f.n_wt, w.replacement_per_unit * f.n_wt,
                                          w.lifetime_years, w.om_per_unit_year * f.n_wt, 0.0});
    }
    if (f.n_pv > 0) {
        const auto& p = prices.pv;
        const double kw = f.n_pv * config.pv.unit_rating_kw;
        out.emplace_back("PV", CostEvents{p.capital_per_kw * kw, p.replacement_per_kw * kw, p.lifetime_years,
                                          p.om_per_kw_year * kw, 0.0});
    }
    if (f.converter_kw > 0.0) {
        const auto& c = prices.converter;
        out.emplace_back("Converter", CostEvents{c.capital_per_kw * f.converter_kw, c.replacement_per_kw * f.converter_kw,
                                                 c.lifetime_years, c.om_per_kw_year * f.converter_kw, 0.0});
    }
    return out;
}

EconomicSummary summarize(std::vector<CostRow> rows, double served_kwh, const FinanceSpec& fin,
                          double renewable_fraction) {
    EconomicSummary s;
    s.components = std::move(rows);
    s.system.component = "System";
    for (const auto& r : s.components) {
        s.system.capital += r.capital;
        s.system.replacement += r.replacement;
        s.system.om += r.om;
        s.system.fuel += r.fuel;
        s.system.salvage += r.salvage;
        s.system.total += r.total;
    }
    s.npc = s.system.total;
    s.total_capital = s.system.capital;
    s.served_kwh = served_kwh;
    s.crf = crf(fin.real_rate(), fin.project_life_years);
    if (served_kwh > 0.0) s.lcoe = s.npc * s.crf / served_kwh;
    s.operating_cost = (s.npc - s.total_capital) * s.crf;
    s.renewable_fraction = renewable_fraction;
    return s;
}

EconomicSummary system_costs(const SystemConfig& config, const DispatchTotals& totals, const PriceSet& prices,
                             const FinanceSpec& fin) {
    fin.validate();
    prices.validate();
    std::vector<CostRow> rows;
    for (const auto& [name, events] : component_events(config, totals, prices)) {
        rows.push_back(component_npc(name, events, fin));
    }
    return summarize(std::move(rows), totals.served_kwh, fin, totals.renewable_fraction);
}

EconomicSummary system_summary(const SystemConfig& config, const DispatchResult& dispatch, const PriceSet& prices,
                               const FinanceSpec& fin) {
    if (!(dispatch.totals.served_kwh > 0.0)) throw ValidationError("system served no energy; LCOE is undefined");
    return system_costs(config, dispatch.totals, prices, fin);
}

EconomicSummary baseline_grid(const TimeSeries& load, double tariff, const FinanceSpec& fin) {
    if (!(tariff >= 0.0)) throw ValidationError("tariff must be nonnegative");
    fin.validate();
    const double annual_kwh = load.sum();
    const double annual_cost = annual_kwh * tariff;

    CostRow grid;
    grid.component = "Grid";
    grid.om = annual_cost * annuity_present_value(fin.real_rate(), fin.project_life_years);
    grid.total = grid.om;

    auto s = summarize({grid}, annual_kwh, fin, 0.0);
    s.operating_cost = annual_cost;
    if (annual_kwh > 0.0) s.lcoe = tariff;
    return s;
}

}  // namespace microgrid
