#include "microgrid/reports.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "microgrid/errors.hpp"
#include "text_util.hpp"

namespace microgrid {

namespace {

using json = nlohmann::ordered_json;
using detail::format_double;

json header_json(const ReportHeader& h) {
    return {{"command", h.command}, {"scenario", h.scenario}, {"seed", h.seed}, {"strategy", h.strategy}};
}

json fleet_json(const Fleet& f) {
    return {{"n_pv", f.n_pv},
            {"n_wt", f.n_wt},
            {"n_batt", f.n_batt},
            {"genset_kw", f.genset_kw},
            {"converter_kw", f.converter_kw}};
}

json species_json(const SpeciesVector& v) {
    json j = json::object();
    for (Species s : kAllSpecies) j[std::string(to_string(s))] = v[static_cast<int>(s)];
    return j;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json economics_json(const EconomicSummary& e, const FinanceSpec& fin) {
    return {{"real_rate", fin.real_rate()},
            {"project_life_years", fin.project_life_years},
            {"crf", e.crf},
            {"total_capital", e.total_capital},
            {"npc", e.npc},
            {"operating_cost", e.operating_cost},
            {"served_kwh", e.served_kwh},
            {"lcoe", optional_number(e.lcoe)}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

template <typename F>
void write_with(const std::filesystem::path& path, F&& writer) {
    std::ostringstream os;
    writer(os);
    write_file(path, os.str());
}

std::filesystem::path prepare_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
    return std::filesystem::path(dir);
}

void candidate_columns(std::ostream& out, const Evaluation& e) {
    const auto& f = e.fleet;
    out << f.n_pv << ',' << f.n_wt << ',' << f.n_batt << ',' << format_double(f.genset_kw) << ','
        << format_double(f.converter_kw);
}

json candidate_json(const Evaluation& e) {
    return {{"fleet", fleet_json(e.fleet)},
            {"npc", e.economics.npc},
            {"lcoe", optional_number(e.economics.lcoe)},
            {"operating_cost", e.economics.operating_cost},
            {"total_capital", e.economics.total_capital},
            {"renewable_fraction", e.totals.renewable_fraction},
            {"unmet_fraction", e.unmet_fraction},
            {"fuel_l", e.totals.fuel_l}};
}

}  // namespace

std::string header_line(const ReportHeader& h) {
    std::string s = "microgrid " + h.command + " scenario=" + h.scenario + " seed=" + std::to_string(h.seed);
    if (!h.strategy.empty()) s += " strategy=" + h.strategy;
    return s;
}

void write_dispatch_csv(std::ostream& out, const DispatchResult& result) {
    out << "hour,pv_kw,wind_kw,genset_kw,batt_charge_kw,batt_discharge_kw,soc_kwh,load_kw,unmet_kw,excess_kw,"
           "converter_loss_kw,fuel_l\n";
    for (std::size_t i = 0; i < result.hours.size(); ++i) {
        const auto& h = result.hours[i];
        out << i;
        for (double v : {h.pv_kw, h.wind_kw, h.genset_kw, h.batt_charge_kw, h.batt_discharge_kw, h.soc_kwh, h.load_kw,
                         h.unmet_kw, h.excess_kw, h.converter_loss_kw, h.fuel_l}) {
            out << ',' << format_double(v);
        }
        out << '\n';
    }
}

void write_costs_csv(std::ostream& out, const EconomicSummary& summary) {
    out << "component,capital,replacement,om,fuel,salvage,total\n";
    auto row = [&](const CostRow& r) {
        out << r.component << ',' << format_double(r.capital) << ',' << format_double(r.replacement) << ','
            << format_double(r.om) << ',' << format_double(r.fuel) << ',' << format_double(r.salvage) << ','
            << format_double(r.total) << '\n';
    };
    for (const auto& r : summary.components) row(r);
    row(summary.system);
}

void write_monthly_csv(std::ostream& out, const DispatchResult& result) {
    std::array<std::array<double, 3>, 12> kwh{};
    for (std::size_t i = 0; i < result.hours.size(); ++i) {
        const auto m = static_cast<std::size_t>(month_of_hour(i));
        kwh[m][0] += result.hours[i].pv_kw;
        kwh[m][1] += result.hours[i].wind_kw;
        kwh[m][2] += result.hours[i].genset_kw;
    }
    const char* names[] = {"pv", "wind", "genset"};
    out << "month,source,kwh\n";
    for (std::size_t m = 0; m < 12; ++m) {
        for (std::size_t s = 0; s < 3; ++s) out << m + 1 << ',' << names[s] << ',' << format_double(kwh[m][s]) << '\n';
    }
}

void write_cost_shares_csv(std::ostream& out, const EconomicSummary& summary) {
    out << "component,category,npc,share\n";
    const double total = summary.system.total;
    auto share = [&](double v) { return total != 0.0 ? format_double(v / total) : std::string("0"); };
    for (const auto& r : summary.components) {
        const std::pair<const char*, double> cats[] = {{"capital", r.capital}, {"replacement", r.replacement},
                                                       {"om", r.om},           {"fuel", r.fuel},
                                                       {"salvage", -r.salvage}};
        for (const auto& [name, v] : cats) {
            out << r.component << ',' << name << ',' << format_double(v) << ',' << share(v) << '\n';
        }
    }
}

void write_ranked_csv(std::ostream& out, const RankedResult& result) {
    out << "rank,n_pv,n_wt,n_batt,genset_kw,converter_kw,npc,lcoe,operating_cost,total_capital,renewable_fraction,"
           "unmet_fraction,fuel_l\n";
    std::size_t rank = 1;
    for (const auto& e : result.ranked) {
        out << rank++ << ',';
        candidate_columns(out, e);
        out << ',' << format_double(e.economics.npc) << ','
            << (e.economics.lcoe ? format_double(*e.economics.lcoe) : std::string()) << ','
            << format_double(e.economics.operating_cost) << ',' << format_double(e.economics.total_capital) << ','
            << format_double(e.totals.renewable_fraction) << ',' << format_double(e.unmet_fraction) << ','
            << format_double(e.totals.fuel_l) << '\n';
    }
}

void write_rejected_csv(std::ostream& out, const RankedResult& result) {
    out << "n_pv,n_wt,n_batt,genset_kw,converter_kw,npc,renewable_fraction,unmet_fraction,reason\n";
    for (const auto& e : result.infeasible) {
        candidate_columns(out, e);
        out << ',' << format_double(e.economics.npc) << ',' << format_double(e.totals.renewable_fraction) << ','
            << format_double(e.unmet_fraction) << ',' << '"' << e.reason << '"' << '\n';
    }
}

std::string emissions_json(const ReportHeader& h, const EmissionsReport& report, const EmissionFactors& factors,
                           double fuel_l, double grid_kwh) {
    SpeciesVector total{};
    for (Species s : kAllSpecies) total[static_cast<int>(s)] = report.total(s);
    json j = {{"header", header_json(h)},
              {"units", "kg/yr"},
              {"fuel_l", fuel_l},
              {"grid_kwh", grid_kwh},
              {"factors", {{"genset_kg_per_l", species_json(factors.genset_kg_per_l)},
                           {"grid_kg_per_kwh", species_json(factors.grid_kg_per_kwh)}}},
              {"genset", species_json(report.genset_kg)},
              {"grid", species_json(report.grid_kg)},
              {"total", species_json(total)}};
    return j.dump(2) + "\n";
}

std::string simulation_summary_json(const ReportHeader& h, const SystemConfig& config, const DispatchResult& result,
                                    const EconomicSummary& economics, const EmissionsReport& emissions,
                                    const FinanceSpec& finance) {
    const auto& t = result.totals;
    const auto check = verify_energy_balance(result);
    const auto bank = config.battery_bank();
    bool soc_ok = true;
    for (const auto& hr : result.hours) soc_ok = soc_ok && bank.within_bounds(BatteryState{hr.soc_kwh});

    SpeciesVector total{};
    for (Species s : kAllSpecies) total[static_cast<int>(s)] = emissions.total(s);
    json j = {{"header", header_json(h)},
              {"fleet", fleet_json(config.fleet)},
              {"energy",
               {{"pv_kwh", t.pv_kwh},
                {"wind_kwh", t.wind_kwh},
                {"genset_kwh", t.genset_kwh},
                {"batt_charge_kwh", t.batt_charge_kwh},
                {"batt_discharge_kwh", t.batt_discharge_kwh},
                {"load_kwh", t.load_kwh},
                {"served_kwh", t.served_kwh},
                {"unmet_kwh", t.unmet_kwh},
                {"excess_kwh", t.excess_kwh},
                {"converter_loss_kwh", t.converter_loss_kwh},
                {"fuel_l", t.fuel_l},
                {"genset_hours", t.genset_hours},
                {"genset_starts", t.genset_starts}}},
              {"renewable_fraction", t.renewable_fraction},
              {"unmet_fraction", t.load_kwh > 0.0 ? t.unmet_kwh / t.load_kwh : 0.0},
              {"economics", economics_json(economics, finance)},
              {"emissions_kg", species_json(total)},
              {"checks", {{"max_balance_residual_kw", check.max_residual_kw}, {"soc_within_bounds", soc_ok}}}};
    return j.dump(2) + "\n";
}

std::string baseline_summary_json(const ReportHeader& h, const TimeSeries& load, double tariff,
                                  const EconomicSummary& economics, const EmissionsReport& emissions,
                                  const FinanceSpec& finance) {
    const auto stats = load_stats(load);
    SpeciesVector total{};
    for (Species s : kAllSpecies) total[static_cast<int>(s)] = emissions.total(s);
    json j = {{"header", header_json(h)},
              {"load",
               {{"annual_kwh", load.sum()},
                {"avg_daily_kwh", stats.avg_daily_kwh},
                {"peak_kw", stats.peak_kw},
                {"load_factor", stats.load_factor}}},
              {"tariff", tariff},
              {"economics", economics_json(economics, finance)},
              {"emissions_kg", species_json(total)}};
    return j.dump(2) + "\n";
}

std::string ranked_json(const ReportHeader& h, const RankedResult& result, const Constraints& constraints) {
    json ranked = json::array();
    std::size_t rank = 1;
    for (const auto& e : result.ranked) {
        auto c = candidate_json(e);
        c["rank"] = rank++;
        ranked.push_back(std::move(c));
    }
    const auto& st = result.stats;
    json j = {{"header", header_json(h)},
              {"constraints",
               {{"max_unmet_fraction", constraints.max_unmet_fraction},
                {"min_renewable_fraction", constraints.min_renewable_fraction}}},
              {"evaluated", result.evaluated},
              {"feasible", result.ranked.size()},
              {"infeasible",
               {{"count", result.infeasible.size()},
                {"unmet_violations", st.unmet_violations},
                {"renewable_violations", st.renewable_violations},
                {"best_unmet_fraction", result.infeasible.empty() ? json(nullptr) : json(st.best_unmet_fraction)},
                {"best_renewable_fraction",
                 result.infeasible.empty() ? json(nullptr) : json(st.best_renewable_fraction)}}},
              {"ranked", ranked}};
    return j.dump(2) + "\n";
}

void write_simulation_reports(const std::string& dir, const ReportHeader& h, const ScenarioConfig& config,
                              const DispatchResult& result, const EconomicSummary& economics,
                              const EmissionsReport& emissions) {
    const auto d = prepare_dir(dir);
    write_file(d / "summary.json",
               simulation_summary_json(h, config.system, result, economics, emissions, config.finance));
    write_with(d / "hourly.csv", [&](std::ostream& o) { write_dispatch_csv(o, result); });
    write_with(d / "costs.csv", [&](std::ostream& o) { write_costs_csv(o, economics); });
    write_with(d / "monthly.csv", [&](std::ostream& o) { write_monthly_csv(o, result); });
    write_with(d / "cost_shares.csv", [&](std::ostream& o) { write_cost_shares_csv(o, economics); });
    write_file(d / "emissions.json", emissions_json(h, emissions, config.emissions, result.totals.fuel_l, 0.0));
}

void write_baseline_reports(const std::string& dir, const ReportHeader& h, const ScenarioConfig& config,
                            const TimeSeries& load, const EconomicSummary& economics,
                            const EmissionsReport& emissions) {
    const auto d = prepare_dir(dir);
    write_file(d / "summary.json",
               baseline_summary_json(h, load, config.grid_tariff, economics, emissions, config.finance));
    write_with(d / "costs.csv", [&](std::ostream& o) { write_costs_csv(o, economics); });
    write_file(d / "emissions.json", emissions_json(h, emissions, config.emissions, 0.0, load.sum()));
}

void write_optimization_reports(const std::string& dir, const ReportHeader& h, const ScenarioConfig& config,
                                const RankedResult& result) {
    const auto d = prepare_dir(dir);
    write_with(d / "ranked.csv", [&](std::ostream& o) { write_ranked_csv(o, result); });
    write_with(d / "rejected.csv", [&](std::ostream& o) { write_rejected_csv(o, result); });
    write_file(d / "ranked.json", ranked_json(h, result, config.constraints));
}

void write_synthesis_reports(const std::string& dir, const ReportHeader& h, const ScenarioData& data) {
    const auto d = prepare_dir(dir);
    write_with(d / "ghi.csv", [&](std::ostream& o) { write_hourly_csv(o, data.resources.ghi); });
    write_with(d / "wind.csv", [&](std::ostream& o) { write_hourly_csv(o, data.resources.wind); });
    write_with(d / "temp.csv", [&](std::ostream& o) { write_hourly_csv(o, data.resources.temp); });
    write_with(d / "load.csv", [&](std::ostream& o) { write_hourly_csv(o, data.load); });

    auto monthly = [](const TimeSeries& ts) { return json(monthly_means(ts).values); };
    const auto stats = load_stats(data.load);
    json j = {{"header", header_json(h)},
              {"monthly_means",
               {{"ghi_kwh_m2_day", monthly(data.resources.ghi)},
                {"wind_ms", monthly(data.resources.wind)},
                {"temp_c", monthly(data.resources.temp)},
                {"load_kw", monthly(data.load)}}},
              {"annual_means",
               {{"ghi_kwh_m2_day", data.resources.ghi.mean() * 24.0},
                {"wind_ms", data.resources.wind.mean()},
                {"temp_c", data.resources.temp.mean()}}},
              {"load",
               {{"avg_daily_kwh", stats.avg_daily_kwh},
                {"peak_kw", stats.peak_kw},
                {"load_factor", stats.load_factor}}}};
    write_file(d / "summary.json", j.dump(2) + "\n");
}

}  // namespace microgrid
