#include "microgrid/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "microgrid/errors.hpp"
#include "text_util.hpp"

namespace microgrid {

namespace {

// Deficits below this are numerical noise from dividing by and multiplying
// back the converter efficiency.
constexpr double kNegligibleKw = 1e-9;
constexpr double kStepHours = 1.0;

/// How an hour's power is routed for a fixed genset output.
struct Routing {
    double genset_kw = 0.0;
    double inverter_pv_in = 0.0;    // DC drawn from PV into the inverter
    double inverter_batt_in = 0.0;  // DC drawn from the battery into the inverter
    double rectifier_in = 0.0;      // AC drawn into the rectifier
    double pv_to_batt = 0.0;
    double unmet_kw = 0.0;
    double excess_dc_kw = 0.0;
    double excess_ac_kw = 0.0;
    double charge_capacity_kw = 0.0;  // battery acceptance available this hour
};

/// Serves the AC load from wind + genset, then PV through the inverter, then
/// the battery through the inverter. Leftover PV charges the battery directly;
/// AC surplus is rectified into the battery only when the inverter is idle.
Routing route(const SystemConfig& cfg, const BatteryState& state, const HourInputs& in, double genset_kw) {
    const auto bank = cfg.battery_bank();
    const double eta = cfg.converter.efficiency;
    const double conv = cfg.fleet.converter_kw;

    Routing r;
    r.genset_kw = genset_kw;
    double ac_need = in.load_kw - in.wind_kw - genset_kw;
    const double ac_surplus = std::max(0.0, -ac_need);
    ac_need = std::max(0.0, ac_need);

    r.inverter_pv_in = std::min({in.pv_kw, conv, ac_need / eta});
    ac_need = std::max(0.0, ac_need - r.inverter_pv_in * eta);

    if (ac_need > kNegligibleKw) {
        r.inverter_batt_in = std::min({bank.max_discharge_kw(state, kStepHours), conv - r.inverter_pv_in, ac_need / eta});
        r.inverter_batt_in = std::max(0.0, r.inverter_batt_in);
        ac_need = std::max(0.0, ac_need - r.inverter_batt_in * eta);
    }
    r.unmet_kw = ac_need > kNegligibleKw ? ac_need : 0.0;

    const double pv_left = in.pv_kw - r.inverter_pv_in;
    if (r.inverter_batt_in == 0.0) {
        r.charge_capacity_kw = bank.max_charge_kw(state, kStepHours);
        r.pv_to_batt = std::min(pv_left, r.charge_capacity_kw);
        if (r.inverter_pv_in == 0.0 && ac_surplus > 0.0) {
            const double room = std::max(0.0, r.charge_capacity_kw - r.pv_to_batt);
            r.rectifier_in = std::min({ac_surplus, conv, room / eta});
        }
    }
    r.excess_dc_kw = pv_left - r.pv_to_batt;
    r.excess_ac_kw = ac_surplus - r.rectifier_in;
    return r;
}

/// Extra genset output the plant can soak up beyond routing `r`: first by
/// displacing battery discharge, then by displacing PV inversion where the
/// freed PV can charge the battery, then through the rectifier.
double absorbable_extra(const SystemConfig& cfg, const BatteryState& state, const Routing& r) {
    const double eta = cfg.converter.efficiency;
    const double conv = cfg.fleet.converter_kw;
    double extra = r.inverter_batt_in * eta;

    double room = cfg.battery_bank().max_charge_kw(state, kStepHours) - r.pv_to_batt - r.rectifier_in * eta;
    room = std::max(0.0, room);
    const double freed_pv = std::min(r.inverter_pv_in, room);
    extra += freed_pv * eta;
    room -= freed_pv;
    if (freed_pv == r.inverter_pv_in) {
        extra += std::min(conv - r.rectifier_in, room / eta);
    }
    return std::max(0.0, extra);
}

HourRecord finalize(const SystemConfig& cfg, const BatteryState& state, const HourInputs& in, const Routing& r,
                    const GensetOutput& gen) {
    const double eta = cfg.converter.efficiency;
    HourRecord rec;
    rec.pv_kw = in.pv_kw;
    rec.wind_kw = in.wind_kw;
    rec.load_kw = in.load_kw;
    rec.genset_kw = gen.delivered_kw;
    rec.fuel_l = gen.fuel_l_per_h * kStepHours;
    rec.unmet_kw = r.unmet_kw;

    double excess = r.excess_dc_kw + r.excess_ac_kw;
    const double planned_charge = r.pv_to_batt + r.rectifier_in * eta;
    const double net = planned_charge > 0.0 ? planned_charge : -r.inverter_batt_in;
    const auto step = battery_step(cfg.battery, cfg.fleet.n_batt, state, net, kStepHours);
    rec.batt_charge_kw = step.accepted_kw;
    rec.batt_discharge_kw = step.delivered_kw;
    rec.soc_kwh = step.state.stored_kwh;
    // Rounding can make the bank take a hair less than planned; that power is spilled.
    if (planned_charge > 0.0) excess += planned_charge - step.accepted_kw;
    // The inverter can only pass what the battery actually delivered.
    if (r.inverter_batt_in > step.delivered_kw) rec.unmet_kw += (r.inverter_batt_in - step.delivered_kw) * eta;

    rec.excess_kw = excess;
    rec.converter_loss_kw = (r.inverter_pv_in + step.delivered_kw + r.rectifier_in) * (1.0 - eta);
    return rec;
}

HourRecord dispatch_hour(const SystemConfig& cfg, const BatteryState& state, const HourInputs& in, Strategy strategy) {
    const auto genset = cfg.genset_spec();
    const Routing base = route(cfg, state, in, 0.0);
    if (base.unmet_kw <= kNegligibleKw || genset.rated_kw <= 0.0) {
        return finalize(cfg, state, in, base, GensetOutput{});
    }

    // Load following: cover exactly the shortfall, subject to the min-load floor.
    GensetOutput gen = genset_step(genset, base.unmet_kw);
    Routing r = route(cfg, state, in, gen.delivered_kw);

    if (strategy == Strategy::cycle_charging) {
        const double target = std::min(genset.rated_kw, gen.delivered_kw + absorbable_extra(cfg, state, r));
        if (target > gen.delivered_kw) {
            gen = genset_step(genset, target);
            r = route(cfg, state, in, gen.delivered_kw);
        }
    }
    return finalize(cfg, state, in, r, gen);
}

}  // namespace

std::string_view to_string(Strategy s) { return s == Strategy::load_following ? "lf" : "cc"; }

Strategy strategy_from_string(std::string_view name) {
    if (name == "lf" || name == "load_following") return Strategy::load_following;
    if (name == "cc" || name == "cycle_charging") return Strategy::cycle_charging;
    throw ValidationError("unknown dispatch strategy '" + std::string(name) + "' (expected lf or cc)");
}

void Fleet::validate() const {
    if (n_pv < 0 || n_wt < 0 || n_batt < 0) throw ValidationError("component counts must be nonnegative");
    if (!(genset_kw >= 0.0) || !(converter_kw >= 0.0)) throw ValidationError("ratings must be nonnegative");
}

void SystemConfig::validate() const {
    fleet.validate();
    pv.validate();
    wind.validate();
    battery.validate();
    genset_spec().validate();
    converter_spec().validate();
}

GensetSpec SystemConfig::genset_spec() const {
    GensetSpec g = genset;
    g.rated_kw = fleet.genset_kw;
    return g;
}

ConverterSpec SystemConfig::converter_spec() const {
    ConverterSpec c = converter;
    c.rated_kw = fleet.converter_kw;
    return c;
}

double HourRecord::balance_residual() const {
    const double sources = pv_kw + wind_kw + genset_kw + batt_discharge_kw;
    const double sinks = served_kw() + batt_charge_kw + excess_kw + converter_loss_kw;
    return sources - sinks;
}

HourRecord step_load_following(const SystemConfig& config, const BatteryState& state, const HourInputs& in) {
    return dispatch_hour(config, state, in, Strategy::load_following);
}

HourRecord step_cycle_charging(const SystemConfig& config, const BatteryState& state, const HourInputs& in) {
    return dispatch_hour(config, state, in, Strategy::cycle_charging);
}

HourInputs hour_inputs(const SystemConfig& config, const ResourceSeries& resources, const TimeSeries& load,
                       std::size_t hour) {
    const auto& w = config.wind;
    const double hub = hub_wind_speed(resources.wind[hour], w.anemometer_height_m, w.hub_height_m, w.shear_exponent);
    return HourInputs{load[hour],
                      pv_power(config.pv, config.fleet.n_pv, resources.ghi[hour], resources.temp[hour]),
                      turbine_power(w, config.fleet.n_wt, hub, w.air_density_kg_m3)};
}

DispatchTotals aggregate(const std::vector<HourRecord>& hours) {
    DispatchTotals t;
    bool was_running = false;
    for (const auto& h : hours) {
        t.pv_kwh += h.pv_kw * kStepHours;
        t.wind_kwh += h.wind_kw * kStepHours;
        t.genset_kwh += h.genset_kw * kStepHours;
        t.batt_charge_kwh += h.batt_charge_kw * kStepHours;
        t.batt_discharge_kwh += h.batt_discharge_kw * kStepHours;
        t.load_kwh += h.load_kw * kStepHours;
        t.served_kwh += h.served_kw() * kStepHours;
        t.unmet_kwh += h.unmet_kw * kStepHours;
        t.excess_kwh += h.excess_kw * kStepHours;
        t.converter_loss_kwh += h.converter_loss_kw * kStepHours;
        t.fuel_l += h.fuel_l;
        const bool running = h.genset_kw > 0.0;
        if (running) {
            t.genset_hours += kStepHours;
            if (!was_running) ++t.genset_starts;
        }
        was_running = running;
    }
    if (t.served_kwh > 0.0) {
        t.renewable_fraction = std::clamp(1.0 - t.genset_kwh / t.served_kwh, 0.0, 1.0);
    }
    return t;
}

DispatchResult simulate_year(const SystemConfig& config, const ResourceSeries& resources, const TimeSeries& load,
                             std::optional<double> initial_soc) {
    config.validate();
    if (resources.ghi.quantity() != Quantity::ghi_kw_m2 || resources.wind.quantity() != Quantity::wind_ms ||
        resources.temp.quantity() != Quantity::temp_c || load.quantity() != Quantity::load_kw) {
        throw ValidationError("resource series have the wrong quantities");
    }
    const double soc = initial_soc.value_or(config.battery.soc_max);
    if (!(soc >= config.battery.soc_min && soc <= config.battery.soc_max)) {
        throw ValidationError("initial SOC " + detail::format_double(soc) + " outside [" +
                              detail::format_double(config.battery.soc_min) + ", " +
                              detail::format_double(config.battery.soc_max) + "]");
    }

    DispatchResult result;
    result.hours.reserve(kHoursPerYear);
    BatteryState state{soc * config.battery_bank().capacity_kwh()};
    for (std::size_t h = 0; h < kHoursPerYear; ++h) {
        const auto rec = dispatch_hour(config, state, hour_inputs(config, resources, load, h), config.strategy);
        state.stored_kwh = rec.soc_kwh;
        result.hours.push_back(rec);
    }
    result.totals = aggregate(result.hours);
    return result;
}

BalanceCheck verify_energy_balance(const DispatchResult& result) {
    BalanceCheck check;
    for (std::size_t h = 0; h < result.hours.size(); ++h) {
        const double r = std::abs(result.hours[h].balance_residual());
        if (r > check.max_residual_kw) {
            check.max_residual_kw = r;
            check.worst_hour = h;
        }
    }
    return check;
}

}  // namespace microgrid
