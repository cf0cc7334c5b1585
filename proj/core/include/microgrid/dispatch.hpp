#pragma once

#include <compare>
#include <optional>
#include <string_view>
#include <vector>

#include "microgrid/components.hpp"
#include "microgrid/time_series.hpp"

namespace microgrid {

enum class Strategy { load_following, cycle_charging };

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);

/// Installed sizes. Ordering is the ranking tie-break order.
struct Fleet {
    int n_pv = 0;
    int n_wt = 0;
    int n_batt = 0;
    double genset_kw = 0.0;
    double converter_kw = 0.0;

    void validate() const;
    friend auto operator<=>(const Fleet&, const Fleet&) = default;
};

/// Everything the dispatcher needs about the plant. Prices live elsewhere so
/// the energy simulation never depends on them.
///
/// Bus layout: PV and battery on the DC bus, wind, genset and load on the AC
/// bus, with the converter carrying every DC<->AC transfer.
struct SystemConfig {
    Fleet fleet;
    PvSpec pv;
    WindSpec wind;
    BatterySpec battery;
    GensetSpec genset;        // rated_kw is taken from fleet.genset_kw
    ConverterSpec converter;  // rated_kw is taken from fleet.converter_kw
    Strategy strategy = Strategy::load_following;

    void validate() const;
    GensetSpec genset_spec() const;
    ConverterSpec converter_spec() const;
    BatteryBank battery_bank() const { return {battery, fleet.n_batt}; }
    friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

struct ResourceSeries {
    TimeSeries ghi;   // kW/m²
    TimeSeries wind;  // m/s at anemometer height
    TimeSeries temp;  // °C
};

/// Per-hour plant inputs after the resource models have run.
struct HourInputs {
    double load_kw = 0.0;
    double pv_kw = 0.0;    // DC
    double wind_kw = 0.0;  // AC
};

/// One simulated hour. Battery charge/discharge are measured at the battery
/// terminals; `soc_kwh` is the stored energy at the end of the hour.
struct HourRecord {
    double pv_kw = 0.0;
    double wind_kw = 0.0;
    double genset_kw = 0.0;
    double batt_charge_kw = 0.0;
    double batt_discharge_kw = 0.0;
    double soc_kwh = 0.0;
    double load_kw = 0.0;
    double unmet_kw = 0.0;
    double excess_kw = 0.0;
    double converter_loss_kw = 0.0;
    double fuel_l = 0.0;

    double served_kw() const { return load_kw - unmet_kw; }
    /// Sources minus sinks; zero for a consistent record.
    double balance_residual() const;
};

struct DispatchTotals {
    double pv_kwh = 0.0;
    double wind_kwh = 0.0;
    double genset_kwh = 0.0;
    double batt_charge_kwh = 0.0;
    double batt_discharge_kwh = 0.0;
    double load_kwh = 0.0;
    double served_kwh = 0.0;
    double unmet_kwh = 0.0;
    double excess_kwh = 0.0;
    double converter_loss_kwh = 0.0;
    double fuel_l = 0.0;
    double genset_hours = 0.0;
    int genset_starts = 0;
    /// 1 - genset production / served energy, clamped to [0, 1]; 0 when nothing is served.
    double renewable_fraction = 0.0;
};

struct DispatchResult {
    std::vector<HourRecord> hours;
    DispatchTotals totals;
};

/// Sums a record set into totals.
DispatchTotals aggregate(const std::vector<HourRecord>& hours);

/// One hour under load following: the genset only covers what renewables and
/// storage cannot, and never charges the battery by choice.
HourRecord step_load_following(const SystemConfig& config, const BatteryState& state, const HourInputs& in);

/// One hour under cycle charging: same renewable priority, but once the genset
/// has to run it runs as hard as load plus battery can absorb, up to rating.
HourRecord step_cycle_charging(const SystemConfig& config, const BatteryState& state, const HourInputs& in);

/// Plant production for an hour before dispatch.
HourInputs hour_inputs(const SystemConfig& config, const ResourceSeries& resources, const TimeSeries& load,
                       std::size_t hour);

/// Simulates a full year. `initial_soc` defaults to the battery's soc_max.
DispatchResult simulate_year(const SystemConfig& config, const ResourceSeries& resources, const TimeSeries& load,
                             std::optional<double> initial_soc = std::nullopt);

struct BalanceCheck {
    double max_residual_kw = 0.0;
    std::size_t worst_hour = 0;
};

BalanceCheck verify_energy_balance(const DispatchResult& result);

}  // namespace microgrid
