#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace microgrid {

// ---------------------------------------------------------------------------
// Photovoltaics

struct PvSpec {
    double unit_rating_kw = 1.0;
    double derating = 0.8;
    double temp_coeff = -0.0034;  // fraction per °C
    double noct_c = 43.0;
    double t_stc_c = 25.0;
    double g_stc_kw_m2 = 1.0;

    void validate() const;
    friend bool operator==(const PvSpec&, const PvSpec&) = default;
};

/// Cell temperature from ambient temperature and irradiance in W/m².
double pv_cell_temperature(double ambient_c, double noct_c, double irradiance_w_m2);

/// Array output in kW for `n_units` modules; never negative.
double pv_power(const PvSpec& spec, int n_units, double irradiance_kw_m2, double ambient_c);

// ---------------------------------------------------------------------------
// Wind

struct PowerCurvePoint {
    double speed_ms;
    double fraction;
    friend bool operator==(const PowerCurvePoint&, const PowerCurvePoint&) = default;
};

/// Turbine output as a fraction of rating versus hub wind speed.
///
/// Points are interpolated linearly. The first zero-fraction point after the
/// rated point is the cut-out speed: output is zero at and above it, and the
/// last value before it is held up to it.
class PowerCurve {
public:
    explicit PowerCurve(std::vector<PowerCurvePoint> points);

    /// Cubic rise between cut-in and rated, flat to cut-out, sampled every `step` m/s.
    static PowerCurve cubic(double cut_in_ms = 3.0, double rated_ms = 12.0, double cut_out_ms = 24.0,
                            double step_ms = 0.5);

    double fraction(double speed_ms) const;
    double cut_in() const noexcept { return cut_in_; }
    double rated() const noexcept { return rated_; }
    double cut_out() const noexcept { return cut_out_; }
    const std::vector<PowerCurvePoint>& points() const noexcept { return points_; }

    friend bool operator==(const PowerCurve& a, const PowerCurve& b) { return a.points_ == b.points_; }

private:
    std::vector<PowerCurvePoint> points_;
    double cut_in_ = 0.0;
    double rated_ = 0.0;
    double cut_out_ = 0.0;
};

/// Reads the `speed_ms,fraction` CSV format.
PowerCurve parse_power_curve_csv(std::istream& in);
PowerCurve read_power_curve_csv(const std::string& path);
void write_power_curve_csv(std::ostream& out, const PowerCurve& curve);

struct WindSpec {
    double unit_rating_kw = 3.0;
    double hub_height_m = 12.0;
    double anemometer_height_m = 10.0;
    double shear_exponent = 1.0 / 7.0;
    double air_density_kg_m3 = 1.225;
    double reference_density_kg_m3 = 1.225;
    PowerCurve curve = PowerCurve::cubic();

    void validate() const;
    friend bool operator==(const WindSpec&, const WindSpec&) = default;
};

/// Power-law extrapolation from anemometer height to hub height.
double hub_wind_speed(double anemometer_speed_ms, double anemometer_height_m, double hub_height_m,
                      double shear_exponent);

/// Output of `n_units` turbines in kW, scaled by the air density ratio.
double turbine_power(const WindSpec& spec, int n_units, double hub_speed_ms, double air_density_kg_m3);

// ---------------------------------------------------------------------------
// Battery

struct BatterySpec {
    double unit_capacity_kwh = 2.0;
    double nominal_voltage_v = 12.0;
    double roundtrip_efficiency = 0.97;
    double soc_min = 0.2;
    double soc_max = 1.0;
    double self_discharge_per_hour = 0.0;
    double max_charge_kw_per_unit = 2.0;
    double max_discharge_kw_per_unit = 2.0;

    void validate() const;
    /// One-way efficiency, applied on both charge and discharge.
    double one_way_efficiency() const;
    friend bool operator==(const BatterySpec&, const BatterySpec&) = default;
};

struct BatteryState {
    double stored_kwh = 0.0;
    friend bool operator==(const BatteryState&, const BatteryState&) = default;
};

/// An aggregated bank of identical units.
struct BatteryBank {
    BatterySpec spec;
    int units = 0;

    double capacity_kwh() const { return spec.unit_capacity_kwh * units; }
    double floor_kwh() const { return spec.soc_min * capacity_kwh(); }
    double ceiling_kwh() const { return spec.soc_max * capacity_kwh(); }
    bool within_bounds(const BatteryState& s) const;

    /// Largest charge power (at the terminals) the bank accepts this step.
    double max_charge_kw(const BatteryState& s, double dt_h) const;
    /// Largest discharge power (at the terminals) the bank delivers this step.
    double max_discharge_kw(const BatteryState& s, double dt_h) const;
};

struct BatteryStepResult {
    BatteryState state;
    double accepted_kw = 0.0;   // charging power actually taken in
    double delivered_kw = 0.0;  // discharging power actually delivered
};

/// Advances the bank by one step. Positive `net_dc_kw` charges, negative discharges.
/// Requests beyond the rate or SOC limits are clamped; the result always lies
/// within [soc_min, soc_max] of capacity.
BatteryStepResult battery_step(const BatterySpec& spec, int n_units, const BatteryState& state, double net_dc_kw,
                               double dt_h);

// ---------------------------------------------------------------------------
// Diesel generator

struct GensetSpec {
    double rated_kw = 0.0;
    double min_load_ratio = 0.25;
    double fuel_intercept_l_per_h_per_kw = 0.08145;  // per rated kW
    double fuel_slope_l_per_kwh = 0.246;             // per delivered kW
    double lifetime_hours = 15000.0;

    void validate() const;
    double min_output_kw() const { return min_load_ratio * rated_kw; }
    friend bool operator==(const GensetSpec&, const GensetSpec&) = default;
};

struct GensetOutput {
    double delivered_kw = 0.0;
    double fuel_l_per_h = 0.0;
    bool running = false;
};

GensetOutput genset_step(const GensetSpec& spec, double requested_kw);

// ---------------------------------------------------------------------------
// Converter

struct ConverterSpec {
    double rated_kw = 0.0;
    double efficiency = 0.97;

    void validate() const;
    friend bool operator==(const ConverterSpec&, const ConverterSpec&) = default;
};

enum class Direction { dc_to_ac, ac_to_dc };

/// Power out of the converter for `offered_kw` in. Input above the rating is
/// not taken; the caller keeps the surplus on the source side.
double converter_flow(const ConverterSpec& spec, Direction direction, double offered_kw);

/// Converter rating needed to carry the peak load through the inverter.
double converter_sizing_hint(double peak_load_kw, double efficiency);

}  // namespace microgrid
