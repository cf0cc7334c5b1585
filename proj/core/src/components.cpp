#include "microgrid/components.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "microgrid/errors.hpp"
#include "text_util.hpp"

namespace microgrid {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

}  // namespace

// ---------------------------------------------------------------------------

void PvSpec::validate() const {
    require(unit_rating_kw > 0.0, "pv.unit_rating_kw must be positive");
    require(derating > 0.0 && derating <= 1.0, "pv.derating must lie in (0, 1]");
    require(std::isfinite(temp_coeff), "pv.temp_coeff must be finite");
    require(noct_c >= 40.0 && noct_c <= 50.0, "pv.noct_c must lie in [40, 50]");
    require(g_stc_kw_m2 == 1.0, "pv.g_stc_kw_m2 must be 1");
}

double pv_cell_temperature(double ambient_c, double noct_c, double irradiance_w_m2) {
    return ambient_c + (noct_c - 20.0) / 800.0 * irradiance_w_m2;
}

double pv_power(const PvSpec& spec, int n_units, double irradiance_kw_m2, double ambient_c) {
    if (n_units <= 0 || irradiance_kw_m2 <= 0.0) return 0.0;
    const double cell_c = pv_cell_temperature(ambient_c, spec.noct_c, irradiance_kw_m2 * 1000.0);
    const double p = n_units * spec.unit_rating_kw * spec.derating * (irradiance_kw_m2 / spec.g_stc_kw_m2) *
                     (1.0 + spec.temp_coeff * (cell_c - spec.t_stc_c));
    return std::max(0.0, p);
}

// ---------------------------------------------------------------------------

PowerCurve::PowerCurve(std::vector<PowerCurvePoint> points) : points_(std::move(points)) {
    require(points_.size() >= 3, "power curve needs at least cut-in, rated and cut-out points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        require(std::isfinite(p.speed_ms) && p.speed_ms >= 0.0, "power curve speeds must be finite and nonnegative");
        require(p.fraction >= 0.0 && p.fraction <= 1.0, "power curve fraction outside [0, 1] at " +
                                                            detail::format_double(p.speed_ms) + " m/s");
        if (i > 0) require(p.speed_ms > points_[i - 1].speed_ms, "power curve speeds must be strictly increasing");
    }

    auto rated_it = std::find_if(points_.begin(), points_.end(), [](const auto& p) { return p.fraction == 1.0; });
    require(rated_it != points_.end(), "power curve never reaches full rating");
    auto first_positive = std::find_if(points_.begin(), points_.end(), [](const auto& p) { return p.fraction > 0.0; });
    require(first_positive != points_.begin(), "power curve must start at zero output (cut-in)");
    cut_in_ = std::prev(first_positive)->speed_ms;
    rated_ = rated_it->speed_ms;

    auto cut_out_it = std::find_if(rated_it, points_.end(), [](const auto& p) { return p.fraction == 0.0; });
    require(cut_out_it != points_.end(), "power curve needs a zero-output cut-out point above rated speed");
    cut_out_ = cut_out_it->speed_ms;

    for (auto it = first_positive; it != rated_it; ++it) {
        require(it->fraction >= std::prev(it)->fraction, "power curve must be nondecreasing between cut-in and rated");
    }
}

PowerCurve PowerCurve::cubic(double cut_in_ms, double rated_ms, double cut_out_ms, double step_ms) {
    require(cut_in_ms >= 0.0 && cut_in_ms < rated_ms && rated_ms < cut_out_ms, "need 0 <= cut-in < rated < cut-out");
    require(step_ms > 0.0, "sampling step must be positive");
    std::vector<PowerCurvePoint> pts;
    if (cut_in_ms > 0.0) pts.push_back({0.0, 0.0});
    pts.push_back({cut_in_ms, 0.0});
    const double denom = rated_ms * rated_ms * rated_ms - cut_in_ms * cut_in_ms * cut_in_ms;
    const auto steps = static_cast<int>(std::ceil((rated_ms - cut_in_ms) / step_ms - 1e-9));
    for (int k = 1; k < steps; ++k) {
        const double u = cut_in_ms + k * step_ms;
        pts.push_back({u, (u * u * u - cut_in_ms * cut_in_ms * cut_in_ms) / denom});
    }
    pts.push_back({rated_ms, 1.0});
    pts.push_back({cut_out_ms, 0.0});
    return PowerCurve(std::move(pts));
}

double PowerCurve::fraction(double speed_ms) const {
    if (speed_ms <= cut_in_ || speed_ms >= cut_out_) return 0.0;
    // Points strictly below cut-out take part in interpolation.
    auto upper = std::upper_bound(points_.begin(), points_.end(), speed_ms,
                                  [](double u, const PowerCurvePoint& p) { return u < p.speed_ms; });
    auto lower = std::prev(upper);
    if (upper == points_.end() || upper->speed_ms >= cut_out_) return lower->fraction;
    const double t = (speed_ms - lower->speed_ms) / (upper->speed_ms - lower->speed_ms);
    return lower->fraction + t * (upper->fraction - lower->fraction);
}

PowerCurve parse_power_curve_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != "speed_ms,fraction") {
        throw ValidationError("header mismatch: expected 'speed_ms,fraction'", 0);
    }
    std::vector<PowerCurvePoint> pts;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        auto text = detail::trim(line);
        if (text.empty()) continue;
        ++row;
        auto comma = text.find(',');
        if (comma == std::string_view::npos) throw ValidationError("expected two comma-separated cells", row);
        auto speed = detail::parse_double(text.substr(0, comma));
        auto frac = detail::parse_double(text.substr(comma + 1));
        if (!speed || !frac) throw ValidationError("non-numeric cell", row);
        pts.push_back({*speed, *frac});
    }
    return PowerCurve(std::move(pts));
}

PowerCurve read_power_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return parse_power_curve_csv(in);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_power_curve_csv(std::ostream& out, const PowerCurve& curve) {
    out << "speed_ms,fraction\n";
    for (const auto& p : curve.points()) {
        out << detail::format_double(p.speed_ms) << ',' << detail::format_double(p.fraction) << '\n';
    }
}

void WindSpec::validate() const {
    require(unit_rating_kw > 0.0, "wind.unit_rating_kw must be positive");
    require(hub_height_m > 0.0 && anemometer_height_m > 0.0, "wind heights must be positive");
    require(std::isfinite(shear_exponent) && shear_exponent >= 0.0, "wind.shear_exponent must be nonnegative");
    require(air_density_kg_m3 > 0.0 && reference_density_kg_m3 > 0.0, "air densities must be positive");
}

double hub_wind_speed(double anemometer_speed_ms, double anemometer_height_m, double hub_height_m,
                      double shear_exponent) {
    if (!(anemometer_height_m > 0.0) || !(hub_height_m > 0.0)) {
        throw ValidationError("heights must be positive for wind shear extrapolation");
    }
    if (anemometer_speed_ms < 0.0) throw ValidationError("wind speed must be nonnegative");
    return anemometer_speed_ms * std::pow(hub_height_m / anemometer_height_m, shear_exponent);
}

double turbine_power(const WindSpec& spec, int n_units, double hub_speed_ms, double air_density_kg_m3) {
    if (n_units <= 0) return 0.0;
    return n_units * spec.unit_rating_kw * spec.curve.fraction(hub_speed_ms) *
           (air_density_kg_m3 / spec.reference_density_kg_m3);
}

// ---------------------------------------------------------------------------

void BatterySpec::validate() const {
    require(unit_capacity_kwh > 0.0, "battery.unit_capacity_kwh must be positive");
    require(roundtrip_efficiency > 0.0 && roundtrip_efficiency <= 1.0, "battery.roundtrip_efficiency must lie in (0, 1]");
    require(soc_min >= 0.0 && soc_min < soc_max && soc_max <= 1.0, "battery SOC window must satisfy 0 <= min < max <= 1");
    require(self_discharge_per_hour >= 0.0 && self_discharge_per_hour < 1.0,
            "battery.self_discharge_per_hour must lie in [0, 1)");
    require(max_charge_kw_per_unit >= 0.0 && max_discharge_kw_per_unit >= 0.0, "battery rate limits must be nonnegative");
}

double BatterySpec::one_way_efficiency() const { return std::sqrt(roundtrip_efficiency); }

bool BatteryBank::within_bounds(const BatteryState& s) const {
    const double tol = 1e-9 * std::max(1.0, capacity_kwh());
    return s.stored_kwh >= floor_kwh() - tol && s.stored_kwh <= ceiling_kwh() + tol;
}

namespace {

double after_self_discharge(const BatteryBank& bank, const BatteryState& s, double dt_h) {
    const double decayed = s.stored_kwh * (1.0 - bank.spec.self_discharge_per_hour * dt_h);
    return std::clamp(decayed, bank.floor_kwh(), bank.ceiling_kwh());
}

}  // namespace

double BatteryBank::max_charge_kw(const BatteryState& s, double dt_h) const {
    if (units <= 0) return 0.0;
    const double headroom = ceiling_kwh() - after_self_discharge(*this, s, dt_h);
    return std::min(spec.max_charge_kw_per_unit * units, headroom / (spec.one_way_efficiency() * dt_h));
}

double BatteryBank::max_discharge_kw(const BatteryState& s, double dt_h) const {
    if (units <= 0) return 0.0;
    const double available = after_self_discharge(*this, s, dt_h) - floor_kwh();
    return std::min(spec.max_discharge_kw_per_unit * units, available * spec.one_way_efficiency() / dt_h);
}

BatteryStepResult battery_step(const BatterySpec& spec, int n_units, const BatteryState& state, double net_dc_kw,
                               double dt_h) {
    const BatteryBank bank{spec, n_units};
    if (!bank.within_bounds(state)) {
        throw ValidationError("battery state " + detail::format_double(state.stored_kwh) + " kWh outside [" +
                              detail::format_double(bank.floor_kwh()) + ", " +
                              detail::format_double(bank.ceiling_kwh()) + "]");
    }
    if (!(dt_h > 0.0)) throw ValidationError("time step must be positive");
    if (n_units <= 0) return {BatteryState{0.0}, 0.0, 0.0};

    const double eta = spec.one_way_efficiency();
    const double start = after_self_discharge(bank, state, dt_h);
    BatteryStepResult out{BatteryState{start}, 0.0, 0.0};

    if (net_dc_kw > 0.0) {
        const double rate = spec.max_charge_kw_per_unit * n_units;
        const double energy_limit = (bank.ceiling_kwh() - start) / (eta * dt_h);
        out.accepted_kw = std::min({net_dc_kw, rate, energy_limit});
        out.state.stored_kwh = out.accepted_kw == energy_limit
                                   ? bank.ceiling_kwh()
                                   : std::min(bank.ceiling_kwh(), start + out.accepted_kw * eta * dt_h);
    } else if (net_dc_kw < 0.0) {
        const double rate = spec.max_discharge_kw_per_unit * n_units;
        const double energy_limit = (start - bank.floor_kwh()) * eta / dt_h;
        out.delivered_kw = std::min({-net_dc_kw, rate, energy_limit});
        out.state.stored_kwh = out.delivered_kw == energy_limit
                                   ? bank.floor_kwh()
                                   : std::max(bank.floor_kwh(), start - out.delivered_kw * dt_h / eta);
    }
    return out;
}

// ---------------------------------------------------------------------------

void GensetSpec::validate() const {
    require(rated_kw >= 0.0, "genset.rated_kw must be nonnegative");
    require(min_load_ratio >= 0.0 && min_load_ratio < 1.0, "genset.min_load_ratio must lie in [0, 1)");
    require(fuel_intercept_l_per_h_per_kw >= 0.0 && fuel_slope_l_per_kwh >= 0.0, "genset fuel coefficients must be nonnegative");
    require(lifetime_hours > 0.0, "genset.lifetime_hours must be positive");
}

GensetOutput genset_step(const GensetSpec& spec, double requested_kw) {
    if (requested_kw <= 0.0 || spec.rated_kw <= 0.0) return {};
    const double delivered = std::clamp(requested_kw, spec.min_output_kw(), spec.rated_kw);
    return {delivered, spec.fuel_intercept_l_per_h_per_kw * spec.rated_kw + spec.fuel_slope_l_per_kwh * delivered,
            true};
}

// ---------------------------------------------------------------------------

void ConverterSpec::validate() const {
    require(rated_kw >= 0.0, "converter.rated_kw must be nonnegative");
    require(efficiency > 0.0 && efficiency <= 1.0, "converter.efficiency must lie in (0, 1]");
}

double converter_flow(const ConverterSpec& spec, Direction /*direction*/, double offered_kw) {
    if (offered_kw <= 0.0) return 0.0;
    return std::min(offered_kw, spec.rated_kw) * spec.efficiency;
}

double converter_sizing_hint(double peak_load_kw, double efficiency) {
    if (!(efficiency > 0.0 && efficiency <= 1.0)) throw ValidationError("efficiency must lie in (0, 1]");
    return peak_load_kw / efficiency;
}

}  // namespace microgrid
