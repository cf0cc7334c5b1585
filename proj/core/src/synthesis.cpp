#include "microgrid/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "microgrid/errors.hpp"
#include "text_util.hpp"

namespace microgrid {

namespace {

std::vector<double> day_multipliers(double variability, std::uint64_t seed) {
    std::vector<double> out(kDaysPerYear, 1.0);
    if (variability == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double bias = 0.5 * variability * variability;
    for (auto& f : out) f = std::exp(variability * normal(rng) - bias);
    return out;
}

void check_variability(double v) {
    if (!(v >= 0.0 && v < 1.0)) {
        throw ValidationError("day variability " + detail::format_double(v) + " outside [0, 1)");
    }
}

}  // namespace

TimeSeries synthesize_from_monthly(const MonthlyProfile& profile, const DailyShape& shape,
                                   const SynthesisOptions& options) {
    check_variability(options.day_variability);
    profile.validate();

    std::array<double, 24> weights = shape.weights();
    if (profile.quantity == Quantity::ghi_kw_m2) {
        const auto& win = options.daylight;
        if (win.start_hour < 0 || win.end_hour > 24 || win.start_hour >= win.end_hour) {
            throw ValidationError("daylight window must satisfy 0 <= start < end <= 24");
        }
        for (int h = 0; h < 24; ++h) {
            if (h < win.start_hour || h >= win.end_hour) weights[h] = 0.0;
        }
        weights = DailyShape::from_unnormalized(weights).weights();
    }

    const auto factors = day_multipliers(options.day_variability, options.seed);
    std::vector<double> values(kHoursPerYear);
    std::size_t hour = 0;
    std::size_t day = 0;
    for (int m = 0; m < 12; ++m) {
        // Irradiance profiles are daily energy; convert to the mean hourly level.
        const double level = profile.quantity == Quantity::ghi_kw_m2 ? profile.values[m] / 24.0 : profile.values[m];
        const std::size_t first = hour;
        double month_sum = 0.0;
        for (int d = 0; d < kDaysInMonth[m]; ++d, ++day) {
            for (std::size_t h = 0; h < 24; ++h, ++hour) {
                values[hour] = level * 24.0 * weights[h] * factors[day];
                month_sum += values[hour];
            }
        }
        const double month_mean = month_sum / static_cast<double>(hour - first);
        const double correction = month_mean != 0.0 ? level / month_mean : 0.0;
        for (std::size_t i = first; i < hour; ++i) values[i] *= correction;
    }
    return TimeSeries(profile.quantity, std::move(values));
}

TimeSeries synthesize_load(double avg_daily_kwh, double peak_kw, const DailyShape& shape,
                           std::uint64_t seed, double day_variability) {
    check_variability(day_variability);
    if (!(avg_daily_kwh > 0.0)) throw ValidationError("average daily load must be positive");
    const double mean_kw = avg_daily_kwh / 24.0;
    if (peak_kw < mean_kw * (1.0 - 1e-12)) {
        throw ValidationError("peak " + detail::format_double(peak_kw) + " kW is below the average power " +
                              detail::format_double(mean_kw) + " kW (load factor above 1)");
    }
    const double ratio = peak_kw / mean_kw;
    if (ratio <= 1.0 + 1e-12) return TimeSeries::constant(Quantity::load_kw, mean_kw);

    const auto factors = day_multipliers(day_variability, seed);
    std::vector<double> x(kHoursPerYear);
    for (std::size_t h = 0; h < kHoursPerYear; ++h) x[h] = shape[h % 24] * factors[h / 24];
    const double xmax = *std::max_element(x.begin(), x.end());
    for (auto& v : x) v /= xmax;

    auto mean_of = [](const std::vector<double>& v) {
        double acc = 0.0;
        for (double e : v) acc += e;
        return acc / static_cast<double>(v.size());
    };
    const double base_ratio = 1.0 / mean_of(x);

    std::vector<double> y(kHoursPerYear);
    if (ratio <= base_ratio) {
        // Blend toward flat: y = 1 + lambda (u - 1), u = x / mean(x).
        const double lambda = (ratio - 1.0) / (base_ratio - 1.0);
        for (std::size_t h = 0; h < kHoursPerYear; ++h) y[h] = 1.0 + lambda * (x[h] * base_ratio - 1.0);
    } else {
        // Peak-to-mean of x^p is increasing in p; bracket then bisect.
        auto ratio_at = [&](double p) {
            double acc = 0.0;
            for (double e : x) acc += std::pow(e, p);
            return static_cast<double>(x.size()) / acc;
        };
        double lo = 1.0;
        double hi = 2.0;
        while (ratio_at(hi) < ratio) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e6) throw ValidationError("daily shape cannot reach the requested peak-to-average ratio");
        }
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (ratio_at(mid) < ratio ? lo : hi) = mid;
        }
        const double p = 0.5 * (lo + hi);
        for (std::size_t h = 0; h < kHoursPerYear; ++h) y[h] = std::pow(x[h], p);
        const double m = mean_of(y);
        for (auto& v : y) v /= m;
    }

    const double m = mean_of(y);
    for (auto& v : y) v = std::max(0.0, v * mean_kw / m);
    return TimeSeries(Quantity::load_kw, std::move(y));
}

namespace shapes {

DailyShape ev_charging() {
    static constexpr std::array<double, 24> raw{0.6, 0.4, 0.3, 0.3, 0.3, 0.5, 0.9, 1.5, 2.0, 2.4, 2.8, 3.2,
                                                3.4, 3.3, 3.0, 2.8, 3.0, 3.6, 4.4, 4.8, 4.5, 3.6, 2.4, 1.3};
    return DailyShape::from_unnormalized(raw);
}

DailyShape solar_bell(DaylightWindow window) {
    if (window.start_hour < 0 || window.end_hour > 24 || window.start_hour >= window.end_hour) {
        throw ValidationError("daylight window must satisfy 0 <= start < end <= 24");
    }
    std::array<double, 24> raw{};
    const double span = window.end_hour - window.start_hour;
    for (int h = window.start_hour; h < window.end_hour; ++h) {
        raw[h] = std::sin(std::numbers::pi * (h - window.start_hour + 0.5) / span);
    }
    return DailyShape::from_unnormalized(raw);
}

DailyShape flat() { return DailyShape::uniform(); }

}  // namespace shapes

namespace khobar {

MonthlyProfile ghi() {
    MonthlyProfile p{Quantity::ghi_kw_m2, {3.6, 4.4, 5.2, 6.0, 6.9, 7.4, 7.1, 6.7, 6.1, 5.1, 4.0, 3.4}};
    return p.scaled_to_annual_mean(kAnnualGhi);
}

MonthlyProfile wind() {
    MonthlyProfile p{Quantity::wind_ms, {5.4, 5.7, 5.8, 5.5, 5.8, 6.8, 6.2, 5.6, 5.0, 4.9, 5.1, 5.4}};
    return p.scaled_to_annual_mean(kAnnualWind);
}

MonthlyProfile temperature() {
    return MonthlyProfile{Quantity::temp_c, {17.0, 18.5, 22.0, 27.0, 32.5, 35.0, 36.5, 36.5, 34.0, 30.0, 24.0, 19.0}};
}

}  // namespace khobar

}  // namespace microgrid
