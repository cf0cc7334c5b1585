#pragma once

#include <cstdint>

#include "microgrid/time_series.hpp"

namespace microgrid {

/// Hours [start, end) during which irradiance may be nonzero.
struct DaylightWindow {
    int start_hour = 6;
    int end_hour = 18;
    friend bool operator==(const DaylightWindow&, const DaylightWindow&) = default;
};

struct SynthesisOptions {
    /// Standard deviation of the per-day lognormal multiplier, in [0, 1).
    double day_variability = 0.0;
    std::uint64_t seed = 0;
    DaylightWindow daylight{};
};

/// Expands twelve monthly means into an hourly year.
///
/// Each day gets a lognormal multiplier (unit mean, log-std = day_variability)
/// applied to monthly mean x daily shape; every month is then rescaled so its
/// mean matches the profile exactly. Irradiance is forced to zero outside the
/// daylight window. Deterministic in (profile, shape, options).
TimeSeries synthesize_from_monthly(const MonthlyProfile& profile, const DailyShape& shape,
                                   const SynthesisOptions& options);

/// Builds an hourly load whose mean daily energy is `avg_daily_kwh` and whose
/// annual maximum is `peak_kw`.
///
/// The shape with per-day noise is either blended toward a flat profile or
/// sharpened by a power transform until the peak-to-mean ratio matches, then
/// scaled to the requested mean.
TimeSeries synthesize_load(double avg_daily_kwh, double peak_kw, const DailyShape& shape,
                           std::uint64_t seed, double day_variability = 0.15);

namespace shapes {
/// Midday and evening charging peaks with a quiet early morning.
DailyShape ev_charging();
/// Half-sine over the daylight window, zero elsewhere.
DailyShape solar_bell(DaylightWindow window = {});
DailyShape flat();
}  // namespace shapes

/// Monthly climatology for Al Khobar (26.35 N, 50.21 E). Irradiance is scaled
/// to 5.6 kWh/m²/day and wind to 5.61 m/s annual means.
namespace khobar {
MonthlyProfile ghi();
MonthlyProfile wind();
MonthlyProfile temperature();
inline constexpr double kAnnualGhi = 5.6;
inline constexpr double kAnnualWind = 5.61;
inline constexpr double kAvgDailyLoadKwh = 2424.2;
inline constexpr double kPeakLoadKw = 390.41;
}  // namespace khobar

}  // namespace microgrid
