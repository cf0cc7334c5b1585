#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace microgrid {

inline constexpr std::size_t kHoursPerYear = 8760;
inline constexpr std::size_t kHoursPerDay = 24;
inline constexpr std::size_t kDaysPerYear = 365;

enum class Quantity { load_kw, ghi_kw_m2, wind_ms, temp_c };

std::string_view to_string(Quantity q);
Quantity quantity_from_string(std::string_view name);

/// True for quantities that can never be negative (everything except temperature).
constexpr bool is_nonnegative(Quantity q) { return q != Quantity::temp_c; }

/// Days in each month of a non-leap year.
inline constexpr std::array<int, 12> kDaysInMonth{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

/// Month index (0..11) of an hour of the year (0..8759).
int month_of_hour(std::size_t hour);

/// One year of hourly values for a single physical quantity.
///
/// Always exactly 8760 finite values; loads, irradiance and wind speed are
/// nonnegative. Construction validates, so a TimeSeries in hand is valid.
class TimeSeries {
public:
    TimeSeries(Quantity quantity, std::vector<double> values);

    static TimeSeries constant(Quantity quantity, double value);

    Quantity quantity() const noexcept { return quantity_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t hour) const { return values_[hour]; }
    std::size_t size() const noexcept { return values_.size(); }

    double mean() const;
    double max() const;
    double sum() const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    Quantity quantity_;
    std::vector<double> values_;
};

/// Twelve monthly means. For irradiance the unit is kWh/m²/day (daily energy);
/// for every other quantity it is the mean hourly value in the series' unit.
struct MonthlyProfile {
    Quantity quantity;
    std::array<double, 12> values;

    void validate() const;
    /// Mean over the year weighted by days per month.
    double annual_mean() const;
    MonthlyProfile scaled_to_annual_mean(double target) const;
    friend bool operator==(const MonthlyProfile&, const MonthlyProfile&) = default;
};

/// 24 nonnegative weights summing to one.
class DailyShape {
public:
    explicit DailyShape(std::array<double, 24> weights);

    /// Normalizes arbitrary nonnegative weights; throws if they are all zero.
    static DailyShape from_unnormalized(std::span<const double> weights);
    static DailyShape uniform();

    const std::array<double, 24>& weights() const noexcept { return weights_; }
    double operator[](std::size_t hour) const { return weights_[hour]; }

    friend bool operator==(const DailyShape&, const DailyShape&) = default;

private:
    std::array<double, 24> weights_;
};

struct LoadStats {
    double avg_daily_kwh;
    double peak_kw;
    double load_factor;
};

/// Parses the `hour,value` format. Errors carry the offending line number.
TimeSeries parse_hourly_csv(std::istream& in, Quantity quantity);
TimeSeries read_hourly_csv(const std::string& path, Quantity quantity);

/// Writes the `hour,value` format using shortest round-trip formatting.
void write_hourly_csv(std::ostream& out, const TimeSeries& ts);

TimeSeries scale_to_mean(const TimeSeries& ts, double target_mean);

LoadStats load_stats(const TimeSeries& ts);

/// Per-month mean of a series; irradiance is reported as kWh/m²/day to match MonthlyProfile.
MonthlyProfile monthly_means(const TimeSeries& ts);

}  // namespace microgrid
