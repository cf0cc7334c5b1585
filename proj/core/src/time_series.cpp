#include "microgrid/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "microgrid/errors.hpp"
#include "text_util.hpp"

namespace microgrid {

std::string_view to_string(Quantity q) {
    switch (q) {
        case Quantity::load_kw: return "load_kw";
        case Quantity::ghi_kw_m2: return "ghi_kw_m2";
        case Quantity::wind_ms: return "wind_ms";
        case Quantity::temp_c: return "temp_c";
    }
    return "unknown";
}

Quantity quantity_from_string(std::string_view name) {
    for (auto q : {Quantity::load_kw, Quantity::ghi_kw_m2, Quantity::wind_ms, Quantity::temp_c}) {
        if (to_string(q) == name) return q;
    }
    throw ValidationError("unknown quantity '" + std::string(name) + "'");
}

int month_of_hour(std::size_t hour) {
    if (hour >= kHoursPerYear) throw ValidationError("hour " + std::to_string(hour) + " outside 0..8759");
    auto day = static_cast<int>(hour / kHoursPerDay);
    int month = 0;
    while (day >= kDaysInMonth[month]) {
        day -= kDaysInMonth[month];
        ++month;
    }
    return month;
}

TimeSeries::TimeSeries(Quantity quantity, std::vector<double> values)
    : quantity_(quantity), values_(std::move(values)) {
    if (values_.size() != kHoursPerYear) {
        throw ValidationError("time series has " + std::to_string(values_.size()) +
                              " values, expected 8760");
    }
    for (std::size_t h = 0; h < values_.size(); ++h) {
        if (!std::isfinite(values_[h])) {
            throw ValidationError("non-finite value at hour " + std::to_string(h));
        }
        if (is_nonnegative(quantity_) && values_[h] < 0.0) {
            throw ValidationError("negative " + std::string(to_string(quantity_)) + " value at hour " +
                                  std::to_string(h));
        }
    }
}

TimeSeries TimeSeries::constant(Quantity quantity, double value) {
    return TimeSeries(quantity, std::vector<double>(kHoursPerYear, value));
}

double TimeSeries::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }
double TimeSeries::mean() const { return sum() / static_cast<double>(values_.size()); }
double TimeSeries::max() const { return *std::max_element(values_.begin(), values_.end()); }

void MonthlyProfile::validate() const {
    for (std::size_t m = 0; m < values.size(); ++m) {
        if (!std::isfinite(values[m])) throw ValidationError("monthly value " + std::to_string(m + 1) + " is not finite");
        if (is_nonnegative(quantity) && values[m] < 0.0) {
            throw ValidationError("monthly value " + std::to_string(m + 1) + " is negative");
        }
    }
}

double MonthlyProfile::annual_mean() const {
    double acc = 0.0;
    for (std::size_t m = 0; m < 12; ++m) acc += values[m] * kDaysInMonth[m];
    return acc / static_cast<double>(kDaysPerYear);
}

MonthlyProfile MonthlyProfile::scaled_to_annual_mean(double target) const {
    const double current = annual_mean();
    if (!(current > 0.0)) throw ValidationError("cannot scale a monthly profile with nonpositive annual mean");
    MonthlyProfile out = *this;
    for (auto& v : out.values) v *= target / current;
    return out;
}

DailyShape::DailyShape(std::array<double, 24> weights) : weights_(weights) {
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("daily shape weights must be finite and nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("daily shape weights sum to " + detail::format_double(total) + ", expected 1");
    }
}

DailyShape DailyShape::from_unnormalized(std::span<const double> weights) {
    if (weights.size() != kHoursPerDay) {
        throw ValidationError("daily shape needs 24 weights, got " + std::to_string(weights.size()));
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("daily shape weights must be finite and nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw ValidationError("daily shape weights are all zero");
    std::array<double, 24> out{};
    for (std::size_t h = 0; h < 24; ++h) out[h] = weights[h] / total;
    return DailyShape(out);
}

DailyShape DailyShape::uniform() {
    std::array<double, 24> w{};
    w.fill(1.0 / 24.0);
    return DailyShape(w);
}

TimeSeries parse_hourly_csv(std::istream& in, Quantity quantity) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty input, expected header 'hour,value'", 0);
    if (detail::trim(line) != "hour,value") {
        throw ValidationError("header mismatch: expected 'hour,value', got '" + std::string(detail::trim(line)) + "'", 0);
    }

    std::vector<double> values;
    values.reserve(kHoursPerYear);
    std::size_t row = 0;
    while (std::getline(in, line)) {
        auto text = detail::trim(line);
        if (text.empty()) continue;
        ++row;
        if (row > kHoursPerYear) {
            throw ValidationError("too many rows, expected 8760", row);
        }
        auto comma = text.find(',');
        if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
            throw ValidationError("expected two comma-separated cells", row);
        }
        auto hour = detail::parse_int(text.substr(0, comma));
        if (!hour) throw ValidationError("non-numeric hour '" + std::string(text.substr(0, comma)) + "'", row);
        if (*hour != static_cast<long long>(row - 1)) {
            throw ValidationError("hour " + std::to_string(*hour) + " out of sequence, expected " +
                                      std::to_string(row - 1),
                                  row);
        }
        auto value = detail::parse_double(text.substr(comma + 1));
        if (!value || !std::isfinite(*value)) {
            throw ValidationError("non-numeric value '" + std::string(detail::trim(text.substr(comma + 1))) + "'", row);
        }
        if (is_nonnegative(quantity) && *value < 0.0) {
            throw ValidationError("negative value " + detail::format_double(*value) + " for " +
                                      std::string(to_string(quantity)),
                                  row);
        }
        values.push_back(*value);
    }
    if (values.size() != kHoursPerYear) {
        throw ValidationError("file has " + std::to_string(values.size()) + " data rows, expected 8760");
    }
    return TimeSeries(quantity, std::move(values));
}

TimeSeries read_hourly_csv(const std::string& path, Quantity quantity) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return parse_hourly_csv(in, quantity);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_hourly_csv(std::ostream& out, const TimeSeries& ts) {
    out << "hour,value\n";
    for (std::size_t h = 0; h < ts.size(); ++h) {
        out << h << ',' << detail::format_double(ts[h]) << '\n';
    }
}

TimeSeries scale_to_mean(const TimeSeries& ts, double target_mean) {
    const double source = ts.mean();
    if (!(source > 0.0)) {
        throw ValidationError("cannot scale a series whose mean is " + detail::format_double(source));
    }
    if (!(target_mean >= 0.0)) throw ValidationError("target mean must be nonnegative");
    const double factor = target_mean / source;
    std::vector<double> out(ts.values().begin(), ts.values().end());
    for (auto& v : out) v *= factor;
    return TimeSeries(ts.quantity(), std::move(out));
}

LoadStats load_stats(const TimeSeries& ts) {
    if (ts.quantity() != Quantity::load_kw) throw ValidationError("load_stats needs a load_kw series");
    const double peak = ts.max();
    if (!(peak > 0.0)) throw ValidationError("load series is all zero");
    const double avg_daily = ts.mean() * 24.0;
    return LoadStats{avg_daily, peak, (avg_daily / 24.0) / peak};
}

MonthlyProfile monthly_means(const TimeSeries& ts) {
    MonthlyProfile out{ts.quantity(), {}};
    std::array<double, 12> sums{};
    std::array<int, 12> counts{};
    for (std::size_t h = 0; h < ts.size(); ++h) {
        auto m = month_of_hour(h);
        sums[m] += ts[h];
        ++counts[m];
    }
    for (std::size_t m = 0; m < 12; ++m) {
        double mean = sums[m] / counts[m];
        out.values[m] = ts.quantity() == Quantity::ghi_kw_m2 ? mean * 24.0 : mean;
    }
    return out;
}

}  // namespace microgrid
