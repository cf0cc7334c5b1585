#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "microgrid/errors.hpp"
#include "microgrid/time_series.hpp"

using namespace microgrid;

namespace {

std::string csv_of(std::size_t rows, double value = 0.0) {
    std::ostringstream os;
    os << "hour,value\n";
    for (std::size_t h = 0; h < rows; ++h) os << h << ',' << value << '\n';
    return os.str();
}

}  // namespace

TEST(HourlyCsv, ZerosFileParses) {
    std::istringstream in(csv_of(8760));
    auto ts = parse_hourly_csv(in, Quantity::ghi_kw_m2);
    EXPECT_EQ(ts.size(), 8760u);
    EXPECT_EQ(ts.sum(), 0.0);
}

TEST(HourlyCsv, ShortFileNamesExpectedLength) {
    std::istringstream in(csv_of(8759));
    try {
        parse_hourly_csv(in, Quantity::load_kw);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("8760"), std::string::npos) << e.what();
    }
}

TEST(HourlyCsv, NegativeIrradianceReportsLine13) {
    std::string text = csv_of(8760);
    const auto pos = text.find("\n12,0\n");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 6, "\n12,-3.0\n");
    std::istringstream in(text);
    try {
        parse_hourly_csv(in, Quantity::ghi_kw_m2);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        ASSERT_TRUE(e.line().has_value());
        EXPECT_EQ(*e.line(), 13u);
    }
}

TEST(HourlyCsv, NegativeTemperatureIsAllowed) {
    std::istringstream in(csv_of(8760, -4.5));
    auto ts = parse_hourly_csv(in, Quantity::temp_c);
    EXPECT_DOUBLE_EQ(ts.mean(), -4.5);
}

TEST(HourlyCsv, BadHeaderIsLineZero) {
    std::istringstream in("time,kw\n0,1\n");
    try {
        parse_hourly_csv(in, Quantity::load_kw);
        FAIL();
    } catch (const ValidationError& e) {
        ASSERT_TRUE(e.line().has_value());
        EXPECT_EQ(*e.line(), 0u);
    }
}

TEST(HourlyCsv, OutOfSequenceHourRejected) {
    std::string text = csv_of(8760);
    text.replace(text.find("\n5,0\n"), 5, "\n6,0\n");
    std::istringstream in(text);
    EXPECT_THROW(parse_hourly_csv(in, Quantity::load_kw), ValidationError);
}

TEST(HourlyCsv, NonNumericRejected) {
    std::string text = csv_of(8760);
    text.replace(text.find("\n7,0\n"), 5, "\n7,x\n");
    std::istringstream in(text);
    EXPECT_THROW(parse_hourly_csv(in, Quantity::load_kw), ValidationError);
}

TEST(HourlyCsv, WriteParseRoundTripIsExact) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 500.0);
    std::vector<double> v(kHoursPerYear);
    for (auto& x : v) x = u(rng);
    TimeSeries ts(Quantity::load_kw, v);
    std::stringstream buf;
    write_hourly_csv(buf, ts);
    EXPECT_EQ(parse_hourly_csv(buf, Quantity::load_kw), ts);
}

TEST(TimeSeries, RejectsWrongLengthAndNegatives) {
    EXPECT_THROW(TimeSeries(Quantity::load_kw, std::vector<double>(10, 1.0)), ValidationError);
    std::vector<double> v(kHoursPerYear, 1.0);
    v[100] = -1.0;
    EXPECT_THROW(TimeSeries(Quantity::wind_ms, v), ValidationError);
    v[100] = std::nan("");
    EXPECT_THROW(TimeSeries(Quantity::temp_c, v), ValidationError);
}

TEST(TimeSeries, MonthOfHourBoundaries) {
    EXPECT_EQ(month_of_hour(0), 0);
    EXPECT_EQ(month_of_hour(31 * 24 - 1), 0);
    EXPECT_EQ(month_of_hour(31 * 24), 1);
    EXPECT_EQ(month_of_hour(8759), 11);
    EXPECT_THROW(month_of_hour(8760), ValidationError);
}

TEST(ScaleToMean, IdentityWhenTargetEqualsMean) {
    auto ts = TimeSeries::constant(Quantity::wind_ms, 3.0);
    EXPECT_EQ(scale_to_mean(ts, 3.0), ts);
}

TEST(ScaleToMean, WindFourToKhobarMean) {
    std::vector<double> v(kHoursPerYear);
    for (std::size_t h = 0; h < v.size(); ++h) v[h] = (h % 2 == 0) ? 3.0 : 5.0;
    TimeSeries ts(Quantity::wind_ms, v);
    auto out = scale_to_mean(ts, 5.61);
    EXPECT_NEAR(out.mean(), 5.61, 1e-12);
    EXPECT_NEAR(out[0], 3.0 * 1.4025, 1e-12);
    EXPECT_NEAR(out[1], 5.0 * 1.4025, 1e-12);
}

TEST(ScaleToMean, ZeroSeriesIsError) {
    EXPECT_THROW(scale_to_mean(TimeSeries::constant(Quantity::wind_ms, 0.0), 5.0), ValidationError);
}

TEST(LoadStats, FlatLoad) {
    auto s = load_stats(TimeSeries::constant(Quantity::load_kw, 101.0));
    EXPECT_DOUBLE_EQ(s.avg_daily_kwh, 2424.0);
    EXPECT_DOUBLE_EQ(s.load_factor, 1.0);
    EXPECT_DOUBLE_EQ(s.peak_kw, 101.0);
}

TEST(LoadStats, ZeroLoadIsError) {
    EXPECT_THROW(load_stats(TimeSeries::constant(Quantity::load_kw, 0.0)), ValidationError);
}

TEST(MonthlyProfile, AnnualMeanIsDayWeighted) {
    MonthlyProfile p{Quantity::wind_ms, {}};
    for (int m = 0; m < 12; ++m) p.values[m] = m + 1.0;
    double num = 0.0;
    for (int m = 0; m < 12; ++m) num += (m + 1.0) * kDaysInMonth[m];
    EXPECT_NEAR(p.annual_mean(), num / 365.0, 1e-12);
    auto scaled = p.scaled_to_annual_mean(5.61);
    EXPECT_NEAR(scaled.annual_mean(), 5.61, 1e-12);
    EXPECT_NEAR(scaled.values[3] / scaled.values[0], 4.0, 1e-12);
}

TEST(MonthlyProfile, MonthlyMeansOfIrradianceAreDaily) {
    auto ts = TimeSeries::constant(Quantity::ghi_kw_m2, 0.25);
    auto p = monthly_means(ts);
    for (double v : p.values) EXPECT_NEAR(v, 6.0, 1e-12);
}

TEST(DailyShape, NormalizesAndValidates) {
    std::array<double, 24> raw{};
    raw.fill(2.0);
    auto s = DailyShape::from_unnormalized(raw);
    EXPECT_NEAR(std::accumulate(s.weights().begin(), s.weights().end(), 0.0), 1.0, 1e-12);
    EXPECT_EQ(s, DailyShape::uniform());
    raw.fill(0.0);
    EXPECT_THROW(DailyShape::from_unnormalized(raw), ValidationError);
    std::array<double, 24> bad{};
    bad[0] = 0.5;
    EXPECT_THROW(DailyShape{bad}, ValidationError);
}
