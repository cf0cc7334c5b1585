#include <gtest/gtest.h>

#include <algorithm>

#include "microgrid/errors.hpp"
#include "microgrid/synthesis.hpp"

using namespace microgrid;

namespace {

MonthlyProfile constant_profile(Quantity q, double v) {
    MonthlyProfile p{q, {}};
    p.values.fill(v);
    return p;
}

}  // namespace

TEST(SynthesizeFromMonthly, ConstantProfileUniformShapeNoNoise) {
    auto ts = synthesize_from_monthly(constant_profile(Quantity::wind_ms, 4.2), shapes::flat(), {0.0, 1, {}});
    for (double v : ts.values()) EXPECT_NEAR(v, 4.2, 1e-12);
}

TEST(SynthesizeFromMonthly, KhobarIrradianceAnnualMean) {
    auto ts = synthesize_from_monthly(khobar::ghi(), shapes::solar_bell(), {0.3, 99, {}});
    EXPECT_NEAR(ts.mean() * 24.0, 5.6, 0.02);
}

TEST(SynthesizeFromMonthly, EveryMonthMatchesProfile) {
    const auto profile = khobar::wind();
    auto ts = synthesize_from_monthly(profile, shapes::flat(), {0.3, 5, {}});
    const auto means = monthly_means(ts);
    for (int m = 0; m < 12; ++m) EXPECT_NEAR(means.values[m], profile.values[m], 1e-9);
}

TEST(SynthesizeFromMonthly, DeterministicInSeed) {
    const SynthesisOptions a{0.3, 42, {}};
    const SynthesisOptions b{0.3, 43, {}};
    auto x = synthesize_from_monthly(khobar::ghi(), shapes::solar_bell(), a);
    auto y = synthesize_from_monthly(khobar::ghi(), shapes::solar_bell(), a);
    auto z = synthesize_from_monthly(khobar::ghi(), shapes::solar_bell(), b);
    EXPECT_EQ(x, y);
    EXPECT_FALSE(x == z);
}

TEST(SynthesizeFromMonthly, NoIrradianceOutsideDaylight) {
    DaylightWindow win{7, 17};
    auto ts = synthesize_from_monthly(khobar::ghi(), shapes::flat(), {0.2, 3, win});
    for (std::size_t h = 0; h < ts.size(); ++h) {
        const auto hod = static_cast<int>(h % 24);
        if (hod < 7 || hod >= 17) ASSERT_EQ(ts[h], 0.0) << "hour " << h;
    }
}

TEST(SynthesizeFromMonthly, RejectsBadVariability) {
    EXPECT_THROW(synthesize_from_monthly(khobar::wind(), shapes::flat(), {1.0, 0, {}}), ValidationError);
    EXPECT_THROW(synthesize_from_monthly(khobar::wind(), shapes::flat(), {-0.1, 0, {}}), ValidationError);
}

TEST(SynthesizeLoad, PaperLoadHitsMeanPeakAndLoadFactor) {
    auto ts = synthesize_load(2424.2, 390.41, shapes::ev_charging(), 11);
    auto s = load_stats(ts);
    EXPECT_NEAR(s.avg_daily_kwh, 2424.2, 1e-6);
    EXPECT_NEAR(s.peak_kw, 390.41, 1e-6);
    EXPECT_NEAR(s.load_factor, 0.259, 0.01);
    EXPECT_NEAR(ts.sum(), 884833.0, 0.01);
}

TEST(SynthesizeLoad, PeakEqualToMeanGivesFlatLoad) {
    auto ts = synthesize_load(2424.2, 2424.2 / 24.0, DailyShape::uniform(), 1);
    for (double v : ts.values()) EXPECT_NEAR(v, 101.00833333333334, 1e-9);
}

TEST(SynthesizeLoad, BlendBranchForMildPeaks) {
    // The raw EV shape has a peak/mean near 2; asking for 1.3 blends toward flat.
    auto ts = synthesize_load(2400.0, 130.0, shapes::ev_charging(), 2, 0.0);
    EXPECT_NEAR(ts.max(), 130.0, 1e-9);
    EXPECT_NEAR(ts.mean(), 100.0, 1e-9);
}

TEST(SynthesizeLoad, PeakBelowMeanIsError) {
    EXPECT_THROW(synthesize_load(2424.2, 90.0, shapes::ev_charging(), 1), ValidationError);
    EXPECT_THROW(synthesize_load(0.0, 90.0, shapes::ev_charging(), 1), ValidationError);
}

TEST(Shapes, SolarBellIsZeroAtNight) {
    auto s = shapes::solar_bell({6, 18});
    for (int h = 0; h < 6; ++h) EXPECT_EQ(s[h], 0.0);
    for (int h = 18; h < 24; ++h) EXPECT_EQ(s[h], 0.0);
    EXPECT_NEAR(s[11], s[12], 1e-15);
    EXPECT_THROW(shapes::solar_bell({10, 10}), ValidationError);
}

TEST(Khobar, ProfilesHitPublishedAnnualMeans) {
    EXPECT_NEAR(khobar::ghi().annual_mean(), 5.6, 1e-12);
    EXPECT_NEAR(khobar::wind().annual_mean(), 5.61, 1e-12);
}
