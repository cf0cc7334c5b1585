#include <gtest/gtest.h>

#include <filesystem>

#include "microgrid/errors.hpp"
#include "microgrid/nasa_power.hpp"
#include "microgrid/scenario_config.hpp"
#include "support.hpp"

using namespace microgrid;
using testing_support::source_path;

namespace {

std::string field_of(const std::string& text, const std::string& base = ".") {
    try {
        parse_scenario(text, base);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<no error>";
}

}  // namespace

TEST(ScenarioConfig, EmptyObjectGivesDefaults) {
    EXPECT_EQ(parse_scenario("{}"), ScenarioConfig{});
}

TEST(ScenarioConfig, DefaultRoundTrip) {
    ScenarioConfig c;
    EXPECT_EQ(parse_scenario(serialize_scenario(c)), c);
}

TEST(ScenarioConfig, ShippedScenariosRoundTrip) {
    int seen = 0;
    for (const auto& e : std::filesystem::directory_iterator(source_path("scenarios"))) {
        if (e.path().extension() != ".json") continue;
        SCOPED_TRACE(e.path().string());
        auto c = load_scenario(e.path().string());
        EXPECT_EQ(parse_scenario(serialize_scenario(c)), c);
        ++seen;
    }
    EXPECT_GE(seen, 6);
}

TEST(ScenarioConfig, ScenarioOneFleet) {
    auto c = load_scenario(source_path("scenarios/scenario1.json"));
    EXPECT_EQ(c.system.fleet, (Fleet{714, 67, 1059, 490.0, 331.0}));
    EXPECT_EQ(c.system.strategy, Strategy::load_following);
    EXPECT_EQ(c.name, "scenario1");
}

TEST(ScenarioConfig, CommentsAllowed) {
    auto c = parse_scenario("// top\n{ /* inline */ \"name\": \"x\" // trailing\n}");
    EXPECT_EQ(c.name, "x");
}

TEST(ScenarioConfig, UnknownKeysAreNamed) {
    EXPECT_EQ(field_of(R"({"nmae": "x"})"), "nmae");
    EXPECT_EQ(field_of(R"({"fleet": {"n_pvs": 3}})"), "fleet.n_pvs");
    EXPECT_EQ(field_of(R"({"components": {"battery": {"prices": {"capital": 1}}}})"),
              "components.battery.prices.capital");
}

TEST(ScenarioConfig, RangeAndTypeErrorsAreNamed) {
    EXPECT_EQ(field_of(R"({"fleet": {"n_batt": -1}})"), "fleet.n_batt");
    EXPECT_EQ(field_of(R"({"fleet": {"n_pv": 1.5}})"), "fleet.n_pv");
    EXPECT_EQ(field_of(R"({"fleet": {"genset_kw": "big"}})"), "fleet.genset_kw");
    EXPECT_EQ(field_of(R"({"strategy": "greedy"})"), "strategy");
    EXPECT_EQ(field_of(R"({"constraints": {"max_unmet_fraction": 2}})"), "constraints.max_unmet_fraction");
    EXPECT_EQ(field_of(R"({"load": {"shape": [1, 2]}})"), "load.shape");
    EXPECT_EQ(field_of(R"({"resources": {"ghi_monthly": [1,2,3,4,5,6,7,8,9,10,11,-12]}})"),
              "resources.ghi_monthly");
    EXPECT_EQ(field_of(R"({"initial_soc": 0.05})"), "initial_soc");
    EXPECT_EQ(field_of("{ not json"), "<root>");
    EXPECT_EQ(field_of("[]"), "<root>");
}

TEST(ScenarioConfig, NegativeBatteryMessage) {
    try {
        parse_scenario(R"({"fleet": {"n_batt": -1}})");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find(">= 0"), std::string::npos);
    }
}

TEST(ScenarioConfig, CsvSourceNeedsFiles) {
    EXPECT_EQ(field_of(R"({"resources": {"source": "csv"}})"), "resources.csv.ghi");
    EXPECT_EQ(field_of(R"({"load": {"source": "csv"}})"), "load.csv");
    EXPECT_EQ(field_of(R"({"load": {"source": "csv", "csv": "nope.csv"}})"), "load.csv");
}

TEST(ScenarioConfig, RelativePathsResolveAgainstConfigDir) {
    const auto dir = testing_support::temp_dir("cfg_paths");
    testing_support::write_text(dir + "/curve.csv", "speed_ms,fraction\n0,0\n3,0\n12,1\n24,1\n24.01,0\n");
    auto c = parse_scenario(R"({"components": {"wind": {"power_curve": {"file": "curve.csv"}}}})", dir);
    EXPECT_EQ(c.system.wind.curve.fraction(12.0), 1.0);
    EXPECT_EQ(field_of(R"({"components": {"wind": {"power_curve": {"file": "curve.csv"}}}})", "/nonexistent"),
              "components.wind.power_curve.file");
}

TEST(ScenarioConfig, PowerCurveForms) {
    auto a = parse_scenario(R"({"components": {"wind": {"power_curve": {"points": [[0,0],[5,0.5],[10,1],[20,1],[20.5,0]]}}}})");
    EXPECT_NEAR(a.system.wind.curve.fraction(7.5), 0.75, 1e-12);
    auto b = parse_scenario(R"({"components": {"wind": {"power_curve": {"cubic": {"rated_ms": 11}}}}})");
    EXPECT_EQ(b.system.wind.curve.fraction(11.0), 1.0);
    EXPECT_EQ(field_of(R"({"components": {"wind": {"power_curve": {}}}})"), "components.wind.power_curve");
    EXPECT_EQ(field_of(R"({"components": {"wind": {"power_curve": {"points": [[0,0],[5,1.5]]}}}})"),
              "components.wind.power_curve.points");
}

TEST(ScenarioConfig, EmissionFactorsFromFileAndInline) {
    auto c = load_scenario(source_path("scenarios/full_reference.json"));
    EXPECT_EQ(c.emissions, EmissionFactors{});
    auto d = parse_scenario(R"({"emissions": {"genset": {"co2": 3.0}}})");
    EXPECT_EQ(d.emissions.genset_kg_per_l[0], 3.0);
    EXPECT_EQ(d.emissions.grid_kg_per_kwh, EmissionFactors{}.grid_kg_per_kwh);
}

TEST(ScenarioConfig, SearchSpaceParsedAndValidated) {
    auto c = load_scenario(source_path("scenarios/optimize_small.json"));
    ASSERT_TRUE(c.search.has_value());
    EXPECT_EQ(c.search->size(), 27u);
    EXPECT_EQ(field_of(R"({"search": {"n_pv": [3, 1]}})"), "search.n_pv");
    EXPECT_EQ(field_of(R"({"search": {"n_pv": []}})"), "search.n_pv");
}

TEST(ScenarioConfig, SerializedFormIsStable) {
    auto c = load_scenario(source_path("scenarios/full_reference.json"));
    const auto once = serialize_scenario(c);
    EXPECT_EQ(serialize_scenario(parse_scenario(once)), once);
}

TEST(PrepareData, SeedsChangeSeriesDeterministically) {
    ScenarioConfig c;
    const auto a = prepare_data(c, false);
    const auto b = prepare_data(c, false);
    EXPECT_EQ(a.resources.ghi, b.resources.ghi);
    EXPECT_EQ(a.load, b.load);
    c.seed += 1;
    const auto d = prepare_data(c, false);
    EXPECT_FALSE(a.resources.ghi == d.resources.ghi);
    EXPECT_NEAR(d.resources.ghi.mean() * 24.0, 5.6, 1e-6);
    EXPECT_NEAR(d.load.sum(), 884833.0, 0.01);
}

TEST(PrepareData, NasaSourceOfflineRaises) {
    ScenarioConfig c;
    c.resources.source = ResourceSource::nasa;
    EXPECT_THROW(prepare_data(c, false), nasa::OfflineError);
}
