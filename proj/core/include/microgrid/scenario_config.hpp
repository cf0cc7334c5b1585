#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "microgrid/dispatch.hpp"
#include "microgrid/economics.hpp"
#include "microgrid/emissions.hpp"
#include "microgrid/optimizer.hpp"
#include "microgrid/synthesis.hpp"

namespace microgrid {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

enum class ResourceSource { synth, csv, nasa };
enum class LoadSource { synth, csv };

struct SiteConfig {
    double latitude = 26.3508;
    double longitude = 50.2123;
    friend bool operator==(const SiteConfig&, const SiteConfig&) = default;
};

/// Where the hourly weather comes from. For `synth` the monthly profiles are
/// used directly; for `nasa` they are fetched first. In both cases optional
/// annual targets rescale the profiles before synthesis.
struct ResourceConfig {
    ResourceSource source = ResourceSource::synth;
    MonthlyProfile ghi_monthly = khobar::ghi();
    MonthlyProfile wind_monthly = khobar::wind();
    MonthlyProfile temp_monthly = khobar::temperature();
    std::optional<double> ghi_annual_mean = khobar::kAnnualGhi;
    std::optional<double> wind_annual_mean = khobar::kAnnualWind;
    double ghi_variability = 0.3;
    double wind_variability = 0.3;
    double temp_variability = 0.05;
    DaylightWindow daylight{};
    std::string ghi_csv;
    std::string wind_csv;
    std::string temp_csv;
    friend bool operator==(const ResourceConfig&, const ResourceConfig&) = default;
};

struct LoadConfig {
    LoadSource source = LoadSource::synth;
    double avg_daily_kwh = khobar::kAvgDailyLoadKwh;
    double peak_kw = khobar::kPeakLoadKw;
    DailyShape shape = shapes::ev_charging();
    double day_variability = 0.15;
    std::string csv;
    friend bool operator==(const LoadConfig&, const LoadConfig&) = default;
};

/// Full description of one study, mirroring the component table layout.
struct ScenarioConfig {
    std::string name = "scenario";
    SiteConfig site;
    FinanceSpec finance;
    SystemConfig system;  // fleet, component specs and strategy
    PriceSet prices;
    double grid_tariff = 0.16;
    EmissionFactors emissions;
    ResourceConfig resources;
    LoadConfig load;
    Constraints constraints;
    std::optional<SearchSpace> search;
    std::optional<double> initial_soc;
    std::uint64_t seed = kDefaultSeed;
    std::string output_dir = "out";

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses a scenario from JSON text (comments allowed). Relative file paths
/// are resolved against `base_dir`. Unknown keys, wrong types, out-of-range
/// values and missing files raise ConfigError naming the dotted field.
ScenarioConfig parse_scenario(const std::string& text, const std::string& base_dir = ".");
ScenarioConfig load_scenario(const std::string& path);

/// Canonical JSON form; parse_scenario(serialize_scenario(c)) == c.
std::string serialize_scenario(const ScenarioConfig& config);

/// Hourly inputs for the scenario, synthesized or read as configured.
struct ScenarioData {
    ResourceSeries resources;
    TimeSeries load;
};

ScenarioData prepare_data(const ScenarioConfig& config, bool allow_network);

EvaluationInputs evaluation_inputs(const ScenarioConfig& config, const ScenarioData& data);

}  // namespace microgrid
