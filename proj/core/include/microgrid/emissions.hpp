#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>

namespace microgrid {

enum class Species { co2, co, uhc, pm, so2, nox };

inline constexpr std::array<Species, 6> kAllSpecies{Species::co2, Species::co, Species::uhc,
                                                    Species::pm,  Species::so2, Species::nox};

std::string_view to_string(Species s);
std::string_view display_name(Species s);

/// kg of pollutant per unit of activity, indexed by Species.
using SpeciesVector = std::array<double, 6>;

struct EmissionFactors {
    /// kg per litre of diesel burned.
    SpeciesVector genset_kg_per_l{2.618, 0.0165, 0.00072, 0.00010, 0.00641, 0.01551};
    /// kg per kWh bought from the grid. Only CO2, SO2 and NOx are nonzero.
    SpeciesVector grid_kg_per_kwh{0.632, 0.0, 0.0, 0.0, 0.00274, 0.00134};

    void validate() const;
    friend bool operator==(const EmissionFactors&, const EmissionFactors&) = default;
};

/// Annual emissions in kg/yr, attributed by source.
struct EmissionsReport {
    SpeciesVector genset_kg{};
    SpeciesVector grid_kg{};

    double total(Species s) const;
    EmissionsReport& operator+=(const EmissionsReport& other);
    friend EmissionsReport operator+(EmissionsReport a, const EmissionsReport& b) { return a += b; }
    friend bool operator==(const EmissionsReport&, const EmissionsReport&) = default;
};

EmissionsReport genset_emissions(double fuel_l_per_year, const EmissionFactors& factors);
EmissionsReport grid_emissions(double kwh_per_year, const EmissionFactors& factors);

/// Flat `source.species = value` file, `#` comments. Keys not present keep their defaults.
EmissionFactors parse_emission_factors(std::istream& in);
EmissionFactors read_emission_factors(const std::string& path);
void write_emission_factors(std::ostream& out, const EmissionFactors& factors);

}  // namespace microgrid
