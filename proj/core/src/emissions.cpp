#include "microgrid/emissions.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "microgrid/errors.hpp"
#include "text_util.hpp"

namespace microgrid {

std::string_view to_string(Species s) {
    switch (s) {
        case Species::co2: return "co2";
        case Species::co: return "co";
        case Species::uhc: return "uhc";
        case Species::pm: return "pm";
        case Species::so2: return "so2";
        case Species::nox: return "nox";
    }
    return "unknown";
}

std::string_view display_name(Species s) {
    switch (s) {
        case Species::co2: return "Carbon dioxide";
        case Species::co: return "Carbon monoxide";
        case Species::uhc: return "Unburned hydrocarbons";
        case Species::pm: return "Particulate matter";
        case Species::so2: return "Sulfur dioxide";
        case Species::nox: return "Nitrogen oxides";
    }
    return "unknown";
}

void EmissionFactors::validate() const {
    for (std::size_t k = 0; k < kAllSpecies.size(); ++k) {
        if (!(genset_kg_per_l[k] >= 0.0) || !(grid_kg_per_kwh[k] >= 0.0)) {
            throw ValidationError("emission factor for " + std::string(to_string(kAllSpecies[k])) + " is negative");
        }
    }
}

double EmissionsReport::total(Species s) const {
    const auto k = static_cast<std::size_t>(s);
    return genset_kg[k] + grid_kg[k];
}

EmissionsReport& EmissionsReport::operator+=(const EmissionsReport& other) {
    for (std::size_t k = 0; k < genset_kg.size(); ++k) {
        genset_kg[k] += other.genset_kg[k];
        grid_kg[k] += other.grid_kg[k];
    }
    return *this;
}

EmissionsReport genset_emissions(double fuel_l_per_year, const EmissionFactors& factors) {
    if (!(fuel_l_per_year >= 0.0)) throw ValidationError("fuel use must be nonnegative");
    EmissionsReport r;
    for (std::size_t k = 0; k < r.genset_kg.size(); ++k) r.genset_kg[k] = fuel_l_per_year * factors.genset_kg_per_l[k];
    return r;
}

EmissionsReport grid_emissions(double kwh_per_year, const EmissionFactors& factors) {
    if (!(kwh_per_year >= 0.0)) throw ValidationError("grid energy must be nonnegative");
    EmissionsReport r;
    for (std::size_t k = 0; k < r.grid_kg.size(); ++k) r.grid_kg[k] = kwh_per_year * factors.grid_kg_per_kwh[k];
    return r;
}

EmissionFactors parse_emission_factors(std::istream& in) {
    EmissionFactors f;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto text = detail::trim(std::string_view(line).substr(0, line.find('#')));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ValidationError("expected 'key = value'", line_no);
        const auto key = detail::trim(text.substr(0, eq));
        const auto value = detail::parse_double(text.substr(eq + 1));
        if (!value) throw ValidationError("non-numeric value for '" + std::string(key) + "'", line_no);
        if (*value < 0.0) throw ValidationError("negative factor for '" + std::string(key) + "'", line_no);

        const auto dot = key.find('.');
        if (dot == std::string_view::npos) throw ValidationError("key must look like source.species", line_no);
        const auto source = key.substr(0, dot);
        const auto species = key.substr(dot + 1);
        SpeciesVector* target = source == "genset" ? &f.genset_kg_per_l : source == "grid" ? &f.grid_kg_per_kwh : nullptr;
        if (target == nullptr) throw ValidationError("unknown source '" + std::string(source) + "'", line_no);
        bool found = false;
        for (auto s : kAllSpecies) {
            if (to_string(s) == species) {
                (*target)[static_cast<std::size_t>(s)] = *value;
                found = true;
            }
        }
        if (!found) throw ValidationError("unknown species '" + std::string(species) + "'", line_no);
    }
    return f;
}

EmissionFactors read_emission_factors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return parse_emission_factors(in);
}

void write_emission_factors(std::ostream& out, const EmissionFactors& factors) {
    out << "# kg per litre of diesel\n";
    for (auto s : kAllSpecies) {
        out << "genset." << to_string(s) << " = " << detail::format_double(factors.genset_kg_per_l[static_cast<std::size_t>(s)]) << '\n';
    }
    out << "# kg per kWh purchased\n";
    for (auto s : kAllSpecies) {
        out << "grid." << to_string(s) << " = " << detail::format_double(factors.grid_kg_per_kwh[static_cast<std::size_t>(s)]) << '\n';
    }
}

}  // namespace microgrid
