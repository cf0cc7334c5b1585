#include "microgrid/nasa_power.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

namespace microgrid::nasa {

namespace {

constexpr std::array<const char*, 12> kMonthKeys{"JAN", "FEB", "MAR", "APR", "MAY", "JUN",
                                                 "JUL", "AUG", "SEP", "OCT", "NOV", "DEC"};

MonthlyProfile read_parameter(const nlohmann::json& params, const char* name, Quantity q) {
    const std::string base = std::string("properties.parameter.") + name;
    if (!params.contains(name) || !params[name].is_object()) throw ResponseParseError(base);
    const auto& block = params[name];
    MonthlyProfile out{q, {}};
    for (std::size_t m = 0; m < 12; ++m) {
        auto it = block.find(kMonthKeys[m]);
        if (it == block.end() || !it->is_number()) throw ResponseParseError(base + "." + kMonthKeys[m]);
        double v = it->get<double>();
        // POWER marks missing data with -999.
        if (v <= -999.0 || !std::isfinite(v)) throw ResponseParseError(base + "." + kMonthKeys[m]);
        out.values[m] = v;
    }
    return out;
}

}  // namespace

std::string base_url() {
    if (const char* env = std::getenv(kBaseUrlEnv); env != nullptr && *env != '\0') return env;
    return kDefaultBaseUrl;
}

SiteClimate parse_climatology(const std::string& body) {
    auto doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw ResponseParseError("<json body>");
    if (!doc.contains("properties") || !doc["properties"].is_object()) throw ResponseParseError("properties");
    const auto& props = doc["properties"];
    if (!props.contains("parameter") || !props["parameter"].is_object()) {
        throw ResponseParseError("properties.parameter");
    }
    const auto& params = props["parameter"];
    return SiteClimate{read_parameter(params, "ALLSKY_SFC_SW_DWN", Quantity::ghi_kw_m2),
                       read_parameter(params, "WS10M", Quantity::wind_ms),
                       read_parameter(params, "T2M", Quantity::temp_c)};
}

SiteClimate fetch_monthly(double latitude, double longitude, bool allow_network) {
    if (!allow_network) throw OfflineError();
    if (!(latitude >= -90.0 && latitude <= 90.0) || !(longitude >= -180.0 && longitude <= 180.0)) {
        throw ValidationError("coordinates out of range");
    }

    const std::string url = base_url();
#ifndef MICROGRID_HAVE_HTTPS
    if (url.rfind("https://", 0) == 0) throw NetworkError("HTTPS support not compiled in; set " + std::string(kBaseUrlEnv));
#endif
    httplib::Client client(url);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    client.set_follow_location(true);

    httplib::Params query{{"parameters", "ALLSKY_SFC_SW_DWN,WS10M,T2M"},
                          {"community", "RE"},
                          {"latitude", std::to_string(latitude)},
                          {"longitude", std::to_string(longitude)},
                          {"format", "JSON"}};
    auto res = client.Get(kClimatologyPath, query, httplib::Headers{});
    if (!res) throw NetworkError("request to " + url + " failed: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) throw HttpStatusError(res->status);
    return parse_climatology(res->body);
}

}  // namespace microgrid::nasa
