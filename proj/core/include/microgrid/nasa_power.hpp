#pragma once

#include <string>

#include "microgrid/errors.hpp"
#include "microgrid/time_series.hpp"

namespace microgrid::nasa {

/// Environment variable that replaces the public POWER API base URL.
inline constexpr const char* kBaseUrlEnv = "MICROGRID_NASA_BASE_URL";
inline constexpr const char* kDefaultBaseUrl = "https://power.larc.nasa.gov";
inline constexpr const char* kClimatologyPath = "/api/temporal/climatology/point";

struct SiteClimate {
    MonthlyProfile ghi;          // kWh/m²/day
    MonthlyProfile wind;         // m/s at the POWER reference height (10 m)
    MonthlyProfile temperature;  // °C at 2 m
};

/// Raised when a fetch is attempted without --allow-network. No request is issued.
class OfflineError : public Error {
public:
    OfflineError() : Error("offline mode: network access not enabled (pass --allow-network)") {}
};

/// Connection-level failure (DNS, TLS, refused, timeout).
class NetworkError : public Error {
public:
    using Error::Error;
};

class HttpStatusError : public Error {
public:
    explicit HttpStatusError(int status)
        : Error("POWER API returned HTTP " + std::to_string(status)), status_(status) {}
    int status() const noexcept { return status_; }

private:
    int status_;
};

/// Response body was not the expected JSON; `field` names what was missing.
class ResponseParseError : public Error {
public:
    explicit ResponseParseError(std::string field)
        : Error("malformed POWER response: missing or invalid '" + field + "'"), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Monthly climatology for a site from the NASA POWER API.
SiteClimate fetch_monthly(double latitude, double longitude, bool allow_network);

/// Decodes a POWER climatology JSON body. Exposed for testing.
SiteClimate parse_climatology(const std::string& body);

/// Base URL honoring the environment override.
std::string base_url();

}  // namespace microgrid::nasa
