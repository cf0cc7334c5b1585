#pragma once

#include <cstdint>
#include <string>

#include "microgrid/dispatch.hpp"
#include "microgrid/economics.hpp"
#include "microgrid/scenario_config.hpp"

namespace testing_support {

/// Khobar resources and load as the default scenario synthesizes them.
const microgrid::ScenarioData& khobar_data();

/// Same synthesis with a different seed.
microgrid::ScenarioData khobar_data(std::uint64_t seed);

/// Default specs with the given sizes.
microgrid::SystemConfig system_with(const microgrid::Fleet& fleet,
                                    microgrid::Strategy strategy = microgrid::Strategy::load_following);

/// Fresh empty directory under the system temp dir.
std::string temp_dir(const std::string& name);

std::string read_file(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Path inside the source tree.
std::string source_path(const std::string& relative);

}  // namespace testing_support
