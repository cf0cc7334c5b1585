#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testing_support {

const microgrid::ScenarioData& khobar_data() {
    static const microgrid::ScenarioData data = microgrid::prepare_data(microgrid::ScenarioConfig{}, false);
    return data;
}

microgrid::ScenarioData khobar_data(std::uint64_t seed) {
    microgrid::ScenarioConfig c;
    c.seed = seed;
    return microgrid::prepare_data(c, false);
}

microgrid::SystemConfig system_with(const microgrid::Fleet& fleet, microgrid::Strategy strategy) {
    microgrid::SystemConfig s;
    s.fleet = fleet;
    s.strategy = strategy;
    return s;
}

std::string temp_dir(const std::string& name) {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / ("microgrid_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string source_path(const std::string& relative) { return std::string(MICROGRID_SOURCE_DIR) + "/" + relative; }

}  // namespace testing_support
