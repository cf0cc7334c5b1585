#pragma once

#include <iosfwd>

namespace microgrid {

/// Process exit status by outcome class.
enum ExitCode : int {
    kExitOk = 0,
    kExitRuntime = 1,
    kExitConfig = 2,
    kExitInfeasible = 3,
};

/// Environment variable that overrides the configured output directory.
/// `--out` still wins over it.
inline constexpr const char* kOutDirEnv = "MICROGRID_OUT_DIR";

/// Entry point of the `microgrid` tool. Errors are reported on `err` as one line:
/// `error: class=<class> field=<field> message="<text>"`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace microgrid
