#pragma once

#include <ostream>

namespace cusped_cli {

/// Quick property checks; one "ok"/"FAILED" line each. True when all pass.
bool run_selftest(std::ostream& os);

}  // namespace cusped_cli
