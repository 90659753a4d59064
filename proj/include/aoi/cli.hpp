#pragma once

#include <ostream>

namespace aoi {

/// Entry point of the `aoisnc` tool. Exit codes: 0 success (including
/// flagged rows), 2 usage or config error, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aoi
