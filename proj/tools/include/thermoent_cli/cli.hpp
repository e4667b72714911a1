#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace thermoent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitConfig = 2;

/// Runs one command line (program name excluded). Human-readable output goes
/// to `out`; domain errors also print a one-line JSON record there.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thermoent::cli
