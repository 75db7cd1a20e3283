#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdnls::cli {

/// Exit codes: 0 success or pass, 1 failed verdict or numerical instability,
/// 2 usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tdnls::cli
