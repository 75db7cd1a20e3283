#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tdnls/painleve.hpp"
#include "tdnls/solver.hpp"
#include "tdnls/verify.hpp"

namespace tdnls::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

json painleve_json(const Expr& F, const painleve::PainleveReport& r);
json case_json(const verify::CaseReport& r);
json convergence_json(const solver::ConvergenceTable& t);

/// Two-space indented text with a trailing newline.
std::string to_text(const json& j);
/// Writes to_text(j); throws ConfigError on I/O failure.
void write_json(const std::string& path, const json& j);

/// Run manifest: subcommand, parameters, tool version, wall-clock time,
/// verdicts and each output file with its byte count (read back from disk).
json manifest_json(const std::string& subcommand, const json& parameters, const json& verdicts,
                   const std::vector<std::string>& outputs);

} // namespace tdnls::report
