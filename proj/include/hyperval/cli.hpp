#pragma once

// Command-line front end. Every verb prints one JSON report.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
// 3 internal error.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperval/hcore.hpp"

namespace hyperval::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportVersion = 1;

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kInternal = 3 };

/// "builtin:K", "builtin:S", "builtin:W", "builtin:F<q>" or a JSON file path.
FiniteHyperfield load_hyperfield(const std::string& source);

struct ScenarioParams {
  int p = 2;
  int q = 3;
  int gamma = 1;
  std::int64_t bound = 3;
  std::int64_t rational_bound = 4;
};

const std::vector<std::string>& scenario_names();
/// Report with one claim per checked statement; "passed" is their conjunction.
nlohmann::json run_scenario(const std::string& name, const ScenarioParams& params);

/// Adds report_version, tool and tool_version.
nlohmann::json envelope(const std::string& command, nlohmann::json body);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperval::cli
