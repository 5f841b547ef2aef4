#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cpso {

/// Environment variable naming a config file used when --config is absent.
inline constexpr const char* kConfigEnvVar = "CPSO_CONFIG";

/// Exit codes: 0 success, 2 usage / unknown name / bad config, 3 numerical
/// failure, 4 benchmark finished with failed cells.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cpso
