#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "cpso/bench.hpp"

namespace cpso {

class ConfigError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

/// Everything the command line can configure. Defaults are the values a
/// blank config file yields.
struct RunConfiguration {
  // Single runs (`run` subcommand).
  std::uint64_t seed = 1;
  std::size_t population = 20;
  std::size_t iterations = 1000;

  // Benchmark grid; also carries the optimizer settings, e_divisor, the
  // dimension and domain overrides used by `run`.
  BenchmarkPlan plan;
  std::size_t jobs = 1;
};

/// Keys accepted in config files, in documentation order.
const std::vector<std::string>& config_keys();

/// Sets one key. Throws ConfigError naming the key for unknown keys or
/// unparsable values.
void apply_setting(RunConfiguration& cfg, std::string_view key, std::string_view value);

/// `key = value` lines; `#` starts a comment; blank lines ignored. Later
/// lines override earlier ones.
void parse_config(std::istream& in, RunConfiguration& cfg, const std::string& source = "<config>");
void load_config_file(const std::string& path, RunConfiguration& cfg);

/// Comma-separated list helpers shared with the CLI.
std::vector<std::string> split_list(std::string_view text);

}  // namespace cpso
