#include "cpso/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>

namespace cpso {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw ConfigError("config key '" + std::string(key) + "': cannot parse '" + std::string(value) + "' as " +
                    expected);
}

double to_real(std::string_view key, std::string_view value) {
  const std::string s(trim(value));
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) bad_value(key, value, "a real number");
    return v;
  } catch (const std::logic_error&) {
    bad_value(key, value, "a real number");
  }
}

std::uint64_t to_uint(std::string_view key, std::string_view value) {
  const std::string_view s = trim(value);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) bad_value(key, value, "an unsigned integer");
  return v;
}

bool to_bool(std::string_view key, std::string_view value) {
  const std::string_view s = trim(value);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  bad_value(key, value, "a boolean");
}

using Setter = std::function<void(RunConfiguration&, std::string_view key, std::string_view value)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  auto real = [](double CpsoSettings::*field) {
    return [field](RunConfiguration& c, std::string_view k, std::string_view v) { c.plan.cpso.*field = to_real(k, v); };
  };
  auto sched = [](double ChaosSchedule::*field) {
    return [field](RunConfiguration& c, std::string_view k, std::string_view v) {
      c.plan.cpso.schedule.*field = to_real(k, v);
    };
  };
  auto cpso_count = [](std::size_t CpsoSettings::*field) {
    return [field](RunConfiguration& c, std::string_view k, std::string_view v) { c.plan.cpso.*field = to_uint(k, v); };
  };
  static const std::vector<std::pair<std::string, Setter>> table{
      {"run.seed", [](RunConfiguration& c, auto k, auto v) { c.seed = to_uint(k, v); }},
      {"run.population", [](RunConfiguration& c, auto k, auto v) { c.population = to_uint(k, v); }},
      {"run.iterations", [](RunConfiguration& c, auto k, auto v) { c.iterations = to_uint(k, v); }},

      {"cpso.c2", real(&CpsoSettings::c2)},
      {"cpso.mute_multiplier", real(&CpsoSettings::mute_multiplier)},
      {"cpso.e_divisor", [](RunConfiguration& c, auto k, auto v) { c.plan.e_divisor = to_real(k, v); }},
      {"cpso.alpha", sched(&ChaosSchedule::steepness)},
      {"cpso.beta", sched(&ChaosSchedule::midpoint)},
      {"cpso.max_chaos", sched(&ChaosSchedule::max_chaos)},
      {"cpso.diffusion_threshold", sched(&ChaosSchedule::diffusion_threshold)},
      {"cpso.nucleation_threshold", sched(&ChaosSchedule::nucleation_threshold)},
      {"cpso.placement",
       [](RunConfiguration& c, auto k, auto v) {
         try {
           c.plan.cpso.diffusion_placement = placement_from_string(trim(v));
         } catch (const StructuralError&) {
           bad_value(k, v, "one of uniform, cvt, repulsive");
         }
       }},
      {"cpso.relocate_every_diffusion_iteration",
       [](RunConfiguration& c, auto k, auto v) { c.plan.cpso.relocate_every_diffusion_iteration = to_bool(k, v); }},
      {"cpso.cvt_samples", cpso_count(&CpsoSettings::cvt_samples)},
      {"cpso.cvt_iterations", cpso_count(&CpsoSettings::cvt_iterations)},
      {"cpso.repulsion_steps", cpso_count(&CpsoSettings::repulsion_steps)},

      {"pso2011.inertia", [](RunConfiguration& c, auto k, auto v) { c.plan.pso2011.inertia = to_real(k, v); }},
      {"pso2011.acceleration",
       [](RunConfiguration& c, auto k, auto v) { c.plan.pso2011.acceleration = to_real(k, v); }},
      {"pso2011.neighbors", [](RunConfiguration& c, auto k, auto v) { c.plan.pso2011.neighbors = to_uint(k, v); }},

      {"bench.functions",
       [](RunConfiguration& c, auto k, auto v) {
         auto names = split_list(v);
         const auto& known = objective_names();
         for (const auto& n : names) {
           if (std::find(known.begin(), known.end(), n) == known.end()) bad_value(k, v, "a list of function names");
         }
         c.plan.functions = std::move(names);
       }},
      {"bench.populations",
       [](RunConfiguration& c, auto k, auto v) {
         std::vector<std::size_t> pops;
         for (const auto& item : split_list(v)) pops.push_back(to_uint(k, item));
         c.plan.populations = std::move(pops);
       }},
      {"bench.replicates", [](RunConfiguration& c, auto k, auto v) { c.plan.replicates = to_uint(k, v); }},
      {"bench.iterations", [](RunConfiguration& c, auto k, auto v) { c.plan.iterations = to_uint(k, v); }},
      {"bench.optimizers",
       [](RunConfiguration& c, auto k, auto v) {
         std::vector<Optimizer> opts;
         for (const auto& item : split_list(v)) {
           try {
             opts.push_back(optimizer_from_string(item));
           } catch (const StructuralError&) {
             bad_value(k, v, "a list of cpso, pso2011");
           }
         }
         c.plan.optimizers = std::move(opts);
       }},
      {"bench.root_seed", [](RunConfiguration& c, auto k, auto v) { c.plan.root_seed = to_uint(k, v); }},
      {"bench.jobs", [](RunConfiguration& c, auto k, auto v) { c.jobs = to_uint(k, v); }},

      {"problem.dimension", [](RunConfiguration& c, auto k, auto v) { c.plan.dimension = to_uint(k, v); }},
  };
  return table;
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, setter] : setters()) k.push_back(name);
    for (const auto& f : objective_names()) k.push_back("domain." + f);
    return k;
  }();
  return keys;
}

void apply_setting(RunConfiguration& cfg, std::string_view key, std::string_view value) {
  for (const auto& [name, setter] : setters()) {
    if (name == key) {
      setter(cfg, key, value);
      return;
    }
  }
  if (key.starts_with("domain.")) {
    const std::string function(key.substr(7));
    const auto& known = objective_names();
    if (std::find(known.begin(), known.end(), function) != known.end()) {
      const auto parts = split_list(value);
      if (parts.size() != 2) bad_value(key, value, "'lower, upper'");
      const double lo = to_real(key, parts[0]);
      const double hi = to_real(key, parts[1]);
      if (!(lo < hi)) bad_value(key, value, "'lower, upper' with lower < upper");
      cfg.plan.domains.insert_or_assign(function, Bounds::cube(cfg.plan.dimension, lo, hi));
      return;
    }
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void parse_config(std::istream& in, RunConfiguration& cfg, const std::string& source) {
  std::string line;
  std::size_t number = 0;
  std::vector<std::pair<std::string, std::string>> domain_lines;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string_view key = trim(view.substr(0, eq));
    const std::string_view value = trim(view.substr(eq + 1));
    try {
      // Domain boxes depend on problem.dimension; apply them after everything else.
      if (key.starts_with("domain.")) {
        RunConfiguration probe = cfg;
        apply_setting(probe, key, value);
        domain_lines.emplace_back(key, value);
        continue;
      }
      apply_setting(cfg, key, value);
    } catch (const ConfigError& err) {
      throw ConfigError(source + ":" + std::to_string(number) + ": " + err.what());
    }
  }
  for (const auto& [key, value] : domain_lines) apply_setting(cfg, key, value);
}

void load_config_file(const std::string& path, RunConfiguration& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  parse_config(in, cfg, path);
}

}  // namespace cpso
