#include "cpso/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "cpso/bench.hpp"
#include "cpso/chaos.hpp"
#include "cpso/config.hpp"
#include "cpso/cpso_engine.hpp"
#include "cpso/objectives.hpp"
#include "cpso/pso2011.hpp"
#include "cpso/run_result.hpp"

namespace cpso {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;
constexpr int kPartial = 4;

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Defaults, then the config file (flag or environment), then flags.
void load_base_config(const std::string& config_flag, RunConfiguration& cfg) {
  if (!config_flag.empty()) {
    load_config_file(config_flag, cfg);
    return;
  }
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) load_config_file(env, cfg);
}

struct RunFlags {
  std::string optimizer;
  std::string function;
  std::string config;
  std::string trace;
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> population;
  std::optional<std::size_t> iterations;
};

struct BenchFlags {
  std::string config;
  std::string out_dir = ".";
  std::optional<std::string> functions;
  std::optional<std::string> populations;
  std::optional<std::string> optimizers;
  std::optional<std::size_t> replicates;
  std::optional<std::size_t> iterations;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
};

struct ChaosFlags {
  std::string config;
  std::string out;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> max_chaos;
  std::size_t points = 101;
};

int cmd_run(const RunFlags& f, std::ostream& out, std::ostream& err) {
  RunConfiguration cfg;
  load_base_config(f.config, cfg);
  if (f.seed) cfg.seed = *f.seed;
  if (f.population) cfg.population = *f.population;
  if (f.iterations) cfg.iterations = *f.iterations;

  const Optimizer opt = optimizer_from_string(f.optimizer);
  const auto& names = objective_names();
  if (std::find(names.begin(), names.end(), f.function) == names.end()) {
    err << "error: unknown function '" << f.function << "'\n";
    return kUsage;
  }
  const ObjectiveSpec objective = cfg.plan.objective(f.function);
  const bool trace = !f.trace.empty();

  RunResult result;
  if (opt == Optimizer::CPSO) {
    CpsoConfig c = CpsoConfig::for_objective(objective, cfg.plan.e_divisor, cfg.plan.cpso);
    c.population = cfg.population;
    c.max_iterations = cfg.iterations;
    c.seed = cfg.seed;
    c.record_trace = trace;
    result = run_cpso(objective, c);
  } else {
    Pso2011Config c = Pso2011Config::for_objective(objective, cfg.plan.pso2011);
    c.population = cfg.population;
    c.max_iterations = cfg.iterations;
    c.seed = cfg.seed;
    c.record_trace = trace;
    result = run_pso2011(objective, c);
  }

  if (trace) {
    std::ofstream t(f.trace);
    if (!t) {
      err << "error: cannot write trace file '" << f.trace << "'\n";
      return kUsage;
    }
    write_trace_csv(t, result.trace);
  }

  if (f.json) {
    nlohmann::json doc{{"optimizer", std::string(to_string(opt))},
                       {"function", objective.name},
                       {"seed", cfg.seed},
                       {"population", cfg.population},
                       {"iterations", cfg.iterations},
                       {"best_value", result.best_value},
                       {"best_position", result.best_position},
                       {"evaluations", result.evaluations},
                       {"placement_fallback", result.placement_fallback}};
    out << doc.dump(2) << '\n';
  } else {
    out << "optimizer: " << to_string(opt) << '\n';
    out << "function: " << objective.name << '\n';
    out << "best_value: " << real17(result.best_value) << '\n';
    out << "best_position:";
    for (double x : result.best_position) out << ' ' << real17(x);
    out << '\n';
    out << "evaluations: " << result.evaluations << '\n';
    if (result.placement_fallback) out << "warning: space-filling placement failed; uniform placement used\n";
  }
  return kOk;
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  RunConfiguration cfg;
  load_base_config(f.config, cfg);
  if (f.functions) apply_setting(cfg, "bench.functions", *f.functions);
  if (f.populations) apply_setting(cfg, "bench.populations", *f.populations);
  if (f.optimizers) apply_setting(cfg, "bench.optimizers", *f.optimizers);
  if (f.replicates) cfg.plan.replicates = *f.replicates;
  if (f.iterations) cfg.plan.iterations = *f.iterations;
  if (f.seed) cfg.plan.root_seed = *f.seed;
  if (f.jobs) cfg.jobs = *f.jobs;
  cfg.plan.validate();

  const SummaryTable table = run_plan(cfg.plan, cfg.jobs);
  const ComparisonReport report = compare_to_reference(table);

  std::filesystem::create_directories(f.out_dir);
  const std::filesystem::path dir(f.out_dir);
  {
    std::ofstream csv(dir / "summary.csv");
    write_summary_csv(csv, table);
    std::ofstream json(dir / "summary.json");
    json << summary_json(cfg.plan, table, report).dump(2) << '\n';
    std::ofstream txt(dir / "comparison.txt");
    write_report_text(txt, report);
    if (!csv || !json || !txt) {
      err << "error: cannot write outputs under '" << f.out_dir << "'\n";
      return kUsage;
    }
  }
  write_summary_csv(out, table);
  out << '\n';
  write_report_text(out, report);

  if (!table.errors.empty()) {
    err << "error: " << table.errors.size() << " cell(s) failed:\n";
    for (const auto& e : table.errors) {
      err << "  " << to_string(e.key.optimizer) << '/' << e.key.function << '/' << e.key.population
          << " replicate " << e.replicate << ": " << e.message << '\n';
    }
    return kPartial;
  }
  return kOk;
}

int cmd_chaos_curve(const ChaosFlags& f, std::ostream& out, std::ostream& err) {
  RunConfiguration cfg;
  load_base_config(f.config, cfg);
  ChaosSchedule s = cfg.plan.cpso.schedule;
  if (f.alpha) s.steepness = *f.alpha;
  if (f.beta) s.midpoint = *f.beta;
  if (f.max_chaos) s.max_chaos = *f.max_chaos;
  if (f.points < 2) {
    err << "error: --points must be at least 2\n";
    return kUsage;
  }
  s.validate();

  std::ofstream file;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) {
      err << "error: cannot write '" << f.out << "'\n";
      return kUsage;
    }
  }
  std::ostream& sink = f.out.empty() ? out : file;
  sink << "progress,chaos,phase\n";
  for (std::size_t i = 0; i < f.points; ++i) {
    const double p = i + 1 == f.points ? 1.0 : static_cast<double>(i) / static_cast<double>(f.points - 1);
    sink << real17(p) << ',' << real17(s.chaos_at(p)) << ',' << to_string(s.phase_of(p)) << '\n';
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Crystallization PSO and SPSO-2011 benchmark tool", "cpso"};
  app.require_subcommand(1);

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Single optimization run");
  run_cmd->add_option("optimizer", run.optimizer, "cpso or pso2011")->required();
  run_cmd->add_option("function", run.function, "griewank, rosenbrock, rastrigin or parabola")->required();
  run_cmd->add_option("--seed", run.seed, "RNG seed");
  run_cmd->add_option("--population", run.population, "Swarm size");
  run_cmd->add_option("--iterations", run.iterations, "Iterations (evaluations per particle)");
  run_cmd->add_option("--config", run.config, "Config file");
  run_cmd->add_option("--trace", run.trace, "Write a per-iteration trace CSV here");
  run_cmd->add_flag("--json", run.json, "Print the result as JSON");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark grid");
  bench_cmd->add_option("--functions", bench.functions, "Comma-separated function names");
  bench_cmd->add_option("--populations", bench.populations, "Comma-separated, strictly increasing");
  bench_cmd->add_option("--optimizers", bench.optimizers, "Comma-separated: cpso,pso2011");
  bench_cmd->add_option("--replicates", bench.replicates, "Runs per cell");
  bench_cmd->add_option("--iterations", bench.iterations, "Iterations per run");
  bench_cmd->add_option("--seed", bench.seed, "Root seed");
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads");
  bench_cmd->add_option("--out-dir", bench.out_dir, "Directory for summary.csv, summary.json, comparison.txt");
  bench_cmd->add_option("--config", bench.config, "Config file");

  ChaosFlags chaos;
  auto* chaos_cmd = app.add_subcommand("chaos-curve", "Dump the chaos factor curve as CSV");
  chaos_cmd->add_option("--alpha", chaos.alpha, "Steepness");
  chaos_cmd->add_option("--beta", chaos.beta, "Midpoint in (0, 1)");
  chaos_cmd->add_option("--c-max", chaos.max_chaos, "Maximum chaos");
  chaos_cmd->add_option("--points", chaos.points, "Number of evenly spaced samples (>= 2)");
  chaos_cmd->add_option("--out", chaos.out, "Write CSV here instead of stdout");
  chaos_cmd->add_option("--config", chaos.config, "Config file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
    if (chaos_cmd->parsed()) return cmd_chaos_curve(chaos, out, err);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace cpso
