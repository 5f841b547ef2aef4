#include "cpso/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <set>
#include <thread>

namespace cpso {

namespace {

std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

std::string describe(const CellKey& k) {
  return std::string(to_string(k.optimizer)) + "/" + k.function + "/" + std::to_string(k.population);
}

}  // namespace

std::string_view to_string(Optimizer o) noexcept {
  return o == Optimizer::CPSO ? "CPSO" : "PSO2011";
}

Optimizer optimizer_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "cpso") return Optimizer::CPSO;
  if (lower == "pso2011") return Optimizer::PSO2011;
  throw StructuralError("unknown optimizer '" + std::string(name) + "'");
}

void BenchmarkPlan::validate() const {
  if (populations.empty()) throw ContractError("plan: no populations");
  for (std::size_t i = 0; i < populations.size(); ++i) {
    if (populations[i] < 1) throw ContractError("plan: populations must be >= 1");
    if (i > 0 && populations[i] <= populations[i - 1]) {
      throw ContractError("plan: populations must be strictly increasing");
    }
  }
  if (replicates < 2) throw ContractError("plan: replicates must be >= 2");
  if (iterations < 1) throw ContractError("plan: iterations must be >= 1");
  if (optimizers.empty() || functions.empty()) throw ContractError("plan: empty optimizer or function list");
  if (!(e_divisor > 0.0)) throw ContractError("plan: e divisor must be positive");
  const auto& known = objective_names();
  for (const auto& f : functions) {
    if (std::find(known.begin(), known.end(), f) == known.end()) {
      throw ContractError("plan: unknown function '" + f + "'");
    }
  }
}

ObjectiveSpec BenchmarkPlan::objective(const std::string& function) const {
  if (auto it = domains.find(function); it != domains.end()) return make_objective(function, it->second);
  return make_objective(function, dimension);
}

CellFailure::CellFailure(CellKey key, std::size_t replicate, const std::string& message)
    : std::runtime_error(describe(key) + " replicate " + std::to_string(replicate) + ": " + message),
      key_(std::move(key)),
      replicate_(replicate) {}

const CellSummary* SummaryTable::find(const CellKey& key) const {
  for (const auto& c : cells) {
    if (c.key == key) return &c;
  }
  return nullptr;
}

Moments sample_moments(const std::vector<double>& values) {
  Moments m;
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return m;
  double ss = 0.0;
  for (double v : values) ss += (v - m.mean) * (v - m.mean);
  m.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return m;
}

std::uint64_t derive_seed(std::uint64_t root_seed, Optimizer optimizer, std::string_view function,
                          std::size_t population, std::size_t replicate) {
  std::uint64_t h = mix64(root_seed);
  h = mix64(h ^ (optimizer == Optimizer::CPSO ? 0x43ULL : 0x50ULL));
  h = mix64(h ^ fnv1a(function));
  h = mix64(h ^ static_cast<std::uint64_t>(population));
  h = mix64(h ^ static_cast<std::uint64_t>(replicate));
  return h;
}

std::vector<CellKey> plan_cells(const BenchmarkPlan& plan) {
  std::vector<CellKey> cells;
  for (Optimizer o : plan.optimizers) {
    for (const auto& f : plan.functions) {
      for (std::size_t n : plan.populations) cells.push_back({o, f, n});
    }
  }
  return cells;
}

double run_replicate(const BenchmarkPlan& plan, const CellKey& key, std::size_t replicate) {
  const ObjectiveSpec objective = plan.objective(key.function);
  const std::uint64_t seed = derive_seed(plan.root_seed, key.optimizer, key.function, key.population, replicate);
  if (key.optimizer == Optimizer::CPSO) {
    CpsoConfig cfg = CpsoConfig::for_objective(objective, plan.e_divisor, plan.cpso);
    cfg.population = key.population;
    cfg.max_iterations = plan.iterations;
    cfg.seed = seed;
    cfg.record_trace = false;
    return run_cpso(objective, cfg).best_value;
  }
  Pso2011Config cfg = Pso2011Config::for_objective(objective, plan.pso2011);
  cfg.population = key.population;
  cfg.max_iterations = plan.iterations;
  cfg.seed = seed;
  cfg.record_trace = false;
  return run_pso2011(objective, cfg).best_value;
}

namespace {

CellSummary summarize(CellKey key, std::vector<double> values) {
  CellSummary s;
  s.key = std::move(key);
  const Moments m = sample_moments(values);
  s.mean = m.mean;
  s.sd = m.sd;
  s.best = *std::min_element(values.begin(), values.end());
  s.worst = *std::max_element(values.begin(), values.end());
  s.replicate_values = std::move(values);
  return s;
}

}  // namespace

CellSummary run_cell(const BenchmarkPlan& plan, Optimizer optimizer, const std::string& function,
                     std::size_t population) {
  plan.validate();
  CellKey key{optimizer, function, population};
  std::vector<double> values(plan.replicates);
  for (std::size_t r = 0; r < plan.replicates; ++r) {
    try {
      values[r] = run_replicate(plan, key, r);
    } catch (const std::exception& err) {
      throw CellFailure(key, r, err.what());
    }
  }
  return summarize(std::move(key), std::move(values));
}

SummaryTable run_cells(const BenchmarkPlan& plan, const std::vector<CellKey>& cells, std::size_t jobs) {
  plan.validate();
  std::vector<CellKey> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  // Canonical order follows the plan's lists, not the enum/string ordering.
  const std::vector<CellKey> canonical = plan_cells(plan);
  std::vector<CellKey> ordered;
  for (const auto& k : canonical) {
    if (std::binary_search(sorted.begin(), sorted.end(), k)) ordered.push_back(k);
  }
  for (const auto& k : sorted) {
    if (std::find(ordered.begin(), ordered.end(), k) == ordered.end()) ordered.push_back(k);
  }

  const std::size_t reps = plan.replicates;
  const std::size_t tasks = ordered.size() * reps;
  std::vector<double> values(tasks);
  std::vector<std::optional<std::string>> failures(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t t = next++; t < tasks; t = next++) {
      try {
        values[t] = run_replicate(plan, ordered[t / reps], t % reps);
      } catch (const std::exception& err) {
        failures[t] = err.what();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, tasks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SummaryTable table;
  for (std::size_t c = 0; c < ordered.size(); ++c) {
    std::optional<std::size_t> failed;
    for (std::size_t r = 0; r < reps && !failed; ++r) {
      if (failures[c * reps + r]) failed = r;
    }
    if (failed) {
      table.errors.push_back({ordered[c], *failed, *failures[c * reps + *failed]});
      continue;
    }
    std::vector<double> cell(values.begin() + static_cast<std::ptrdiff_t>(c * reps),
                             values.begin() + static_cast<std::ptrdiff_t>((c + 1) * reps));
    table.cells.push_back(summarize(ordered[c], std::move(cell)));
  }
  return table;
}

SummaryTable run_plan(const BenchmarkPlan& plan, std::size_t jobs) {
  return run_cells(plan, plan_cells(plan), jobs);
}

const std::vector<ReferenceCell>& reference_table() {
  using O = Optimizer;
  static const std::vector<ReferenceCell> table{
      {{O::CPSO, "griewank", 5}, 1.0e-04, 6.8e-05},     {{O::CPSO, "griewank", 10}, 4.7e-05, 3.5e-05},
      {{O::CPSO, "griewank", 15}, 4.5e-05, 3.0e-05},    {{O::CPSO, "griewank", 20}, 2.4e-05, 1.7e-05},
      {{O::PSO2011, "griewank", 5}, 0.30, 0.21},        {{O::PSO2011, "griewank", 10}, 0.15, 8.9e-02},
      {{O::PSO2011, "griewank", 15}, 0.16, 6.4e-02},    {{O::PSO2011, "griewank", 20}, 0.16, 5.0e-02},
      {{O::CPSO, "rosenbrock", 5}, 0.97, 0.81},         {{O::CPSO, "rosenbrock", 10}, 0.47, 0.67},
      {{O::CPSO, "rosenbrock", 15}, 0.42, 0.52},        {{O::CPSO, "rosenbrock", 20}, 0.13, 0.37},
      {{O::PSO2011, "rosenbrock", 5}, 3.1, 2.7},        {{O::PSO2011, "rosenbrock", 10}, 1.2, 1.7},
      {{O::PSO2011, "rosenbrock", 15}, 0.85, 1.5},      {{O::PSO2011, "rosenbrock", 20}, 0.57, 1.3},
      {{O::CPSO, "rastrigin", 5}, 7.7e-02, 3.9e-02},    {{O::CPSO, "rastrigin", 10}, 4.1e-02, 3.2e-02},
      {{O::CPSO, "rastrigin", 15}, 2.3e-02, 2.1e-02},   {{O::CPSO, "rastrigin", 20}, 1.6e-02, 1.2e-02},
      {{O::PSO2011, "rastrigin", 5}, 3.7, 3.0},         {{O::PSO2011, "rastrigin", 10}, 1.9, 1.1},
      {{O::PSO2011, "rastrigin", 15}, 1.8, 2.0},        {{O::PSO2011, "rastrigin", 20}, 1.6, 1.1},
      {{O::CPSO, "parabola", 5}, 3.8e-04, 1.8e-04},     {{O::CPSO, "parabola", 10}, 2.2e-04, 1.7e-04},
      {{O::CPSO, "parabola", 15}, 1.2e-04, 1.1e-04},    {{O::CPSO, "parabola", 20}, 6.9e-05, 6.8e-05},
      {{O::PSO2011, "parabola", 5}, 1.4e-06, 7.5e-06},  {{O::PSO2011, "parabola", 10}, 6.5e-09, 2.9e-09},
      {{O::PSO2011, "parabola", 15}, 5.6e-09, 2.8e-09}, {{O::PSO2011, "parabola", 20}, 5.2e-09, 3.1e-09},
  };
  return table;
}

std::optional<ReferenceCell> reference_for(const CellKey& key) {
  for (const auto& r : reference_table()) {
    if (r.key == key) return r;
  }
  return std::nullopt;
}

std::size_t ComparisonReport::cpso_mean_wins() const {
  return static_cast<std::size_t>(
      std::count_if(multimodal.begin(), multimodal.end(), [](const DominanceEntry& e) { return e.cpso_mean_lower; }));
}

bool ComparisonReport::multimodal_dominance() const {
  return !multimodal.empty() && std::all_of(multimodal.begin(), multimodal.end(), [](const DominanceEntry& e) {
    return e.cpso_mean_lower && e.cpso_sd_lower;
  });
}

ComparisonReport compare_to_reference(const SummaryTable& table) {
  ComparisonReport report;
  std::set<std::pair<std::string, std::size_t>> seen;
  std::vector<std::pair<std::string, std::size_t>> order;
  for (const auto& c : table.cells) {
    if (seen.insert({c.key.function, c.key.population}).second) order.emplace_back(c.key.function, c.key.population);
    if (auto ref = reference_for(c.key)) {
      const double ratio = c.mean > 0.0 && ref->mean > 0.0 ? std::log10(c.mean / ref->mean)
                                                           : -std::numeric_limits<double>::infinity();
      report.ratios.push_back({c.key, c.mean, ref->mean, ratio});
    }
  }
  for (const auto& [function, population] : order) {
    const CellSummary* a = table.find({Optimizer::CPSO, function, population});
    const CellSummary* b = table.find({Optimizer::PSO2011, function, population});
    if (!a || !b) {
      report.gaps.push_back(function + "/" + std::to_string(population) + ": missing " +
                            (a ? "PSO2011" : "CPSO") + " cell");
      continue;
    }
    DominanceEntry e{function, population, a->mean, a->sd, b->mean, b->sd, a->mean < b->mean, a->sd < b->sd};
    (function == "parabola" ? report.unimodal : report.multimodal).push_back(e);
  }
  for (const auto& err : table.errors) {
    report.gaps.push_back(describe(err.key) + ": failed at replicate " + std::to_string(err.replicate));
  }
  return report;
}

void write_summary_csv(std::ostream& out, const SummaryTable& table) {
  out << "optimizer,function,population,mean,sd,best,worst\n";
  for (const auto& c : table.cells) {
    out << to_string(c.key.optimizer) << ',' << c.key.function << ',' << c.key.population << ','
        << fmt_real(c.mean) << ',' << fmt_real(c.sd) << ',' << fmt_real(c.best) << ',' << fmt_real(c.worst) << '\n';
  }
}

nlohmann::json summary_json(const BenchmarkPlan& plan, const SummaryTable& table, const ComparisonReport& report) {
  using nlohmann::json;
  json doc;
  json p;
  p["functions"] = plan.functions;
  p["populations"] = plan.populations;
  p["replicates"] = plan.replicates;
  p["iterations"] = plan.iterations;
  json opts = json::array();
  for (Optimizer o : plan.optimizers) opts.push_back(std::string(to_string(o)));
  p["optimizers"] = opts;
  p["root_seed"] = plan.root_seed;
  p["dimension"] = plan.dimension;
  p["e_divisor"] = plan.e_divisor;
  doc["plan"] = p;

  json cells = json::array();
  for (const auto& c : table.cells) {
    cells.push_back({{"optimizer", std::string(to_string(c.key.optimizer))},
                     {"function", c.key.function},
                     {"population", c.key.population},
                     {"mean", c.mean},
                     {"sd", c.sd},
                     {"best", c.best},
                     {"worst", c.worst},
                     {"replicate_values", c.replicate_values}});
  }
  doc["cells"] = cells;

  json errors = json::array();
  for (const auto& e : table.errors) {
    errors.push_back({{"optimizer", std::string(to_string(e.key.optimizer))},
                      {"function", e.key.function},
                      {"population", e.key.population},
                      {"replicate", e.replicate},
                      {"message", e.message}});
  }
  doc["errors"] = errors;

  auto entries = [](const std::vector<DominanceEntry>& v) {
    json arr = json::array();
    for (const auto& e : v) {
      arr.push_back({{"function", e.function},
                     {"population", e.population},
                     {"cpso_mean", e.cpso_mean},
                     {"cpso_sd", e.cpso_sd},
                     {"pso2011_mean", e.pso2011_mean},
                     {"pso2011_sd", e.pso2011_sd},
                     {"cpso_mean_lower", e.cpso_mean_lower},
                     {"cpso_sd_lower", e.cpso_sd_lower}});
    }
    return arr;
  };
  json cmp;
  cmp["multimodal"] = entries(report.multimodal);
  cmp["unimodal"] = entries(report.unimodal);
  cmp["multimodal_dominance"] = report.multimodal_dominance();
  cmp["cpso_mean_wins"] = report.cpso_mean_wins();
  json ratios = json::array();
  for (const auto& r : report.ratios) {
    ratios.push_back({{"optimizer", std::string(to_string(r.key.optimizer))},
                      {"function", r.key.function},
                      {"population", r.key.population},
                      {"reproduced_mean", r.reproduced_mean},
                      {"reference_mean", r.reference_mean},
                      {"log10_ratio", std::isfinite(r.log10_ratio) ? json(r.log10_ratio) : json(nullptr)}});
  }
  cmp["reference_ratios"] = ratios;
  cmp["gaps"] = report.gaps;
  doc["comparison"] = cmp;
  return doc;
}

void write_report_text(std::ostream& out, const ComparisonReport& report) {
  out << "multimodal cells: " << report.multimodal.size() << ", CPSO lower mean in " << report.cpso_mean_wins()
      << ", dominance (mean and sd everywhere): " << (report.multimodal_dominance() ? "yes" : "no") << '\n';
  auto dump = [&](const std::vector<DominanceEntry>& v) {
    for (const auto& e : v) {
      out << "  " << e.function << " n=" << e.population << "  CPSO " << fmt_real(e.cpso_mean) << " +/- "
          << fmt_real(e.cpso_sd) << "  PSO2011 " << fmt_real(e.pso2011_mean) << " +/- " << fmt_real(e.pso2011_sd)
          << "  mean:" << (e.cpso_mean_lower ? "CPSO" : "PSO2011") << " sd:" << (e.cpso_sd_lower ? "CPSO" : "PSO2011")
          << '\n';
    }
  };
  dump(report.multimodal);
  out << "unimodal cells: " << report.unimodal.size() << '\n';
  dump(report.unimodal);
  out << "log10(reproduced / reference mean):\n";
  for (const auto& r : report.ratios) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+.2f", r.log10_ratio);
    out << "  " << describe(r.key) << "  " << buf << '\n';
  }
  if (!report.gaps.empty()) {
    out << "gaps:\n";
    for (const auto& g : report.gaps) out << "  " << g << '\n';
  }
}

}  // namespace cpso
