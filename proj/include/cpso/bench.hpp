#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cpso/cpso_engine.hpp"
#include "cpso/objectives.hpp"
#include "cpso/pso2011.hpp"

namespace cpso {

enum class Optimizer { CPSO, PSO2011 };

std::string_view to_string(Optimizer o) noexcept;
/// "cpso" or "pso2011" (case insensitive). Throws StructuralError otherwise.
Optimizer optimizer_from_string(std::string_view name);

struct BenchmarkPlan {
  std::vector<std::string> functions{"griewank", "rosenbrock", "rastrigin", "parabola"};
  std::vector<std::size_t> populations{5, 10, 15, 20};
  std::size_t replicates = 30;
  std::size_t iterations = 1000;
  std::vector<Optimizer> optimizers{Optimizer::CPSO, Optimizer::PSO2011};
  std::uint64_t root_seed = 1;
  std::size_t dimension = 3;
  /// e[j] = (upper[j] - lower[j]) / e_divisor.
  double e_divisor = 1000.0;
  /// Replaces a function's standard box.
  std::map<std::string, Bounds> domains;

  // Population, iteration count and seed in these are overwritten per run.
  CpsoSettings cpso;
  Pso2011Settings pso2011;

  /// Throws ContractError: populations strictly increasing and >= 1,
  /// replicates >= 2, known names only.
  void validate() const;
  ObjectiveSpec objective(const std::string& function) const;
};

struct CellKey {
  Optimizer optimizer = Optimizer::CPSO;
  std::string function;
  std::size_t population = 0;

  auto operator<=>(const CellKey&) const = default;
};

struct CellSummary {
  CellKey key;
  double mean = 0.0;
  double sd = 0.0;
  double best = 0.0;
  double worst = 0.0;
  std::vector<double> replicate_values;
};

struct CellError {
  CellKey key;
  std::size_t replicate = 0;
  std::string message;
};

class CellFailure : public std::runtime_error {
 public:
  CellFailure(CellKey key, std::size_t replicate, const std::string& message);
  const CellKey& key() const noexcept { return key_; }
  std::size_t replicate() const noexcept { return replicate_; }

 private:
  CellKey key_;
  std::size_t replicate_;
};

struct SummaryTable {
  std::vector<CellSummary> cells;  // plan order: optimizer, function, population
  std::vector<CellError> errors;

  const CellSummary* find(const CellKey& key) const;
};

struct Moments {
  double mean = 0.0;
  double sd = 0.0;  // divisor n - 1; zero for a single value
};

Moments sample_moments(const std::vector<double>& values);

/// Seed for one replicate of one cell. Pure function of its arguments.
std::uint64_t derive_seed(std::uint64_t root_seed, Optimizer optimizer, std::string_view function,
                          std::size_t population, std::size_t replicate);

/// Every cell of the plan in canonical order.
std::vector<CellKey> plan_cells(const BenchmarkPlan& plan);

/// Best value of a single replicate.
double run_replicate(const BenchmarkPlan& plan, const CellKey& key, std::size_t replicate);

/// Runs all replicates of one cell. Throws CellFailure naming the first
/// failing replicate.
CellSummary run_cell(const BenchmarkPlan& plan, Optimizer optimizer, const std::string& function,
                     std::size_t population);

/// Runs the given cells (any order) on up to `jobs` threads. The table is
/// sorted into canonical order, so results do not depend on the order of
/// `cells` or on `jobs`. Failed cells land in `errors`.
SummaryTable run_cells(const BenchmarkPlan& plan, const std::vector<CellKey>& cells, std::size_t jobs = 1);

SummaryTable run_plan(const BenchmarkPlan& plan, std::size_t jobs = 1);

// Built-in reference values: (mean, sd) per optimizer/function/population.
struct ReferenceCell {
  CellKey key;
  double mean;
  double sd;
};
const std::vector<ReferenceCell>& reference_table();
std::optional<ReferenceCell> reference_for(const CellKey& key);

struct DominanceEntry {
  std::string function;
  std::size_t population = 0;
  double cpso_mean = 0.0;
  double cpso_sd = 0.0;
  double pso2011_mean = 0.0;
  double pso2011_sd = 0.0;
  bool cpso_mean_lower = false;
  bool cpso_sd_lower = false;
};

struct ReferenceRatio {
  CellKey key;
  double reproduced_mean = 0.0;
  double reference_mean = 0.0;
  double log10_ratio = 0.0;  // log10(reproduced / reference)
};

struct ComparisonReport {
  std::vector<DominanceEntry> multimodal;
  std::vector<DominanceEntry> unimodal;
  std::vector<ReferenceRatio> ratios;
  std::vector<std::string> gaps;

  std::size_t cpso_mean_wins() const;
  /// CPSO has the lower mean and sd on every multimodal comparison; false
  /// when there are none.
  bool multimodal_dominance() const;
};

ComparisonReport compare_to_reference(const SummaryTable& table);

/// Columns: optimizer,function,population,mean,sd,best,worst
void write_summary_csv(std::ostream& out, const SummaryTable& table);
nlohmann::json summary_json(const BenchmarkPlan& plan, const SummaryTable& table, const ComparisonReport& report);
void write_report_text(std::ostream& out, const ComparisonReport& report);

}  // namespace cpso
