#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "cpso/chaos.hpp"
#include "cpso/swarm.hpp"

namespace cpso {

struct TraceRow {
  std::uint64_t iteration = 0;
  std::optional<double> chaos;  // empty for optimizers without a schedule
  std::optional<Phase> phase;
  double global_best_value = 0.0;
};

struct RunResult {
  RealVector best_position;
  double best_value = 0.0;
  std::uint64_t evaluations = 0;
  std::vector<TraceRow> trace;  // filled only when requested
  bool placement_fallback = false;  // a space-filling placement failed and uniform was used
};

/// Header "iteration,chaos,phase,global_best_value"; missing chaos/phase
/// fields are left empty.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace cpso
