#include "cpso/run_result.hpp"

#include <cstdio>

namespace cpso {

namespace {

void put_real(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iteration,chaos,phase,global_best_value\n";
  for (const auto& row : trace) {
    out << row.iteration << ',';
    if (row.chaos) put_real(out, *row.chaos);
    out << ',';
    if (row.phase) out << to_string(*row.phase);
    out << ',';
    put_real(out, row.global_best_value);
    out << '\n';
  }
}

}  // namespace cpso
