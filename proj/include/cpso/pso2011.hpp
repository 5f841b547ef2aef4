#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "cpso/objectives.hpp"
#include "cpso/run_result.hpp"
#include "cpso/swarm.hpp"

namespace cpso {

struct Pso2011Settings {
  std::size_t population = 20;
  std::size_t max_iterations = 1000;
  double inertia = 1.0 / (2.0 * std::numbers::ln2);
  double acceleration = 0.5 + std::numbers::ln2;
  std::size_t neighbors = 3;
  std::uint64_t seed = 0;
  bool record_trace = false;
};

struct Pso2011Config : Pso2011Settings {
  explicit Pso2011Config(Bounds b, const Pso2011Settings& settings = {})
      : Pso2011Settings(settings), bounds(std::move(b)) {}
  static Pso2011Config for_objective(const ObjectiveSpec& objective, const Pso2011Settings& settings = {}) {
    return Pso2011Config(objective.bounds, settings);
  }

  Bounds bounds;

  /// 0 <= inertia < 1, acceleration >= 0, neighbors >= 1. The zero endpoints
  /// are accepted for degenerate stationary runs. Swarms smaller than
  /// `neighbors` still work: draws are with replacement.
  void validate() const;
};

/// informs[j] lists the particles j informs: j itself first, then K
/// uniform draws with replacement.
using Topology = std::vector<std::vector<std::size_t>>;

Topology rebuild_topology(std::size_t n, std::size_t k, RngStream& rng);

/// Index of the best informant of every particle (ties: lowest index).
std::vector<std::size_t> best_informants(const SwarmState& s, const Topology& informs);

/// Uniform point in the closed ball; Gaussian direction, radius * U^(1/d).
RealVector sample_in_hypersphere(std::span<const double> center, double radius, RngStream& rng);

/// Random positions in the box with velocities U(lo - x, hi - x).
void pso2011_initialize(SwarmState& s, const Pso2011Config& cfg, RngStream& rng);

/// Moves every particle once (positions only; no evaluation). Uses the
/// bests and topology as they stand at the start of the step.
void pso2011_move(SwarmState& s, const Topology& informs, const Pso2011Config& cfg, RngStream& rng);

/// One full iteration: move, evaluate, update bests, and rebuild the
/// topology if the global best did not improve.
void pso2011_step(SwarmState& s, Topology& informs, const ObjectiveSpec& objective,
                  const Pso2011Config& cfg, RngStream& rng);

RunResult run_pso2011(const ObjectiveSpec& objective, const Pso2011Config& cfg);

}  // namespace cpso
