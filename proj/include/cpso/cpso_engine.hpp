#pragma once

#include <cstdint>

#include "cpso/chaos.hpp"
#include "cpso/objectives.hpp"
#include "cpso/run_result.hpp"
#include "cpso/spatial.hpp"
#include "cpso/swarm.hpp"

namespace cpso {

/// Everything about a CPSO run except the problem geometry.
struct CpsoSettings {
  double c2 = 1.0;
  double mute_multiplier = 2.0;
  ChaosSchedule schedule;
  std::size_t population = 20;
  std::size_t max_iterations = 1000;
  std::uint64_t seed = 0;

  PlacementMethod diffusion_placement = PlacementMethod::CVT;
  /// If false, particles are placed once at the start of the diffusion phase
  /// and move by the velocity rule afterwards.
  bool relocate_every_diffusion_iteration = true;
  // Lloyd settings for diffusion placement. Lighter than the general
  // placement defaults since a fresh tessellation is built every diffusion
  // iteration.
  std::size_t cvt_samples = 512;
  std::size_t cvt_iterations = 10;
  std::size_t repulsion_steps = 50;

  bool record_trace = false;
};

struct CpsoConfig : CpsoSettings {
  CpsoConfig(Bounds bounds, ScalingVector e, const CpsoSettings& settings = {});

  /// Bounds from the objective; e = width / e_divisor on every axis.
  static CpsoConfig for_objective(const ObjectiveSpec& objective, double e_divisor = 1000.0,
                                  const CpsoSettings& settings = {});

  Bounds bounds;
  ScalingVector e;

  /// Throws ContractError / StructuralError on an inconsistent config.
  void validate() const;
};

/// Component j is sign_j * c2 * u_j * e[j], drawing (sign_j, u_j) per axis.
RealVector random_step(const CpsoConfig& cfg, RngStream& rng);

/// True iff |x[j] - g[j]| <= m * e[j] on every axis.
bool is_muted(std::span<const double> x, std::span<const double> g, const ScalingVector& e, double m);

/// chaos * random_step + (1 - chaos / c_max) * attraction, with
/// attraction[j] = c2 * u'_j * (g[j] - x[j]) dropped for muted particles.
/// Draws are the same whether or not the particle is muted. Only the
/// particle's position is read.
RealVector cpso_velocity(std::span<const double> position, std::span<const double> global_best,
                         double chaos, const CpsoConfig& cfg, RngStream& rng);

/// Re-places all particles with cfg.diffusion_placement and zeroes their
/// velocities. Bests are left for the caller to update after evaluation.
/// Returns false if the space-filling placement failed and uniform placement
/// was substituted.
bool diffusion_relocate(SwarmState& s, const CpsoConfig& cfg, RngStream& rng);

RunResult run_cpso(const ObjectiveSpec& objective, const CpsoConfig& cfg);

}  // namespace cpso
