#include "cpso/cpso_engine.hpp"

#include <cmath>
#include <string>

namespace cpso {

CpsoConfig::CpsoConfig(Bounds b, ScalingVector scale, const CpsoSettings& settings)
    : CpsoSettings(settings), bounds(std::move(b)), e(std::move(scale)) {}

CpsoConfig CpsoConfig::for_objective(const ObjectiveSpec& objective, double e_divisor,
                                     const CpsoSettings& settings) {
  return CpsoConfig(objective.bounds, ScalingVector::from_bounds(objective.bounds, e_divisor), settings);
}

void CpsoConfig::validate() const {
  if (e.dimension() != bounds.dimension()) throw StructuralError("CPSO: e and bounds differ in dimension");
  if (!(c2 >= 0.0) || !std::isfinite(c2)) throw ContractError("CPSO: c2 must be non-negative");
  if (!(mute_multiplier > 0.0)) throw ContractError("CPSO: mute multiplier must be positive");
  for (std::size_t j = 0; j < bounds.dimension(); ++j) {
    if (!(mute_multiplier * e[j] < bounds.width(j))) {
      throw ContractError("CPSO: mute box exceeds the domain on axis " + std::to_string(j));
    }
  }
  if (population < 1) throw ContractError("CPSO: population must be >= 1");
  if (max_iterations < 1) throw ContractError("CPSO: max_iterations must be >= 1");
  schedule.validate();
  if (diffusion_placement == PlacementMethod::CVT && cvt_samples < 10 * population) {
    throw ContractError("CPSO: cvt_samples must be at least 10 * population");
  }
}

RealVector random_step(const CpsoConfig& cfg, RngStream& rng) {
  const std::size_t d = cfg.e.dimension();
  RealVector step(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double s = rng.sign();
    step[j] = s * cfg.c2 * rng.uniform() * cfg.e[j];
  }
  return step;
}

bool is_muted(std::span<const double> x, std::span<const double> g, const ScalingVector& e, double m) {
  if (x.size() != g.size() || x.size() != e.dimension()) throw StructuralError("is_muted: dimension mismatch");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(std::fabs(x[j] - g[j]) <= m * e[j])) return false;
  }
  return true;
}

RealVector cpso_velocity(std::span<const double> position, std::span<const double> global_best,
                         double chaos, const CpsoConfig& cfg, RngStream& rng) {
  const double c_max = cfg.schedule.max_chaos;
  if (!(chaos >= 0.0 && chaos <= c_max)) throw ContractError("cpso_velocity: chaos outside [0, c_max]");
  const std::size_t d = position.size();
  RealVector v = random_step(cfg, rng);
  for (double& c : v) c *= chaos;

  RealVector pull(d);
  for (std::size_t j = 0; j < d; ++j) pull[j] = rng.uniform();
  if (is_muted(position, global_best, cfg.e, cfg.mute_multiplier)) return v;

  const double weight = 1.0 - chaos / c_max;
  for (std::size_t j = 0; j < d; ++j) v[j] += weight * cfg.c2 * pull[j] * (global_best[j] - position[j]);
  return v;
}

bool diffusion_relocate(SwarmState& s, const CpsoConfig& cfg, RngStream& rng) {
  PlacementRequest req{s.particles.size(), cfg.bounds, cfg.diffusion_placement,
                       cfg.cvt_samples,    cfg.cvt_iterations, cfg.repulsion_steps};
  std::vector<RealVector> pts = place(req, rng);
  bool ok = pts.size() == s.particles.size();
  for (const auto& p : pts) ok = ok && all_finite(p) && cfg.bounds.contains(p);
  if (!ok) {
    req.method = PlacementMethod::UniformRandom;
    pts = place_uniform(req, rng);
  }
  for (std::size_t i = 0; i < s.particles.size(); ++i) {
    s.particles[i].position = std::move(pts[i]);
    s.particles[i].velocity.assign(s.dimension(), 0.0);
  }
  return ok;
}

RunResult run_cpso(const ObjectiveSpec& objective, const CpsoConfig& cfg) {
  cfg.validate();
  if (objective.dimension() != cfg.bounds.dimension()) {
    throw StructuralError("run_cpso: objective and config differ in dimension");
  }
  const std::size_t n = cfg.population;
  const std::size_t d = cfg.bounds.dimension();
  const double steps = static_cast<double>(cfg.max_iterations);

  RngStream rng(cfg.seed);
  SwarmState s = SwarmState::fresh(n, d);
  RunResult result;
  std::vector<double> values(n);
  bool placed_this_phase = false;

  for (std::uint64_t t = 0; t < cfg.max_iterations; ++t) {
    const double progress = static_cast<double>(t) / steps;
    const double chaos = cfg.schedule.chaos_at(progress);
    const Phase phase = cfg.schedule.phase_of(progress);

    const bool relocate =
        t == 0 || (phase == Phase::Diffusion && (cfg.relocate_every_diffusion_iteration || !placed_this_phase));
    if (relocate) {
      if (!diffusion_relocate(s, cfg, rng)) result.placement_fallback = true;
      placed_this_phase = true;
    } else {
      for (auto& p : s.particles) {
        p.velocity = cpso_velocity(p.position, s.global_best, chaos, cfg, rng);
        apply_position_update(p);
        clamp_to_bounds(p.position, cfg.bounds, p.velocity);
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      try {
        values[i] = evaluate_counted(objective, s.particles[i].position, s);
      } catch (const NumericalError& err) {
        throw NumericalError(std::string(err.what()) + " (particle " + std::to_string(i) + ")", i);
      }
    }
    update_bests(s, values);
    ++s.iteration;

    if (cfg.record_trace) result.trace.push_back({t, chaos, phase, s.global_best_value});
  }

  result.best_position = s.global_best;
  result.best_value = s.global_best_value;
  result.evaluations = s.evaluations;
  return result;
}

}  // namespace cpso
