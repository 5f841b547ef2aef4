#include "cpso/pso2011.hpp"

#include <string>

namespace cpso {

namespace {

void evaluate_all(SwarmState& s, const ObjectiveSpec& objective, std::vector<double>& values) {
  values.resize(s.particles.size());
  for (std::size_t i = 0; i < s.particles.size(); ++i) {
    try {
      values[i] = evaluate_counted(objective, s.particles[i].position, s);
    } catch (const NumericalError& err) {
      throw NumericalError(std::string(err.what()) + " (particle " + std::to_string(i) + ")", i);
    }
  }
}

}  // namespace

void Pso2011Config::validate() const {
  if (!(inertia >= 0.0 && inertia < 1.0)) throw ContractError("PSO2011: inertia must lie in [0, 1)");
  if (!(acceleration >= 0.0) || !std::isfinite(acceleration)) throw ContractError("PSO2011: acceleration must be >= 0");
  if (population < 1) throw ContractError("PSO2011: population must be >= 1");
  if (max_iterations < 1) throw ContractError("PSO2011: max_iterations must be >= 1");
  if (neighbors < 1) throw ContractError("PSO2011: neighbors must be >= 1");
}

Topology rebuild_topology(std::size_t n, std::size_t k, RngStream& rng) {
  Topology informs(n);
  for (std::size_t j = 0; j < n; ++j) {
    informs[j].push_back(j);
    if (n == 1) continue;
    for (std::size_t m = 0; m < k; ++m) informs[j].push_back(rng.index(n));
  }
  return informs;
}

std::vector<std::size_t> best_informants(const SwarmState& s, const Topology& informs) {
  const std::size_t n = s.particles.size();
  std::vector<std::size_t> best(n);
  for (std::size_t i = 0; i < n; ++i) best[i] = i;
  for (std::size_t j = 0; j < n; ++j) {
    const double vj = s.particles[j].personal_best_value;
    for (std::size_t i : informs[j]) {
      const std::size_t cur = best[i];
      const double vc = s.particles[cur].personal_best_value;
      if (vj < vc || (vj == vc && j < cur)) best[i] = j;
    }
  }
  return best;
}

RealVector sample_in_hypersphere(std::span<const double> center, double radius, RngStream& rng) {
  if (!(radius >= 0.0)) throw ContractError("sample_in_hypersphere: negative radius");
  const std::size_t d = center.size();
  RealVector dir(d);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& c : dir) {
      c = rng.normal();
      norm2 += c * c;
    }
  } while (norm2 == 0.0);
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  const double scale = r / std::sqrt(norm2);
  RealVector out(center.begin(), center.end());
  if (radius == 0.0) return out;
  for (std::size_t j = 0; j < d; ++j) out[j] += scale * dir[j];
  return out;
}

void pso2011_initialize(SwarmState& s, const Pso2011Config& cfg, RngStream& rng) {
  const auto& lo = cfg.bounds.lower();
  const auto& hi = cfg.bounds.upper();
  for (auto& p : s.particles) {
    for (std::size_t j = 0; j < p.position.size(); ++j) {
      p.position[j] = rng.uniform(lo[j], hi[j]);
      p.velocity[j] = rng.uniform(lo[j] - p.position[j], hi[j] - p.position[j]);
    }
  }
}

void pso2011_move(SwarmState& s, const Topology& informs, const Pso2011Config& cfg, RngStream& rng) {
  const std::vector<std::size_t> local = best_informants(s, informs);
  const std::size_t d = s.dimension();
  RealVector gravity(d);
  for (std::size_t i = 0; i < s.particles.size(); ++i) {
    Particle& p = s.particles[i];
    const RealVector& x = p.position;
    const RealVector& pb = p.personal_best;
    if (local[i] == i) {
      for (std::size_t j = 0; j < d; ++j) gravity[j] = x[j] + cfg.acceleration * (pb[j] - x[j]) / 2.0;
    } else {
      const RealVector& lb = s.particles[local[i]].personal_best;
      for (std::size_t j = 0; j < d; ++j) {
        gravity[j] = x[j] + cfg.acceleration * (pb[j] + lb[j] - 2.0 * x[j]) / 3.0;
      }
    }
    double r2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) r2 += (gravity[j] - x[j]) * (gravity[j] - x[j]);
    const RealVector target = sample_in_hypersphere(gravity, std::sqrt(r2), rng);
    for (std::size_t j = 0; j < d; ++j) p.velocity[j] = cfg.inertia * p.velocity[j] + target[j] - x[j];
    apply_position_update(p);
    clamp_to_bounds(p.position, cfg.bounds, p.velocity);
  }
}

void pso2011_step(SwarmState& s, Topology& informs, const ObjectiveSpec& objective,
                  const Pso2011Config& cfg, RngStream& rng) {
  pso2011_move(s, informs, cfg, rng);
  std::vector<double> values;
  evaluate_all(s, objective, values);
  const bool improved = update_bests(s, values);
  ++s.iteration;
  if (!improved) informs = rebuild_topology(s.particles.size(), cfg.neighbors, rng);
}

RunResult run_pso2011(const ObjectiveSpec& objective, const Pso2011Config& cfg) {
  cfg.validate();
  if (objective.dimension() != cfg.bounds.dimension()) {
    throw StructuralError("run_pso2011: objective and config differ in dimension");
  }
  RngStream rng(cfg.seed);
  SwarmState s = SwarmState::fresh(cfg.population, cfg.bounds.dimension());
  RunResult result;

  pso2011_initialize(s, cfg, rng);
  std::vector<double> values;
  evaluate_all(s, objective, values);
  update_bests(s, values);
  ++s.iteration;
  Topology informs = rebuild_topology(cfg.population, cfg.neighbors, rng);
  if (cfg.record_trace) result.trace.push_back({0, std::nullopt, std::nullopt, s.global_best_value});

  for (std::uint64_t t = 1; t < cfg.max_iterations; ++t) {
    pso2011_step(s, informs, objective, cfg, rng);
    if (cfg.record_trace) result.trace.push_back({t, std::nullopt, std::nullopt, s.global_best_value});
  }

  result.best_position = s.global_best;
  result.best_value = s.global_best_value;
  result.evaluations = s.evaluations;
  return result;
}

}  // namespace cpso
