#include "cpso/chaos.hpp"

#include <cmath>
#include <string>

#include "cpso/swarm.hpp"

namespace cpso {

// Abramowitz & Stegun 7.1.26.
double erfc(double x) noexcept {
  const double z = std::fabs(x);
  const double t = 1.0 / (1.0 + 0.3275911 * z);
  const double poly =
      t * (0.254829592 + t * (-0.284496736 + t * (1.421413741 + t * (-1.453152027 + t * 1.061405429))));
  const double tail = poly * std::exp(-z * z);
  return x >= 0.0 ? tail : 2.0 - tail;
}

std::string_view to_string(Phase p) noexcept {
  switch (p) {
    case Phase::Diffusion: return "Diffusion";
    case Phase::DirectedMotion: return "DirectedMotion";
    case Phase::Nucleation: return "Nucleation";
  }
  return "?";
}

void ChaosSchedule::validate() const {
  if (!(steepness > 0.0) || !std::isfinite(steepness)) throw ContractError("chaos steepness must be positive");
  if (!(midpoint > 0.0 && midpoint < 1.0)) throw ContractError("chaos midpoint must lie in (0, 1)");
  if (!(max_chaos > 0.0) || !std::isfinite(max_chaos)) throw ContractError("max chaos must be positive");
  if (!(nucleation_threshold > 0.0 && nucleation_threshold < 1.0) ||
      !(diffusion_threshold > 0.0 && diffusion_threshold < 1.0)) {
    throw ContractError("phase thresholds must lie in (0, 1)");
  }
  if (!(nucleation_threshold < diffusion_threshold)) {
    throw ContractError("nucleation threshold must be below diffusion threshold");
  }
}

double ChaosSchedule::chaos_at(double progress) const {
  if (!(progress >= 0.0 && progress <= 1.0)) {
    throw ContractError("chaos_at: progress " + std::to_string(progress) + " outside [0, 1]");
  }
  return max_chaos * erfc(steepness * (progress - midpoint)) / 2.0;
}

Phase ChaosSchedule::phase_of(double progress) const {
  const double c = chaos_at(progress);
  if (c >= diffusion_threshold * max_chaos) return Phase::Diffusion;
  if (c <= nucleation_threshold * max_chaos) return Phase::Nucleation;
  return Phase::DirectedMotion;
}

}  // namespace cpso
