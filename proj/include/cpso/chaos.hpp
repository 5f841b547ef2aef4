#pragma once

#include <string_view>

namespace cpso {

/// Complementary error function, rational approximation with absolute error
/// at most 1.5e-7 on the whole real line.
double erfc(double x) noexcept;

enum class Phase { Diffusion, DirectedMotion, Nucleation };

std::string_view to_string(Phase p) noexcept;

/// Chaos factor c(p) = c_max * erfc(steepness * (p - midpoint)) / 2 over
/// normalized progress p in [0, 1]. Phases are cut where the curve crosses
/// diffusion_threshold * c_max and nucleation_threshold * c_max.
struct ChaosSchedule {
  double steepness = 10.0;
  double midpoint = 0.5;
  double max_chaos = 1.0;
  double diffusion_threshold = 0.99;
  double nucleation_threshold = 0.01;

  /// Throws ContractError if any field is out of range.
  void validate() const;

  /// Throws ContractError when progress is outside [0, 1].
  double chaos_at(double progress) const;
  Phase phase_of(double progress) const;
};

}  // namespace cpso
