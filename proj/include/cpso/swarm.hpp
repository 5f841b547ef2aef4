#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpso {

using RealVector = std::vector<double>;

// Thrown on mismatched lengths or malformed inputs.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a computation yields NaN/Inf. Carries the offending particle
// index when one is known.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what,
                          std::optional<std::size_t> particle = std::nullopt)
      : std::runtime_error(what), particle_(particle) {}

  std::optional<std::size_t> particle() const noexcept { return particle_; }

 private:
  std::optional<std::size_t> particle_;
};

// Thrown when a caller passes a value outside an operation's domain.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool all_finite(std::span<const double> v) noexcept;

/// Axis-aligned search box. lower[j] < upper[j] for every j.
class Bounds {
 public:
  Bounds(RealVector lower, RealVector upper);

  /// The same [lo, hi] interval on each of `dimension` axes.
  static Bounds cube(std::size_t dimension, double lo, double hi);

  std::size_t dimension() const noexcept { return lower_.size(); }
  const RealVector& lower() const noexcept { return lower_; }
  const RealVector& upper() const noexcept { return upper_; }
  double width(std::size_t j) const { return upper_[j] - lower_[j]; }
  bool contains(std::span<const double> x) const;

 private:
  RealVector lower_;
  RealVector upper_;
};

/// Per-dimension step resolution; every component strictly positive.
class ScalingVector {
 public:
  explicit ScalingVector(RealVector e);

  /// e[j] = width(j) / divisor.
  static ScalingVector from_bounds(const Bounds& b, double divisor);

  std::size_t dimension() const noexcept { return e_.size(); }
  double operator[](std::size_t j) const { return e_[j]; }
  const RealVector& values() const noexcept { return e_; }

 private:
  RealVector e_;
};

struct Particle {
  RealVector position;
  RealVector velocity;
  RealVector personal_best;
  double personal_best_value = std::numeric_limits<double>::infinity();
};

struct SwarmState {
  std::vector<Particle> particles;
  RealVector global_best;
  double global_best_value = std::numeric_limits<double>::infinity();
  std::uint64_t iteration = 0;
  std::uint64_t evaluations = 0;

  /// n particles of dimension d, all at the origin with zero velocity and no
  /// recorded best.
  static SwarmState fresh(std::size_t n, std::size_t d);
  std::size_t dimension() const noexcept { return global_best.size(); }
};

/// Seeded random stream. The draw sequence is a pure function of the seed;
/// no implementation-defined standard distributions are used.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n) noexcept;
  /// +1.0 or -1.0 with equal probability.
  double sign() noexcept;
  /// Standard normal deviate (polar Box-Muller).
  double normal() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t state_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 finalizer; used for seed derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// X <- X + V. Velocity untouched.
void apply_position_update(Particle& p);

/// Clips x into b. Every clipped coordinate gets a zero velocity component.
/// Returns the number of clipped coordinates.
std::size_t clamp_to_bounds(RealVector& x, const Bounds& b, RealVector& v);

/// Records new objective values (values[i] belongs to particles[i].position).
/// Bests move only on strict improvement. Returns true iff the global best
/// moved.
bool update_bests(SwarmState& s, std::span<const double> values);

}  // namespace cpso
