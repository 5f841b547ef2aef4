#include "cpso/swarm.hpp"

#include <algorithm>
#include <cmath>

namespace cpso {

namespace {

std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw StructuralError(std::string(what) + ": length mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

bool all_finite(std::span<const double> v) noexcept {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

Bounds::Bounds(RealVector lower, RealVector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw StructuralError("Bounds: dimension must be >= 1");
  require_same_length(lower_.size(), upper_.size(), "Bounds");
  if (!all_finite(lower_) || !all_finite(upper_)) throw StructuralError("Bounds: non-finite limit");
  for (std::size_t j = 0; j < lower_.size(); ++j) {
    if (!(lower_[j] < upper_[j])) {
      throw StructuralError("Bounds: lower >= upper on axis " + std::to_string(j));
    }
  }
}

Bounds Bounds::cube(std::size_t dimension, double lo, double hi) {
  return Bounds(RealVector(dimension, lo), RealVector(dimension, hi));
}

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < lower_[j] || x[j] > upper_[j]) return false;
  }
  return true;
}

ScalingVector::ScalingVector(RealVector e) : e_(std::move(e)) {
  if (e_.empty()) throw StructuralError("ScalingVector: dimension must be >= 1");
  for (std::size_t j = 0; j < e_.size(); ++j) {
    if (!(e_[j] > 0.0) || !std::isfinite(e_[j])) {
      throw StructuralError("ScalingVector: e[" + std::to_string(j) + "] must be positive and finite");
    }
  }
}

ScalingVector ScalingVector::from_bounds(const Bounds& b, double divisor) {
  if (!(divisor > 0.0)) throw StructuralError("ScalingVector: divisor must be positive");
  RealVector e(b.dimension());
  for (std::size_t j = 0; j < e.size(); ++j) e[j] = b.width(j) / divisor;
  return ScalingVector(std::move(e));
}

SwarmState SwarmState::fresh(std::size_t n, std::size_t d) {
  if (d == 0) throw StructuralError("SwarmState: dimension must be >= 1");
  SwarmState s;
  s.particles.resize(n);
  for (auto& p : s.particles) {
    p.position.assign(d, 0.0);
    p.velocity.assign(d, 0.0);
    p.personal_best.assign(d, 0.0);
  }
  s.global_best.assign(d, 0.0);
  return s;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
  std::uint64_t s = seed;
  for (auto& word : state_) {
    word = mix64(s);
    s += 0x9e3779b97f4a7c15ULL;
  }
}

// xoshiro256**
std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::index(std::size_t n) noexcept {
  // Rejection on the low residues keeps the draw exactly uniform.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t r = next_u64();
  while (r < threshold) r = next_u64();
  return static_cast<std::size_t>(r % bound);
}

double RngStream::sign() noexcept { return (next_u64() >> 63) ? 1.0 : -1.0; }

double RngStream::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

void apply_position_update(Particle& p) {
  require_same_length(p.position.size(), p.velocity.size(), "apply_position_update");
  if (!all_finite(p.position) || !all_finite(p.velocity)) {
    throw NumericalError("apply_position_update: non-finite input");
  }
  for (std::size_t j = 0; j < p.position.size(); ++j) p.position[j] += p.velocity[j];
  if (!all_finite(p.position)) throw NumericalError("apply_position_update: non-finite result");
}

std::size_t clamp_to_bounds(RealVector& x, const Bounds& b, RealVector& v) {
  require_same_length(x.size(), b.dimension(), "clamp_to_bounds");
  require_same_length(v.size(), b.dimension(), "clamp_to_bounds");
  std::size_t clipped = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < b.lower()[j]) {
      x[j] = b.lower()[j];
      v[j] = 0.0;
      ++clipped;
    } else if (x[j] > b.upper()[j]) {
      x[j] = b.upper()[j];
      v[j] = 0.0;
      ++clipped;
    }
  }
  return clipped;
}

bool update_bests(SwarmState& s, std::span<const double> values) {
  require_same_length(values.size(), s.particles.size(), "update_bests");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) {
      throw NumericalError("objective returned NaN for particle " + std::to_string(i), i);
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    Particle& p = s.particles[i];
    if (values[i] < p.personal_best_value) {
      p.personal_best = p.position;
      p.personal_best_value = values[i];
    }
  }
  std::size_t best = s.particles.size();
  double best_value = s.global_best_value;
  for (std::size_t i = 0; i < s.particles.size(); ++i) {
    if (s.particles[i].personal_best_value < best_value) {
      best = i;
      best_value = s.particles[i].personal_best_value;
    }
  }
  if (best == s.particles.size()) return false;
  s.global_best = s.particles[best].personal_best;
  s.global_best_value = best_value;
  return true;
}

}  // namespace cpso
