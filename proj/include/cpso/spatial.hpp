#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "cpso/swarm.hpp"

namespace cpso {

enum class PlacementMethod { UniformRandom, CVT, Repulsive };

std::string_view to_string(PlacementMethod m) noexcept;
/// Accepts "uniform", "cvt", "repulsive" (case sensitive). Throws StructuralError otherwise.
PlacementMethod placement_from_string(std::string_view name);

struct PlacementRequest {
  std::size_t count = 1;
  Bounds bounds = Bounds::cube(1, 0.0, 1.0);
  PlacementMethod method = PlacementMethod::CVT;
  std::size_t cvt_samples = 4096;
  std::size_t cvt_iterations = 25;
  std::size_t repulsion_steps = 50;

  /// count >= 1 and cvt_samples >= 10 * count.
  void validate() const;
};

/// Lloyd run diagnostics. energy[k] is the quantization energy (mean squared
/// sample-to-nearest-generator distance) after iteration k; energy[0] is the
/// initial configuration.
struct CvtResult {
  std::vector<RealVector> generators;
  std::vector<double> energy;
  std::vector<bool> reseeded;  // reseeded[k] is true if iteration k re-seeded an empty cluster
};

std::vector<RealVector> place_uniform(const PlacementRequest& req, RngStream& rng);

/// Sampled Lloyd iteration. The density samples are a Latin hypercube over
/// the bounds; generators start at distinct random samples.
CvtResult place_cvt_detailed(const PlacementRequest& req, RngStream& rng);
std::vector<RealVector> place_cvt(const PlacementRequest& req, RngStream& rng);

/// Uniform start, then repulsion_steps synchronous moves of every point
/// directly away from its nearest neighbour by 1% of the narrowest width.
std::vector<RealVector> place_repulsive(const PlacementRequest& req, RngStream& rng);

/// Dispatches on req.method.
std::vector<RealVector> place(const PlacementRequest& req, RngStream& rng);

/// Smallest Euclidean distance over all pairs; +inf for fewer than two points.
double min_pairwise_distance(const std::vector<RealVector>& points);

}  // namespace cpso
