#include "cpso/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace cpso {

namespace {

double squared_distance(const double* a, const double* b, std::size_t d) noexcept {
  double acc = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double diff = a[j] - b[j];
    acc += diff * diff;
  }
  return acc;
}

void shuffle(std::vector<std::size_t>& v, RngStream& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.index(i)]);
}

// Row-major samples x dimension, one stratum per sample on every axis.
std::vector<double> latin_hypercube(std::size_t samples, const Bounds& b, RngStream& rng) {
  const std::size_t d = b.dimension();
  std::vector<double> out(samples * d);
  std::vector<std::size_t> perm(samples);
  for (std::size_t j = 0; j < d; ++j) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    shuffle(perm, rng);
    const double w = b.width(j) / static_cast<double>(samples);
    for (std::size_t s = 0; s < samples; ++s) {
      out[s * d + j] = b.lower()[j] + (static_cast<double>(perm[s]) + rng.uniform()) * w;
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(PlacementMethod m) noexcept {
  switch (m) {
    case PlacementMethod::UniformRandom: return "uniform";
    case PlacementMethod::CVT: return "cvt";
    case PlacementMethod::Repulsive: return "repulsive";
  }
  return "?";
}

PlacementMethod placement_from_string(std::string_view name) {
  if (name == "uniform") return PlacementMethod::UniformRandom;
  if (name == "cvt") return PlacementMethod::CVT;
  if (name == "repulsive") return PlacementMethod::Repulsive;
  throw StructuralError("unknown placement method '" + std::string(name) + "'");
}

void PlacementRequest::validate() const {
  if (count < 1) throw ContractError("placement count must be >= 1");
  if (cvt_samples < 10 * count) throw ContractError("cvt_samples must be at least 10 * count");
  if (cvt_iterations < 1 || repulsion_steps < 1) throw ContractError("placement iteration counts must be >= 1");
}

std::vector<RealVector> place_uniform(const PlacementRequest& req, RngStream& rng) {
  req.validate();
  const std::size_t d = req.bounds.dimension();
  std::vector<RealVector> pts(req.count, RealVector(d));
  for (auto& p : pts) {
    for (std::size_t j = 0; j < d; ++j) p[j] = rng.uniform(req.bounds.lower()[j], req.bounds.upper()[j]);
  }
  return pts;
}

CvtResult place_cvt_detailed(const PlacementRequest& req, RngStream& rng) {
  req.validate();
  const std::size_t d = req.bounds.dimension();
  const std::size_t n = req.count;
  const std::size_t ns = req.cvt_samples;
  const std::vector<double> samples = latin_hypercube(ns, req.bounds, rng);

  std::vector<double> gen(n * d);
  {
    // Partial Fisher-Yates: n distinct starting samples.
    std::vector<std::size_t> idx(ns);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(idx[i], idx[i + rng.index(ns - i)]);
      std::copy_n(&samples[idx[i] * d], d, &gen[i * d]);
    }
  }

  CvtResult result;
  result.energy.reserve(req.cvt_iterations + 1);
  result.reseeded.reserve(req.cvt_iterations + 1);
  result.reseeded.push_back(false);

  std::vector<double> sums(n * d);
  std::vector<std::size_t> counts(n);

  // Assigns every sample to its nearest generator, accumulating cluster sums.
  // Returns the quantization energy of the current generators.
  auto assign = [&]() {
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), std::size_t{0});
    double energy = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
      const double* x = &samples[s * d];
      std::size_t nearest = 0;
      double best = squared_distance(x, &gen[0], d);
      for (std::size_t i = 1; i < n; ++i) {
        const double dist = squared_distance(x, &gen[i * d], d);
        if (dist < best) {
          best = dist;
          nearest = i;
        }
      }
      energy += best;
      ++counts[nearest];
      for (std::size_t j = 0; j < d; ++j) sums[nearest * d + j] += x[j];
    }
    return energy / static_cast<double>(ns);
  };

  for (std::size_t k = 0; k < req.cvt_iterations; ++k) {
    result.energy.push_back(assign());
    bool reseeded = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (counts[i] == 0) {
        std::copy_n(&samples[rng.index(ns) * d], d, &gen[i * d]);
        reseeded = true;
        continue;
      }
      const double inv = 1.0 / static_cast<double>(counts[i]);
      for (std::size_t j = 0; j < d; ++j) gen[i * d + j] = sums[i * d + j] * inv;
    }
    result.reseeded.push_back(reseeded);
  }
  result.energy.push_back(assign());

  result.generators.assign(n, RealVector(d));
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(&gen[i * d], d, result.generators[i].begin());
  }
  return result;
}

std::vector<RealVector> place_cvt(const PlacementRequest& req, RngStream& rng) {
  return place_cvt_detailed(req, rng).generators;
}

std::vector<RealVector> place_repulsive(const PlacementRequest& req, RngStream& rng) {
  std::vector<RealVector> pts = place_uniform(req, rng);
  const std::size_t n = pts.size();
  if (n < 2) return pts;
  const std::size_t d = req.bounds.dimension();

  double narrowest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d; ++j) narrowest = std::min(narrowest, req.bounds.width(j));
  const double delta = 0.01 * narrowest;

  std::vector<RealVector> next = pts;
  RealVector unused(d);
  for (std::size_t step = 0; step < req.repulsion_steps; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t nn = i;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        const double dist = squared_distance(pts[i].data(), pts[k].data(), d);
        if (dist < best) {
          best = dist;
          nn = k;
        }
      }
      RealVector& x = next[i];
      x = pts[i];
      if (best == 0.0) {
        for (std::size_t j = 0; j < d; ++j) x[j] += delta * rng.uniform();
        best = squared_distance(x.data(), pts[nn].data(), d);
        if (best == 0.0) continue;
      }
      const double scale = delta / std::sqrt(best);
      RealVector away(d);
      for (std::size_t j = 0; j < d; ++j) away[j] = x[j] - pts[nn][j];
      for (std::size_t j = 0; j < d; ++j) x[j] += scale * away[j];
      clamp_to_bounds(x, req.bounds, unused);
    }
    std::swap(pts, next);
  }
  return pts;
}

std::vector<RealVector> place(const PlacementRequest& req, RngStream& rng) {
  switch (req.method) {
    case PlacementMethod::UniformRandom: return place_uniform(req, rng);
    case PlacementMethod::CVT: return place_cvt(req, rng);
    case PlacementMethod::Repulsive: return place_repulsive(req, rng);
  }
  throw StructuralError("unknown placement method");
}

double min_pairwise_distance(const std::vector<RealVector>& points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      best = std::min(best, squared_distance(points[a].data(), points[b].data(), points[a].size()));
    }
  }
  return std::sqrt(best);
}

}  // namespace cpso
