#include "cpso/objectives.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace cpso {

double parabola(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc;
}

double rosenbrock(std::span<const double> x) {
  if (x.size() < 2) throw StructuralError("rosenbrock needs dimension >= 2");
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    const double a = x[j + 1] - x[j] * x[j];
    const double b = 1.0 - x[j];
    acc += 100.0 * a * a + b * b;
  }
  return acc;
}

double rastrigin(std::span<const double> x) {
  double acc = 10.0 * static_cast<double>(x.size());
  for (double v : x) acc += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  return acc;
}

double griewank(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sum += x[j] * x[j];
    prod *= std::cos(x[j] / std::sqrt(static_cast<double>(j + 1)));
  }
  return 1.0 + sum / 4000.0 - prod;
}

const std::vector<std::string>& objective_names() {
  static const std::vector<std::string> names{"griewank", "rosenbrock", "rastrigin", "parabola"};
  return names;
}

ObjectiveSpec make_objective(std::string_view name, Bounds bounds) {
  const std::size_t d = bounds.dimension();
  ObjectiveSpec spec{std::string(name), std::move(bounds), RealVector(d, 0.0), 0.0, {}};
  if (name == "griewank") {
    spec.evaluator = griewank;
  } else if (name == "rosenbrock") {
    if (d < 2) throw StructuralError("rosenbrock needs dimension >= 2");
    spec.evaluator = rosenbrock;
    spec.known_minimum_position.assign(d, 1.0);
  } else if (name == "rastrigin") {
    spec.evaluator = rastrigin;
  } else if (name == "parabola") {
    spec.evaluator = parabola;
  } else {
    throw StructuralError("unknown function '" + std::string(name) + "'");
  }
  return spec;
}

ObjectiveSpec make_objective(std::string_view name, std::size_t dimension) {
  double half = 0.0;
  if (name == "griewank") half = 600.0;
  else if (name == "rosenbrock") half = 30.0;
  else if (name == "rastrigin") half = 5.12;
  else if (name == "parabola") half = 100.0;
  else throw StructuralError("unknown function '" + std::string(name) + "'");
  return make_objective(name, Bounds::cube(dimension, -half, half));
}

double evaluate_counted(const ObjectiveSpec& spec, std::span<const double> x, SwarmState& s) {
  if (x.size() != spec.dimension()) {
    throw StructuralError(spec.name + ": expected dimension " + std::to_string(spec.dimension()) +
                          ", got " + std::to_string(x.size()));
  }
  const double value = spec.evaluator(x);
  ++s.evaluations;
  if (!std::isfinite(value)) throw NumericalError(spec.name + " returned a non-finite value");
  return value;
}

}  // namespace cpso
