#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cpso/swarm.hpp"

namespace cpso {

double parabola(std::span<const double> x);
/// Requires at least two coordinates; throws StructuralError otherwise.
double rosenbrock(std::span<const double> x);
double rastrigin(std::span<const double> x);
/// Product term uses 1-based sqrt(j).
double griewank(std::span<const double> x);

struct ObjectiveSpec {
  std::string name;
  Bounds bounds;
  RealVector known_minimum_position;
  double known_minimum_value = 0.0;
  std::function<double(std::span<const double>)> evaluator;

  std::size_t dimension() const noexcept { return bounds.dimension(); }
  bool multimodal() const noexcept { return name != "parabola"; }
};

/// Names accepted by make_objective, in table order.
const std::vector<std::string>& objective_names();

/// Builds one of the registered functions on its standard box in R^dimension.
/// Throws StructuralError for unknown names.
ObjectiveSpec make_objective(std::string_view name, std::size_t dimension = 3);

/// Same function on a caller-chosen box.
ObjectiveSpec make_objective(std::string_view name, Bounds bounds);

/// Evaluates and bumps s.evaluations by one. Throws NumericalError on a
/// non-finite result and StructuralError on a dimension mismatch.
double evaluate_counted(const ObjectiveSpec& spec, std::span<const double> x, SwarmState& s);

}  // namespace cpso
