#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cpso/objectives.hpp"

using namespace cpso;

TEST_CASE("closed-form values") {
  CHECK(parabola(RealVector{0, 0, 0}) == 0.0);
  CHECK(std::abs(parabola(RealVector{1, 2, 3}) - 14.0) <= 1e-12);
  CHECK(std::abs(parabola(RealVector{-1, -2, -3}) - 14.0) <= 1e-12);

  CHECK(rosenbrock(RealVector{1, 1, 1}) == 0.0);
  CHECK(std::abs(rosenbrock(RealVector{0, 0, 0}) - 2.0) <= 1e-12);
  CHECK(std::abs(rosenbrock(RealVector{1, 1, 0}) - 100.0) <= 1e-12);

  CHECK(std::abs(rastrigin(RealVector{0, 0, 0})) <= 1e-12);
  CHECK(std::abs(rastrigin(RealVector{1, 1, 1}) - 3.0) <= 1e-12);
  CHECK(std::abs(rastrigin(RealVector{0.5, 0, 0}) - 20.25) <= 1e-12);

  CHECK(std::abs(griewank(RealVector{0, 0, 0})) <= 1e-12);
  // 1 + 100^2 / 4000 - cos(100)
  CHECK(std::abs(griewank(RealVector{100, 0, 0}) - (3.5 - std::cos(100.0))) <= 1e-12);
  CHECK(std::abs(griewank(RealVector{100, 0, 0}) - 2.6376811277123161) <= 1e-12);
  // 1-based index: x_2 is divided by sqrt(2).
  CHECK(std::abs(griewank(RealVector{0, std::numbers::pi * std::sqrt(2.0)}) -
                 (1.0 + 2.0 * std::numbers::pi * std::numbers::pi / 4000.0 + 1.0)) <= 1e-12);
}

TEST_CASE("rosenbrock needs two coordinates") {
  CHECK_THROWS_AS(rosenbrock(RealVector{1}), StructuralError);
  CHECK_THROWS_AS(make_objective("rosenbrock", 1), StructuralError);
}

TEST_CASE("registry: names, standard boxes, known minima") {
  CHECK(objective_names() == std::vector<std::string>{"griewank", "rosenbrock", "rastrigin", "parabola"});
  CHECK(make_objective("griewank").bounds.upper()[0] == 600.0);
  CHECK(make_objective("rosenbrock").bounds.lower()[2] == -30.0);
  CHECK(make_objective("rastrigin").bounds.upper()[1] == 5.12);
  CHECK(make_objective("parabola").bounds.lower()[0] == -100.0);
  CHECK_THROWS_AS(make_objective("ackley"), StructuralError);

  for (std::size_t d : {2, 3, 7}) {
    for (const auto& name : objective_names()) {
      const ObjectiveSpec spec = make_objective(name, d);
      CHECK(spec.dimension() == d);
      CHECK(spec.bounds.contains(spec.known_minimum_position));
      CHECK(std::abs(spec.evaluator(spec.known_minimum_position) - spec.known_minimum_value) <= 1e-12);
    }
  }
  CHECK_FALSE(make_objective("parabola").multimodal());
  CHECK(make_objective("griewank").multimodal());
}

TEST_CASE("random sweeps: symmetry, non-negativity, rastrigin-parabola gap") {
  RngStream rng(2024);
  for (const auto& name : objective_names()) {
    const ObjectiveSpec spec = make_objective(name, 3);
    bool rosenbrock_asymmetric = false;
    for (int i = 0; i < 100000; ++i) {
      RealVector x(3), neg(3);
      for (std::size_t j = 0; j < 3; ++j) {
        x[j] = rng.uniform(spec.bounds.lower()[j], spec.bounds.upper()[j]);
        neg[j] = -x[j];
      }
      const double f = spec.evaluator(x);
      REQUIRE(f >= 0.0);
      const double gap = rastrigin(x) - parabola(x);
      REQUIRE(gap >= -1e-9);
      REQUIRE(gap <= 60.0 + 1e-9);
      if (name == "rosenbrock") {
        rosenbrock_asymmetric = rosenbrock_asymmetric || std::abs(f - spec.evaluator(neg)) > 1e-9;
      } else {
        REQUIRE(std::abs(f - spec.evaluator(neg)) <= 1e-9 * (1.0 + std::abs(f)));
      }
    }
    if (name == "rosenbrock") CHECK(rosenbrock_asymmetric);
  }
}

TEST_CASE("evaluate_counted bumps the counter") {
  const ObjectiveSpec spec = make_objective("parabola", 3);
  SwarmState s = SwarmState::fresh(1, 3);
  CHECK(s.evaluations == 0);
  CHECK(evaluate_counted(spec, RealVector{1, 2, 3}, s) == 14.0);
  CHECK(s.evaluations == 1);
  for (int i = 0; i < 1000 * 20; ++i) evaluate_counted(spec, RealVector{0, 0, 0}, s);
  CHECK(s.evaluations == 20001);

  CHECK_THROWS_AS(evaluate_counted(spec, RealVector{1, 2}, s), StructuralError);

  ObjectiveSpec broken = spec;
  broken.evaluator = [](std::span<const double>) { return std::numeric_limits<double>::infinity(); };
  CHECK_THROWS_AS(evaluate_counted(broken, RealVector{0, 0, 0}, s), NumericalError);
}
