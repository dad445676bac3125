#include <doctest.h>

#include <cmath>

#include "wdl/errors.hpp"
#include "wdl/model.hpp"

using namespace wdl;

namespace {

PopulationModel constant_model(int n, int budget, double f, double g, NoiseSpec noise = {}) {
  PopulationModel m;
  m.n = n;
  m.budget = budget;
  m.return_curves.assign(n, ResponseCurve::constant(f));
  m.decay_curves.assign(n, ResponseCurve::constant(g));
  m.noise = noise;
  return m;
}

PopulationModel ramp_model(int n, int budget, NoiseSpec noise) {
  PopulationModel m;
  m.n = n;
  m.budget = budget;
  for (int i = 0; i < n; ++i) {
    m.return_curves.push_back(
        ResponseCurve::piecewise_linear(3.0, 4.0, i, i + 10.0, Direction::kNonDecreasing));
    m.decay_curves.push_back(
        ResponseCurve::piecewise_linear(0.2, 0.5, 2.0 * i, 2.0 * i + 5.0, Direction::kNonIncreasing));
  }
  m.noise = noise;
  return m;
}

AllocationVector integer_alloc(std::initializer_list<double> a) {
  AllocationVector v;
  v.entries = Eigen::VectorXd(static_cast<Eigen::Index>(a.size()));
  Eigen::Index i = 0;
  for (double x : a) v.entries[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("one deterministic step: treated gains f, untreated loses g") {
  const auto model = constant_model(2, 1, 2.0, 0.5, NoiseSpec::none());
  PopulationState s{0, Eigen::Vector2d(10.0, 10.0)};
  Rng rng(1);
  const auto next = step_population(s, integer_alloc({1, 0}), model, rng);
  CHECK(next.t == 1);
  CHECK(next.welfare[0] == 12.0);
  CHECK(next.welfare[1] == 9.5);
}

TEST_CASE("lattice noise adds an integer perturbation to the drift") {
  const auto model =
      constant_model(1, 1, 2.0, 0.5, NoiseSpec::integer_lattice({{-1, 0.5}, {1, 0.5}}));
  Rng rng(2);
  bool saw_up = false, saw_down = false;
  for (int k = 0; k < 200; ++k) {
    PopulationState s{0, Eigen::VectorXd::Constant(1, 10.0)};
    const double u = step_population(s, integer_alloc({1}), model, rng).welfare[0];
    REQUIRE((u == 13.0 || u == 11.0));
    saw_up |= u == 13.0;
    saw_down |= u == 11.0;
  }
  CHECK(saw_up);
  CHECK(saw_down);
}

TEST_CASE("zero noise makes the step a pure function of the state") {
  const auto model = ramp_model(5, 2, NoiseSpec::none());
  PopulationState s{3, (Eigen::VectorXd(5) << 1, 4, 7, 12, 30).finished()};
  const auto a = integer_alloc({0, 1, 0, 1, 0});
  Rng r1(1), r2(999);
  const auto x = step_population(s, a, model, r1);
  const auto y = step_population(s, a, model, r2);
  CHECK(x.welfare == y.welfare);
  CHECK((x.welfare - s.welfare).isApprox(expected_increment(s, a, model)));
}

TEST_CASE("property: mean one-step change equals the expected increment") {
  const auto model = ramp_model(4, 1, NoiseSpec::capped_gaussian(0.5));
  PopulationState s{0, (Eigen::VectorXd(4) << 2, 5, 9, 15).finished()};
  const auto a = integer_alloc({0, 0, 1, 0});
  const Eigen::VectorXd expected = expected_increment(s, a, model);
  Rng rng(3);
  const int n = 20000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(4);
  for (int k = 0; k < n; ++k) sum += step_population(s, a, model, rng).welfare - s.welfare;
  const double se = 0.5 / std::sqrt(n);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(sum[i] / n - expected[i]) < 4.0 * se);
}

TEST_CASE("expected increment of a proportional allocation mixes f and g") {
  const auto model = constant_model(2, 1, 2.0, 0.5);
  PopulationState s{0, Eigen::Vector2d(0.0, 0.0)};
  AllocationVector a{Eigen::Vector2d(0.25, 0.75), AllocationMode::kProportional};
  const auto inc = expected_increment(s, a, model);
  CHECK(inc[0] == doctest::Approx(0.25 * 2.0 - 0.75 * 0.5));
  CHECK(inc[1] == doctest::Approx(0.75 * 2.0 - 0.25 * 0.5));
}

TEST_CASE("treatment effect is f plus g") {
  const auto model = constant_model(3, 1, 2.0, 0.5);
  CHECK(treatment_effect(model, 1, 7.0) == 2.5);
  CHECK_THROWS_AS(treatment_effect(model, 3, 0.0), std::out_of_range);
  CHECK_THROWS_AS(treatment_effect(model, -1, 0.0), std::out_of_range);
}

TEST_CASE("structural errors") {
  auto model = constant_model(3, 1, 2.0, 0.5);
  PopulationState s{0, Eigen::Vector2d(0.0, 0.0)};
  Rng rng(1);
  CHECK_THROWS_AS(step_population(s, integer_alloc({1, 0}), model, rng), StructuralError);
  model.budget = 4;
  CHECK_THROWS_AS(validate(model), StructuralError);
  model.budget = 1;
  model.decay_curves.pop_back();
  CHECK_THROWS_AS(validate(model), StructuralError);
}

TEST_CASE("allocation validation") {
  CHECK_NOTHROW(validate(integer_alloc({1, 0, 1}), 2));
  CHECK_THROWS_AS(validate(integer_alloc({1, 0, 0}), 2), StructuralError);
  CHECK_THROWS_AS(validate(integer_alloc({0.5, 0.5, 1}), 2), StructuralError);
  AllocationVector p{Eigen::Vector2d(0.4, 0.6), AllocationMode::kProportional};
  CHECK_NOTHROW(validate(p, 1));
  p.entries[1] = 0.7;
  CHECK_THROWS_AS(validate(p, 1), StructuralError);
}
