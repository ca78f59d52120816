// Copyright 2026 The qhesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "qhesim/cycle.hpp"
#include "qhesim/errors.hpp"
#include "support.hpp"

using namespace qhesim;
using doctest::Approx;

namespace {

CycleSchedule fixture(const std::string& name) {
  return io::schedule_from_json(io::read_json_file(testing::data_dir() / "schedules" / (name + ".json")));
}

}  // namespace

TEST_SUITE("cycle") {

TEST_CASE("reward selector") {
  CHECK(thermal_reward(Stroke::work, 0.3, 0.5) == 0.0);
  CHECK(thermal_reward(Stroke::hot, 0.1, 0.5) == Approx(0.2));
  CHECK(thermal_reward(Stroke::cold, -0.1, 0.5) == Approx(-0.2));

  const EngineParams p;
  const UMap map;
  const DensityMatrix rho = DensityMatrix::pure(Vector::Unit(3, 1));
  const StepResult work = step(p, map, rho, {Stroke::work, 0.5}, 0.5);
  CHECK(work.reward == 0.0);
  CHECK(std::abs(work.rho.matrix()(1, 1).real() - 1.0) > 1e-3);  // the field did act
}

TEST_CASE("cold stroke from its Gibbs state") {
  const EngineParams p;
  const UMap map;
  Matrix g = Matrix::Zero(3, 3);
  const double b = std::exp(-p.beta_c * 1.0);  // lambda = 0 on thermal strokes, eps10 = 1
  g(0, 0) = 1.0 / (1.0 + b);
  g(1, 1) = b / (1.0 + b);
  const StepResult r = step(p, map, DensityMatrix::from_matrix(g), {Stroke::cold, 0.3}, 0.5);
  CHECK(std::abs(r.reward) < 1e-8);
}

TEST_CASE("stroke generators") {
  const EngineParams p;
  const UMap map;
  const EngineParams hot = stroke_params(p, map, {Stroke::hot, 1.0});
  CHECK(hot.lambda_field == 0.0);
  CHECK(hot.gamma_c_e10 == 0.0);
  CHECK(hot.omega2 == 2.5);
  const EngineParams cold = stroke_params(p, map, {Stroke::cold, 0.0});
  CHECK(cold.gamma_h_e20 == 0.0);
  CHECK(cold.omega2 == 1.5);
  const EngineParams work = stroke_params(p, map, {Stroke::work, 0.5});
  CHECK(work.lambda_field == p.lambda_field);
  CHECK(work.omega2 == 2.0);
  // the work generator is purely unitary: populations of H eigenstates rotate, trace preserved
  const Matrix l = stroke_generator(p, map, {Stroke::work, 0.5});
  CHECK((l + l.adjoint()).norm() < 1e-12);
}

TEST_CASE("discounted average power") {
  const std::vector<double> r{0.3, -0.1, 0.7};
  const auto g0 = average_power(r, 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(g0[i] == r[i]);

  const std::vector<double> flat(1000, 0.25);
  for (double gamma : {0.5, 0.9, 0.99}) {
    const auto pa = average_power(flat, gamma);
    for (std::size_t i = 0; i < pa.size(); i += 97)
      CHECK(pa[i] == Approx(0.25 * (1 - std::pow(gamma, i + 1))).epsilon(1e-12));
    CHECK(pa.back() == Approx(0.25 * (1 - std::pow(gamma, 1000))).epsilon(1e-12));
  }

  std::vector<double> impulse(50, 0.0);
  impulse[0] = 1.0;
  const auto pi = average_power(impulse, 0.9);
  for (std::size_t i = 0; i < pi.size(); ++i) CHECK(pi[i] == Approx(0.1 * std::pow(0.9, i)).epsilon(1e-12));

  CHECK_THROWS_AS(average_power(r, 1.0), InvalidArgument);
}

TEST_CASE("recurrence equals direct summation over 10^4 steps") {
  testing::RandomSource rs(113);
  std::vector<double> r(10000);
  for (double& x : r) x = rs.uniform(-1.0, 1.0);
  const double gamma = 0.99;
  const auto pa = average_power(r, gamma);
  double max_abs_r = 0.0;
  for (double x : r) max_abs_r = std::max(max_abs_r, std::abs(x));
  for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{500}, std::size_t{4999}, std::size_t{9999}}) {
    double direct = 0.0;
    double gk = 1.0;
    for (std::size_t k = 0; k <= i; ++k) {
      direct += gk * r[i - k];
      gk *= gamma;
    }
    direct *= 1 - gamma;
    CHECK(std::abs(pa[i] - direct) < 1e-12);
  }
  for (double x : pa) CHECK(std::abs(x) <= max_abs_r);
}

TEST_CASE("cycle efficiency") {
  CHECK(cycle_efficiency(0.1, 0.0, 1.0, 5.0) == Approx(0.8));
  // sigma / (beta_c P) = 0.25
  CHECK(cycle_efficiency(0.2, 0.25, 1.0, 5.0) == Approx(0.64));
  CHECK(cycle_efficiency(0.2, 0.1, 1.0, 5.0) < 0.8);
  CHECK_THROWS_AS(cycle_efficiency(0.0, 0.1, 1.0, 5.0), NonPositivePower);
  CHECK_THROWS_AS(cycle_efficiency(-0.1, 0.1, 1.0, 5.0), NonPositivePower);
}

TEST_CASE("all-work schedule produces no power") {
  CycleSchedule s;
  s.steps = {{Stroke::work, 0.0}, {Stroke::work, 1.0}};
  ScheduleRunOptions o;
  o.n_steps = 200;
  const PowerTrace t = run_schedule(EngineParams{}, s, o);
  for (const StepRecord& r : t.steps) {
    CHECK(r.reward == 0.0);
    CHECK(r.avg_power == 0.0);
  }
  CHECK_FALSE(t.efficiency);
}

TEST_CASE("fixture cycles against the oracle") {
  for (const std::string name : {"cycle1", "cycle2"}) {
    CAPTURE(name);
    const CycleSchedule s = fixture(name);
    ScheduleRunOptions o;
    o.n_steps = 1000;
    const PowerTrace t = run_schedule(EngineParams{}, s, o);
    const auto& g = testing::golden()["cycles"][name];
    CHECK(t.average_power == Approx(g["average_power"].get<double>()).epsilon(1e-9));
    CHECK(t.average_entropy_production ==
          Approx(g["average_entropy_production"].get<double>()).epsilon(1e-9));
    REQUIRE(t.efficiency);
    CHECK(*t.efficiency == Approx(g["efficiency"].get<double>()).epsilon(1e-9));
    CHECK(*t.efficiency < 0.8);
    const auto first = g["first_rewards"].get<std::vector<double>>();
    for (std::size_t i = 0; i < first.size(); ++i)
      CHECK(std::abs(t.steps[i].reward - first[i]) < 1e-10);

    // rewards recomputed from the column
    std::vector<double> rewards;
    for (const StepRecord& r : t.steps) rewards.push_back(r.reward);
    const auto pa = average_power(rewards, s.gamma);
    for (std::size_t i = 0; i < pa.size(); ++i) CHECK(pa[i] == t.steps[i].avg_power);
  }
}

TEST_CASE("cycle1 average power settles") {
  const CycleSchedule s = fixture("cycle1");
  ScheduleRunOptions o;
  o.n_steps = 2000;
  const PowerTrace t = run_schedule(EngineParams{}, s, o);
  // after ~5 / (1 - gamma) steps the per-period value is stationary
  const std::size_t period = s.steps.size();
  for (std::size_t i = 1000; i < 2000; i += 250)
    CHECK(std::abs(t.steps[i].avg_power - t.steps[i - 25 * period].avg_power) < 1e-5);
}

TEST_CASE("circuit backend in exact-probability mode matches") {
  for (const std::string name : {"cycle1", "cycle2"}) {
    const CycleSchedule s = fixture(name);
    ScheduleRunOptions exact;
    exact.n_steps = 1000;
    ScheduleRunOptions circ = exact;
    circ.backend = Backend::circuit;
    circ.circuit.shots = 0;
    const PowerTrace a = run_schedule(EngineParams{}, s, exact);
    const PowerTrace b = run_schedule(EngineParams{}, s, circ);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.steps.size(); ++i)
      worst = std::max(worst, std::abs(a.steps[i].avg_power - b.steps[i].avg_power));
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("circuit backend with shots") {
  const CycleSchedule s = fixture("cycle1");
  ScheduleRunOptions o;
  o.backend = Backend::circuit;
  o.n_steps = 8;
  o.circuit.shots = 8192;
  o.circuit.seed = 3;
  const PowerTrace t = run_schedule(EngineParams{}, s, o);
  ScheduleRunOptions e;
  e.n_steps = 8;
  const PowerTrace x = run_schedule(EngineParams{}, s, e);
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    if (t.steps[i].action.d == Stroke::work) continue;
    CHECK(t.steps[i].reward_std_error > 0.0);
    CHECK(std::abs(t.steps[i].reward - x.steps[i].reward) <= 5 * t.steps[i].reward_std_error);
  }
}

TEST_CASE("schedule validation") {
  CycleSchedule s;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s.steps = {{Stroke::hot, 1.5}};
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s.steps = {{Stroke::hot, 0.5}};
  s.gamma = 1.0;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s.gamma = 0.9;
  s.dt = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  CHECK(stroke_from_string("cold") == Stroke::cold);
  CHECK(to_string(Stroke::work) == "work");
  CHECK_THROWS_AS(stroke_from_string("warm"), InvalidArgument);
}

}
