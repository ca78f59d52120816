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

#include <map>

#include "qhesim/errors.hpp"
#include "qhesim/sweep.hpp"
#include "support.hpp"

using namespace qhesim;
using doctest::Approx;

namespace {

CellComparison cmp(double theo, double sim, bool vt = true, bool vs = true) {
  CellComparison c;
  c.theo = theo;
  c.sim = sim;
  c.valid_theo = vt;
  c.valid_sim = vs;
  return c;
}

const SweepCell& cell_at(const ErrorMap& m, int i, int j) {
  return m.cells[static_cast<std::size_t>(i * m.grid.n_omega20 + j)];
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("orthogonal array rows") {
  const auto cases = l9_cases();
  REQUIRE(cases.size() == 9);
  const double expected[9][7] = {
      {1.0, 5.0, 0.5, 0.5, 0.0, 0.0, 8.0}, {1.0, 5.0, 1.0, 1.0, 2.0, 2.0, 4.0},
      {1.0, 5.0, 2.0, 2.0, 0.5, 0.5, 2.0}, {0.5, 2.5, 0.5, 0.5, 2.0, 2.0, 8.0},
      {0.5, 2.5, 1.0, 1.0, 0.5, 0.5, 4.0}, {0.5, 2.5, 2.0, 2.0, 0.0, 0.0, 2.0},
      {0.2, 1.0, 0.5, 0.5, 0.5, 0.5, 8.0}, {0.2, 1.0, 1.0, 1.0, 0.0, 0.0, 4.0},
      {0.2, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0}};
  for (int k = 0; k < 9; ++k) {
    const SweepCase& c = cases[static_cast<std::size_t>(k)];
    CAPTURE(k + 1);
    CHECK(c.case_id == k + 1);
    CHECK(c.beta_h == expected[k][0]);
    CHECK(c.beta_c == expected[k][1]);
    CHECK(c.gamma_h_e20 == expected[k][2]);
    CHECK(c.gamma_c_e10 == expected[k][3]);
    CHECK(c.gamma_h_e10 == expected[k][4]);
    CHECK(c.gamma_c_e20 == expected[k][5]);
    CHECK(c.evolution_time == expected[k][6]);
    CHECK(c.flagged == (k == 8));
  }
  CHECK_FALSE(cases[8].note.empty());

  // every level of the rate factors appears three times
  std::map<double, int> resonant, detuned;
  for (const SweepCase& c : cases) {
    ++resonant[c.gamma_h_e20];
    ++detuned[c.gamma_h_e10];
  }
  for (const auto& [level, n] : resonant) CHECK(n == 3);
  for (const auto& [level, n] : detuned) CHECK(n == 3);

  CHECK(l9_case(4).beta_c == 2.5);
  CHECK_THROWS_AS(l9_case(0), InvalidArgument);
  CHECK_THROWS_AS(l9_case(10), InvalidArgument);
}

TEST_CASE("grid coordinates") {
  const GridSpec g;
  CHECK(g.lambda(0) == 0.0);
  CHECK(g.lambda(20) == Approx(1.0));
  CHECK(g.lambda(10) == Approx(0.5));
  CHECK(g.omega20(0) == Approx(1.0 + 4.0 / 21));
  CHECK(g.omega20(20) == Approx(5.0));
  GridSpec bad;
  bad.n_lambda = 1;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("relative error rules") {
  SUBCASE("identical maps give zero") {
    const std::vector<CellComparison> c{cmp(0.1, 0.1), cmp(0.2, 0.2), cmp(-0.1, 0.3, false, true)};
    const auto e = relative_error(c, ErrorKind::power, 0.8);
    CHECK(e[0].value == 0.0);
    CHECK(e[1].value == 0.0);
    CHECK(e[0].status == CellStatus::comparable);
    CHECK(e[2].status == CellStatus::masked);
    CHECK(std::isnan(e[2].value));
  }
  SUBCASE("normalized by the largest error") {
    // raw errors 0.5 and 0 normalize to 1 and 0
    const std::vector<CellComparison> c{cmp(0.2, 0.1), cmp(0.3, 0.3)};
    const auto e = relative_error(c, ErrorKind::power, 0.8);
    CHECK(e[0].value == Approx(1.0));
    CHECK(e[1].value == 0.0);
  }
  SUBCASE("normalized values stay in [0, 1]") {
    const std::vector<CellComparison> c{cmp(0.2, 0.1), cmp(0.1, 0.08), cmp(0.4, 0.5)};
    const auto e = relative_error(c, ErrorKind::power, 0.8);
    double top = 0.0;
    for (const ErrorValue& v : e) {
      CHECK(v.value >= 0.0);
      CHECK(v.value <= 1.0);
      top = std::max(top, v.value);
    }
    CHECK(top == 1.0);
  }
  SUBCASE("sign conflict is a sentinel") {
    const std::vector<CellComparison> c{cmp(0.1, -0.02, true, false), cmp(0.2, 0.1)};
    const auto e = relative_error(c, ErrorKind::power, 0.8);
    CHECK(e[0].value == kInvalidSentinel);
    CHECK(e[0].status == CellStatus::sentinel);
    CHECK(e[1].value == Approx(1.0));  // the sentinel does not enter the normalization
  }
  SUBCASE("efficiency above Carnot is a sentinel") {
    const std::vector<CellComparison> c{cmp(0.6, 0.85), cmp(0.6, 0.7)};
    const auto e = relative_error(c, ErrorKind::efficiency, 0.8);
    CHECK(e[0].status == CellStatus::sentinel);
    CHECK(e[0].value == kInvalidSentinel);
    CHECK(e[1].status == CellStatus::comparable);
    const auto ep = relative_error(c, ErrorKind::power, 0.8);
    CHECK(ep[0].status == CellStatus::comparable);
  }
  SUBCASE("undefined efficiency is masked") {
    CellComparison c = cmp(0.6, 0.5);
    c.defined_sim = false;
    const auto e = relative_error(std::span<const CellComparison>(&c, 1), ErrorKind::efficiency, 0.8);
    CHECK(e[0].status == CellStatus::masked);
  }
}

TEST_CASE("reference operating point is a valid engine") {
  const EngineParams p = l9_case(1).params(0.5, 2.5);
  const SteadyStateReport r = performance(p, steady_state(p));
  CHECK(r.valid);
  REQUIRE(r.efficiency);
  CHECK(*r.efficiency <= 0.8);
  CHECK(r.power == Approx(testing::golden()["steady_default"]["power"].get<double>()).epsilon(1e-9));
}

TEST_CASE("exact self comparison") {
  SweepOptions o;
  o.backend = SweepBackend::exact;
  o.threads = 1;
  for (int id : {1, 5, 9}) {
    CAPTURE(id);
    const ErrorMap m = run_case(l9_case(id), GridSpec{}, o);
    REQUIRE(m.cells.size() == 441);
    std::size_t comparable = 0;
    for (const SweepCell& c : m.cells) {
      CHECK(c.error.empty());
      if (c.er_p.status == CellStatus::comparable) {
        ++comparable;
        CHECK(c.er_p.value == 0.0);
      }
      CHECK(c.er_p.status != CellStatus::sentinel);
      if (c.valid_theo && c.eta_theo == c.eta_theo) CHECK(c.eta_theo <= m.sweep_case.carnot_efficiency() + 1e-12);
    }
    CHECK(comparable > 0);
    for (int j = 0; j < 21; ++j) CHECK_FALSE(cell_at(m, 0, j).valid_theo);
    const SweepSummary s = summarize(m);
    CHECK(s.max_er_p == 0.0);
    CHECK(s.median_er_p == 0.0);
    CHECK(s.flagged == (id == 9));
  }
}

TEST_CASE("circuit pipeline with exact probabilities matches finite-time theory") {
  SweepOptions o;
  o.backend = SweepBackend::circuit;
  o.circuit.shots = 0;
  o.threads = 1;
  const ErrorMap m = run_case(l9_case(1), GridSpec{}, o);
  const GridSpec g;
  int checked = 0;
  for (const auto& cell : testing::golden()["case1_cells"]) {
    const double lam = cell["lam"].get<double>();
    const double w = cell["omega20"].get<double>();
    const int i = static_cast<int>(std::lround(lam / 0.05));
    const int j = static_cast<int>(std::lround(w * 21.0 / 4.0 - 21.0 / 4.0 - 1.0));
    if (i < 0 || i > 20 || j < 0 || j > 20) continue;
    if (std::abs(g.lambda(i) - lam) > 1e-12 || std::abs(g.omega20(j) - w) > 1e-12) continue;
    CAPTURE(lam);
    CAPTURE(w);
    const SweepCell& c = cell_at(m, i, j);
    CHECK(c.p_sim == Approx(cell["finite_time"]["power"].get<double>()).epsilon(1e-6));
    CHECK(c.p_theo == Approx(cell["steady"]["power"].get<double>()).epsilon(1e-8));
    CHECK(c.valid_theo == cell["steady"]["valid"].get<bool>());
    ++checked;
  }
  CHECK(checked == 4);

  // off-grid reference point through a custom two-point grid
  GridSpec custom;
  custom.n_lambda = 2;
  custom.lambda_max = 0.5;
  custom.n_omega20 = 2;
  custom.omega20_max = 4.0;
  const ErrorMap r = run_case(l9_case(1), custom, o);
  const auto& ref = testing::golden()["case1_cells"][0];
  REQUIRE(r.cells[2].lambda == 0.5);
  REQUIRE(r.cells[2].omega20 == 2.5);
  CHECK(r.cells[2].p_sim == Approx(ref["finite_time"]["power"].get<double>()).epsilon(1e-6));
  CHECK(r.cells[2].eta_sim == Approx(ref["finite_time"]["efficiency"].get<double>()).epsilon(1e-6));
}

TEST_CASE("sampled sweep is deterministic per seed") {
  SweepOptions o;
  o.circuit.shots = 2048;
  o.circuit.reps = 2;
  o.circuit.seed = 11;
  GridSpec g;
  g.n_lambda = 3;
  g.n_omega20 = 3;
  o.threads = 2;
  const ErrorMap a = run_case(l9_case(2), g, o);
  o.threads = 1;
  const ErrorMap b = run_case(l9_case(2), g, o);
  o.circuit.seed = 12;
  const ErrorMap c = run_case(l9_case(2), g, o);
  bool any_diff = false;
  for (std::size_t k = 0; k < a.cells.size(); ++k) {
    CHECK(a.cells[k].p_sim == b.cells[k].p_sim);
    CHECK((a.cells[k].eta_sim == b.cells[k].eta_sim ||
           (std::isnan(a.cells[k].eta_sim) && std::isnan(b.cells[k].eta_sim))));
    any_diff = any_diff || a.cells[k].p_sim != c.cells[k].p_sim;
  }
  CHECK(any_diff);
}

}
