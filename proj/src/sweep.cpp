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

#include "qhesim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "qhesim/errors.hpp"
#include "qhesim/rng.hpp"

namespace qhesim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepCase make_case(int id, double bh, double bc, double gh20, double gc10, double gh10,
                    double gc20) {
  SweepCase c;
  c.case_id = id;
  c.beta_h = bh;
  c.beta_c = bc;
  c.gamma_h_e20 = gh20;
  c.gamma_c_e10 = gc10;
  c.gamma_h_e10 = gh10;
  c.gamma_c_e20 = gc20;
  c.evolution_time = 4.0 / gh20;
  return c;
}

double median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

EngineParams SweepCase::params(double lambda, double omega20) const {
  EngineParams p;
  p.omega0 = 0.0;
  p.omega1 = 1.0;
  p.omega2 = omega20;
  p.lambda_field = lambda;
  p.beta_h = beta_h;
  p.beta_c = beta_c;
  p.gamma_h_e20 = gamma_h_e20;
  p.gamma_c_e10 = gamma_c_e10;
  p.gamma_h_e10 = gamma_h_e10;
  p.gamma_c_e20 = gamma_c_e20;
  return p;
}

std::vector<SweepCase> l9_cases() {
  std::vector<SweepCase> cases = {
      make_case(1, 1.0, 5.0, 0.5, 0.5, 0.0, 0.0),
      make_case(2, 1.0, 5.0, 1.0, 1.0, 2.0, 2.0),
      make_case(3, 1.0, 5.0, 2.0, 2.0, 0.5, 0.5),
      make_case(4, 0.5, 2.5, 0.5, 0.5, 2.0, 2.0),
      make_case(5, 0.5, 2.5, 1.0, 1.0, 0.5, 0.5),
      make_case(6, 0.5, 2.5, 2.0, 2.0, 0.0, 0.0),
      make_case(7, 0.2, 1.0, 0.5, 0.5, 0.5, 0.5),
      make_case(8, 0.2, 1.0, 1.0, 1.0, 0.0, 0.0),
      make_case(9, 0.2, 2.0, 2.0, 2.0, 2.0, 2.0),
  };
  cases[8].flagged = true;
  cases[8].note = "beta_c = 2 kept as tabulated; the level pattern implies 1";
  return cases;
}

SweepCase l9_case(int case_id) {
  if (case_id < 1 || case_id > 9) {
    std::ostringstream msg;
    msg << "unknown case id " << case_id << " (expected 1..9)";
    throw InvalidArgument(msg.str());
  }
  return l9_cases()[static_cast<std::size_t>(case_id - 1)];
}

double GridSpec::lambda(int i) const {
  if (n_lambda == 1) return lambda_min;
  return lambda_min + i * (lambda_max - lambda_min) / (n_lambda - 1);
}

double GridSpec::omega20(int j) const {
  return omega20_min + (j + 1) * (omega20_max - omega20_min) / n_omega20;
}

void GridSpec::validate() const {
  if (n_lambda < 2 || n_omega20 < 2) throw InvalidArgument("grid: resolution must be at least 2x2");
  if (!(lambda_min >= 0.0 && lambda_max > lambda_min))
    throw InvalidArgument("grid: need 0 <= lambda_min < lambda_max");
  if (!(omega20_min >= 1.0 && omega20_max > omega20_min))
    throw InvalidArgument("grid: need 1 <= omega20_min < omega20_max");
}

std::vector<ErrorValue> relative_error(std::span<const CellComparison> cells, ErrorKind kind,
                                       double carnot) {
  std::vector<ErrorValue> out(cells.size());
  std::vector<double> raw(cells.size(), 0.0);
  double max_raw = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const CellComparison& c = cells[k];
    ErrorValue& e = out[k];
    e.value = kNaN;
    e.status = CellStatus::masked;
    if (!c.valid_theo || !c.defined_theo || !std::isfinite(c.theo)) continue;
    if (!c.defined_sim || !std::isfinite(c.sim)) continue;
    const bool sign_conflict = (c.theo > 0.0 && c.sim < 0.0) || (c.theo < 0.0 && c.sim > 0.0);
    const bool above_carnot = kind == ErrorKind::efficiency && c.sim > carnot;
    if (sign_conflict || above_carnot) {
      e.value = kInvalidSentinel;
      e.status = CellStatus::sentinel;
      continue;
    }
    if (!c.valid_sim) continue;
    e.status = CellStatus::comparable;
    raw[k] = std::abs((c.theo - c.sim) / c.theo);
    max_raw = std::max(max_raw, raw[k]);
  }
  for (std::size_t k = 0; k < cells.size(); ++k)
    if (out[k].status == CellStatus::comparable)
      out[k].value = max_raw > 0.0 ? raw[k] / max_raw : 0.0;
  return out;
}

namespace {

void evaluate_cell(const SweepCase& sc, SweepCell& cell, const SweepOptions& options,
                   const CircuitOptions& circuit, std::uint64_t stream) {
  const EngineParams p = sc.params(cell.lambda, cell.omega20);
  p.validate();
  const SteadyStateReport theo = performance(p, steady_state(p));
  cell.p_theo = theo.power;
  cell.eta_theo = theo.efficiency.value_or(kNaN);
  cell.valid_theo = theo.valid;

  SteadyStateReport sim;
  if (options.backend == SweepBackend::exact) {
    sim = theo;
  } else {
    const DressedBasis basis = dressed_basis(p);
    const DensityMatrix rho0 = DensityMatrix::pure(basis.vectors.col(0), Basis::bare);
    const DensityMatrix rhot = evolve(p, rho0, sc.evolution_time);
    const KrausSet ks = kraus_from_pair(rho0, rhot);
    const PopulationEstimate est = estimate_populations(p, rho0, ks, circuit, stream);
    sim = performance_from_populations(p, est.mitigated.value_or(est.values));
  }
  cell.p_sim = sim.power;
  cell.eta_sim = sim.efficiency.value_or(kNaN);
  cell.jh_sim = sim.j_h;
  cell.jc_sim = sim.j_c;
  cell.valid_sim = sim.valid;
}

}  // namespace

ErrorMap run_case(const SweepCase& sweep_case, const GridSpec& grid, const SweepOptions& options) {
  grid.validate();
  ErrorMap map;
  map.sweep_case = sweep_case;
  map.grid = grid;
  const std::size_t n = static_cast<std::size_t>(grid.n_lambda) * grid.n_omega20;
  map.cells.resize(n);
  for (int i = 0; i < grid.n_lambda; ++i) {
    for (int j = 0; j < grid.n_omega20; ++j) {
      SweepCell& c = map.cells[static_cast<std::size_t>(i) * grid.n_omega20 + j];
      c.i_lambda = i;
      c.j_omega20 = j;
      c.lambda = grid.lambda(i);
      c.omega20 = grid.omega20(j);
    }
  }

  CircuitOptions circuit = options.circuit;
  circuit.seed = derive_seed(options.circuit.seed, {static_cast<std::uint64_t>(sweep_case.case_id)});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      SweepCell& c = map.cells[k];
      try {
        evaluate_cell(sweep_case, c, options, circuit, k);
      } catch (const std::exception& e) {
        c.error = e.what();
        c.valid_theo = c.valid_sim = false;
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<CellComparison> power(n), eff(n);
  for (std::size_t k = 0; k < n; ++k) {
    const SweepCell& c = map.cells[k];
    const bool ok = c.error.empty();
    power[k] = {c.p_theo, c.p_sim, c.valid_theo, c.valid_sim, ok, ok};
    eff[k] = {c.eta_theo, c.eta_sim, c.valid_theo, c.valid_sim,
              ok && std::isfinite(c.eta_theo), ok && std::isfinite(c.eta_sim)};
  }
  const double carnot = sweep_case.carnot_efficiency();
  const auto er_p = relative_error(power, ErrorKind::power, carnot);
  const auto er_eta = relative_error(eff, ErrorKind::efficiency, carnot);
  for (std::size_t k = 0; k < n; ++k) {
    map.cells[k].er_p = er_p[k];
    map.cells[k].er_eta = er_eta[k];
  }
  return map;
}

SweepSummary summarize(const ErrorMap& map) {
  SweepSummary s;
  s.case_id = map.sweep_case.case_id;
  s.flagged = map.sweep_case.flagged;
  s.cells = map.cells.size();
  std::vector<double> ep, ee;
  for (const SweepCell& c : map.cells) {
    s.valid_theo += c.valid_theo;
    s.valid_sim += c.valid_sim;
    if (c.er_p.status == CellStatus::comparable) ep.push_back(c.er_p.value);
    if (c.er_p.status == CellStatus::sentinel) ++s.sentinel_p;
    if (c.er_eta.status == CellStatus::comparable) ee.push_back(c.er_eta.value);
    if (c.er_eta.status == CellStatus::sentinel) ++s.sentinel_eta;
  }
  s.comparable_p = ep.size();
  s.comparable_eta = ee.size();
  s.max_er_p = ep.empty() ? kNaN : *std::max_element(ep.begin(), ep.end());
  s.max_er_eta = ee.empty() ? kNaN : *std::max_element(ee.begin(), ee.end());
  s.median_er_p = median(ep);
  s.median_er_eta = median(ee);
  return s;
}

}  // namespace qhesim
