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

#include "qhesim/cycle.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "qhesim/errors.hpp"

namespace qhesim {

void CycleSchedule::validate() const {
  if (steps.empty()) throw InvalidArgument("schedule: no steps");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("schedule: dt must be > 0");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgument("schedule: gamma must be in [0, 1)");
  if (!(u_map.omega2_min > 1.0 && u_map.omega2_max > 1.0))
    throw InvalidArgument("schedule: u_map endpoints must keep omega2 above omega1");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double u = steps[i].u;
    if (!(u >= 0.0 && u <= 1.0)) {
      std::ostringstream msg;
      msg << "schedule: step " << i << " has u = " << u << " outside [0, 1]";
      throw InvalidArgument(msg.str());
    }
  }
}

EngineParams stroke_params(const EngineParams& params, const UMap& u_map, const Action& action) {
  EngineParams p = params;
  p.omega2 = u_map.omega2(action.u);
  switch (action.d) {
    case Stroke::hot:
      p.lambda_field = 0.0;
      p.gamma_c_e10 = 0.0;
      p.gamma_c_e20 = 0.0;
      break;
    case Stroke::cold:
      p.lambda_field = 0.0;
      p.gamma_h_e10 = 0.0;
      p.gamma_h_e20 = 0.0;
      break;
    case Stroke::work:
      p.gamma_h_e10 = p.gamma_h_e20 = p.gamma_c_e10 = p.gamma_c_e20 = 0.0;
      break;
  }
  return p;
}

Matrix stroke_hamiltonian(const EngineParams& params, const UMap& u_map, const Action& action) {
  return hamiltonian_at(stroke_params(params, u_map, action), 0.0);
}

Matrix stroke_generator(const EngineParams& params, const UMap& u_map, const Action& action) {
  const EngineParams p = stroke_params(params, u_map, action);
  p.validate();
  const Matrix h = rotating_frame_hamiltonian(p);
  if (action.d == Stroke::work) return liouvillian(h, {});
  const Bath bath = action.d == Stroke::hot ? Bath::hot : Bath::cold;
  std::vector<JumpChannel> active;
  for (JumpChannel& c : jump_channels(p, dressed_basis(p)))
    if (c.bath == bath) active.push_back(std::move(c));
  return liouvillian(h, active);
}

double thermal_reward(Stroke d, double delta_energy, double dt) {
  if (d == Stroke::work) return 0.0;
  return delta_energy / dt;
}

StepResult step(const EngineParams& params, const UMap& u_map, const DensityMatrix& rho,
                const Action& action, double dt) {
  if (rho.basis() != Basis::bare) throw InvalidArgument("step: expects a bare-basis state");
  if (!(dt > 0.0)) throw InvalidArgument("step: dt must be > 0");
  const Propagator prop(stroke_generator(params, u_map, action), 0.0);
  DensityMatrix next = DensityMatrix::trusted(prop.advance(rho.matrix(), dt), Basis::bare);
  const Matrix h = stroke_hamiltonian(params, u_map, action);
  const double de = expectation_exact(h, next) - expectation_exact(h, rho);
  return {std::move(next), thermal_reward(action.d, de, dt)};
}

std::vector<double> average_power(std::span<const double> rewards, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgument("average_power: gamma must be in [0, 1)");
  std::vector<double> out;
  out.reserve(rewards.size());
  double p = 0.0;
  for (double r : rewards) {
    p = gamma * p + (1.0 - gamma) * r;
    out.push_back(p);
  }
  return out;
}

double cycle_efficiency(double power_avg, double sigma_avg, double beta_h, double beta_c) {
  if (!(power_avg > 0.0)) {
    std::ostringstream msg;
    msg << "cycle_efficiency: average power " << power_avg << " is not positive";
    throw NonPositivePower(msg.str());
  }
  const double eta_c = 1.0 - beta_h / beta_c;
  return eta_c / (1.0 + sigma_avg / (beta_c * power_avg));
}

namespace {

// Transfer matrices and observables are reused across the periodic replay.
struct StrokeCache {
  Matrix transfer;
  Matrix hamiltonian;
};

}  // namespace

PowerTrace run_schedule(const EngineParams& params, const CycleSchedule& schedule,
                        const ScheduleRunOptions& options) {
  params.validate();
  schedule.validate();
  if (options.n_steps < 0) throw InvalidArgument("run_schedule: n_steps must be >= 0");
  const int n_steps = options.n_steps == 0 ? static_cast<int>(schedule.steps.size())
                                           : options.n_steps;

  Matrix rho;
  if (options.initial) {
    if (options.initial->dim() != 3) throw DimensionMismatch("run_schedule: initial state size");
    rho = options.initial->in_basis(Basis::bare, dressed_basis(params)).matrix();
  } else {
    rho = Matrix::Zero(3, 3);
    rho(0, 0) = 1.0;
  }

  std::map<std::pair<int, double>, StrokeCache> cache;
  auto lookup = [&](const Action& a) -> const StrokeCache& {
    const auto key = std::make_pair(static_cast<int>(a.d), a.u);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const Propagator prop(stroke_generator(params, schedule.u_map, a), 0.0);
      it = cache.emplace(key, StrokeCache{prop.transfer_matrix(schedule.dt),
                                          stroke_hamiltonian(params, schedule.u_map, a)})
               .first;
    }
    return it->second;
  };

  PowerTrace trace;
  trace.backend = options.backend;
  trace.steps.reserve(static_cast<std::size_t>(n_steps));
  const double g = schedule.gamma;
  double p_avg = 0.0;
  double sigma_avg = 0.0;

  for (int i = 0; i < n_steps; ++i) {
    const Action& a = schedule.steps[static_cast<std::size_t>(i) % schedule.steps.size()];
    const StrokeCache& sc = lookup(a);
    Matrix next = hermitian_part(unvectorize(sc.transfer * vectorize(rho), 3));
    const double drift = std::abs(next.trace().real() - rho.trace().real());
    if (drift > 1e-6) {
      std::ostringstream msg;
      msg << "run_schedule: trace drift " << drift << " at step " << i;
      throw StepSizeRejected(msg.str());
    }
    const DensityMatrix before = DensityMatrix::trusted(rho, Basis::bare);
    const DensityMatrix after = DensityMatrix::trusted(next, Basis::bare);

    StepRecord rec;
    rec.index = i;
    rec.t = schedule.dt * (i + 1);
    rec.action = a;
    rec.energy = expectation_exact(sc.hamiltonian, after);
    if (a.d != Stroke::work) {
      if (options.backend == Backend::exact) {
        rec.reward = thermal_reward(
            a.d, rec.energy - expectation_exact(sc.hamiltonian, before), schedule.dt);
      } else {
        // Both energies measured on circuits: the start through the identity
        // channel on rho, the end through the step's Kraus set.
        const auto stream = static_cast<std::uint64_t>(i);
        const KrausSet stay = kraus_from_pair(before, before);
        const KrausSet move = kraus_from_pair(before, after);
        const Estimate e0 = expectation_circuit(sc.hamiltonian, before, stay, options.circuit,
                                                2 * stream);
        const Estimate e1 = expectation_circuit(sc.hamiltonian, before, move, options.circuit,
                                                2 * stream + 1);
        rec.reward = thermal_reward(a.d, e1.value - e0.value, schedule.dt);
        rec.reward_std_error = std::hypot(e0.std_error, e1.std_error) / schedule.dt;
      }
      // On a thermal stroke the Hamiltonian is diagonal, so the energy change
      // is entirely heat from the active bath.
      (a.d == Stroke::hot ? rec.j_h : rec.j_c) = rec.reward;
    }
    rec.entropy_production = -(params.beta_h * rec.j_h + params.beta_c * rec.j_c);
    p_avg = g * p_avg + (1.0 - g) * rec.reward;
    sigma_avg = g * sigma_avg + (1.0 - g) * rec.entropy_production;
    rec.avg_power = p_avg;
    trace.steps.push_back(rec);
    rho = std::move(next);
  }

  trace.average_power = p_avg;
  trace.average_entropy_production = sigma_avg;
  if (p_avg > 0.0) trace.efficiency = cycle_efficiency(p_avg, sigma_avg, params.beta_h, params.beta_c);
  return trace;
}

std::string to_string(Stroke d) {
  switch (d) {
    case Stroke::hot: return "hot";
    case Stroke::cold: return "cold";
    case Stroke::work: return "work";
  }
  return "work";
}

Stroke stroke_from_string(const std::string& s) {
  if (s == "hot") return Stroke::hot;
  if (s == "cold") return Stroke::cold;
  if (s == "work") return Stroke::work;
  throw InvalidArgument("unknown stroke '" + s + "' (expected hot, cold or work)");
}

}  // namespace qhesim
