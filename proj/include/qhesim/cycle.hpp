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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhesim/observable.hpp"

namespace qhesim {

/// Which process is active during a step.
enum class Stroke { hot, cold, work };

struct Action {
  Stroke d = Stroke::work;
  double u = 0.0;  // in [0, 1]
};

/// Maps the continuous control u to the free Hamiltonian: a linear sweep of
/// omega2 between two endpoints.
struct UMap {
  std::string name = "omega2_linear";
  double omega2_min = 1.5;
  double omega2_max = 2.5;

  double omega2(double u) const { return omega2_min + u * (omega2_max - omega2_min); }
};

struct CycleSchedule {
  std::vector<Action> steps;
  double dt = 0.5;
  double gamma = 0.99;  // discount factor in [0, 1)
  UMap u_map;
  std::string label;

  void validate() const;
};

enum class Backend { exact, circuit };

struct StepRecord {
  int index = 0;
  double t = 0.0;  // time at the end of the step
  Action action;
  double reward = 0.0;
  double reward_std_error = 0.0;
  double avg_power = 0.0;  // discounted running average
  double energy = 0.0;     // <E_S> at the end of the step
  double j_h = 0.0;        // step-averaged heat currents
  double j_c = 0.0;
  double entropy_production = 0.0;  // -(beta_h J_h + beta_c J_c)
};

struct PowerTrace {
  Backend backend = Backend::exact;
  std::vector<StepRecord> steps;
  double average_power = 0.0;
  double average_entropy_production = 0.0;
  std::optional<double> efficiency;  // unset when the average power is not positive
};

/// Engine parameters seen during a stroke: omega2 from the u map, the field
/// switched off on thermal strokes.
EngineParams stroke_params(const EngineParams& params, const UMap& u_map, const Action& action);

/// Energy observable H(0) for the stroke (bare basis, rotating frame).
Matrix stroke_hamiltonian(const EngineParams& params, const UMap& u_map, const Action& action);

/// Generator of one stroke: the bath's channels only on thermal strokes,
/// the field-driven coherent part only on work strokes.
Matrix stroke_generator(const EngineParams& params, const UMap& u_map, const Action& action);

/// (1/dt) * delta_energy on thermal strokes, 0 on work strokes.
double thermal_reward(Stroke d, double delta_energy, double dt);

struct StepResult {
  DensityMatrix rho;
  double reward;
};

/// Evolve for one step of duration `dt` and return the reward on the exact
/// backend.
StepResult step(const EngineParams& params, const UMap& u_map, const DensityMatrix& rho,
                const Action& action, double dt);

/// <P>_i = (1 - gamma) sum_{k<=i} gamma^k r_{i-k}, by the recurrence
/// P_i = gamma P_{i-1} + (1 - gamma) r_i.
std::vector<double> average_power(std::span<const double> rewards, double gamma);

/// eta_c / (1 + <sigma> / (beta_c <P>)). Throws NonPositivePower if <P> <= 0.
double cycle_efficiency(double power_avg, double sigma_avg, double beta_h, double beta_c);

struct ScheduleRunOptions {
  Backend backend = Backend::exact;
  CircuitOptions circuit;
  /// Total steps; the schedule repeats periodically. 0 = one pass.
  int n_steps = 0;
  /// Initial state (bare basis). Unset = ground state |0><0|.
  std::optional<DensityMatrix> initial;
};

/// Replay a schedule. The state is always carried by the exact step
/// propagator; on the circuit backend each thermal step's energy change is
/// measured with expectation_circuit on Kraus sets built from the step's
/// endpoints.
PowerTrace run_schedule(const EngineParams& params, const CycleSchedule& schedule,
                        const ScheduleRunOptions& options);

std::string to_string(Stroke d);
Stroke stroke_from_string(const std::string& s);

}  // namespace qhesim
