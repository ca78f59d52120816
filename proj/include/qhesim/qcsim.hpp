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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qhesim/channel.hpp"
#include "qhesim/dilation.hpp"
#include "qhesim/mitigation.hpp"
#include "qhesim/noise.hpp"

namespace qhesim {

/// Counts over the 2^N computational basis outcomes of one execution.
/// Basis index j encodes the qubits big-endian (qubit 0 is the MSB).
struct ShotHistogram {
  int n_qubits = 0;
  std::uint64_t shots = 0;
  std::vector<std::uint64_t> counts;

  std::vector<double> frequencies() const;
};

struct CircuitRun {
  /// Exact outcome probabilities when no shots were taken, otherwise the
  /// sampled frequencies.
  std::vector<double> distribution;
  std::optional<ShotHistogram> histogram;
};

/// Dense statevector execution. `initial` (length n <= 2^N) is zero-padded,
/// the unitaries are applied in order, noise is applied to the outcome
/// distribution, and `shots` outcomes are sampled. shots == 0 returns the
/// exact (noisy, if a model is given) distribution without sampling.
CircuitRun run_circuit(std::span<const PaddedUnitary> unitaries, const Vector& initial,
                       std::uint64_t shots, const std::optional<NoiseModel>& noise,
                       std::uint64_t seed);

struct CircuitOptions {
  std::uint64_t shots = 8192;  // 0 = exact probabilities
  int reps = 5;
  std::optional<NoiseModel> noise;
  /// Also produce readout-mitigated estimates from the same histograms.
  bool mitigate = false;
  /// Shots per calibration column; 0 = analytic calibration matrix. Unset
  /// uses `shots`.
  std::optional<std::uint64_t> calibration_shots;
  std::uint64_t seed = 0;
  bool prune_zero_kraus = false;
};

/// One pure-state component p_i |phi_i><phi_i| of a mixed initial state.
struct StateComponent {
  double weight;
  Vector state;
};

/// Eigendecomposition of rho with components of weight < 1e-12 dropped.
std::vector<StateComponent> decompose_state(const DensityMatrix& rho);

struct PayloadEstimate {
  std::vector<double> values;  // per payload outcome j
  std::vector<double> std_errors;
  double total = 0.0;  // mass on all payload outcomes together
  double total_std_error = 0.0;
  std::optional<std::vector<double>> mitigated;
  std::optional<std::vector<double>> mitigated_std_errors;
  std::optional<double> mitigated_total;
  std::optional<double> mitigated_total_std_error;
};

/// For every component i and circuit k, run circuit k on |phi_i> and
/// accumulate sum_i p_i sum_k P(outcome j) for the first `payload`
/// outcomes, averaged over `options.reps` repetitions. `stream` separates
/// the random streams of independent callers sharing a seed.
PayloadEstimate run_payload_circuits(std::span<const StateComponent> components,
                                     std::span<const std::vector<PaddedUnitary>> circuits,
                                     Eigen::Index payload, const CircuitOptions& options,
                                     std::uint64_t stream = 0);

struct PopulationEstimate {
  std::array<double, 3> values{};
  std::array<double, 3> std_errors{};
  std::optional<std::array<double, 3>> mitigated;
  std::optional<std::array<double, 3>> mitigated_std_errors;
};

/// Dressed-level populations of the evolved state from one 1-dilation
/// circuit per (component, Kraus operator). Outcome |000>, |001>, |010>
/// maps to eps0, eps1, eps2. Bare-basis inputs are converted to the dressed
/// basis first.
PopulationEstimate estimate_populations(const EngineParams& params, const DensityMatrix& rho0,
                                        const KrausSet& ks, const CircuitOptions& options,
                                        std::uint64_t stream = 0);

}  // namespace qhesim
