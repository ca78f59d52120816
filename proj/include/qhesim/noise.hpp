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

#include <span>
#include <vector>

#include "qhesim/linalg.hpp"

namespace qhesim {

/// Synthetic device noise applied at circuit level: a depolarizing mix of
/// the outcome distribution (an aggregate stand-in for gate error) followed
/// by independent per-qubit readout flips.
struct NoiseModel {
  double readout_flip_01 = 0.02;  // P(read 1 | prepared 0)
  double readout_flip_10 = 0.03;  // P(read 0 | prepared 1)
  double depolarizing = 0.05;

  static NoiseModel ideal() { return {0.0, 0.0, 0.0}; }
  void validate() const;
  bool is_ideal() const;

  bool operator==(const NoiseModel&) const = default;
};

/// Column-stochastic readout confusion matrix, qubit 0 most significant.
RealMatrix readout_confusion(const NoiseModel& noise, int n_qubits);

/// Full outcome-level noise map: readout after depolarizing.
RealMatrix noise_transfer_matrix(const NoiseModel& noise, int n_qubits);

/// Noisy outcome distribution p' = C ((1 - w) p + w / 2^N).
std::vector<double> apply_noise(const NoiseModel& noise, int n_qubits,
                                std::span<const double> probabilities);

}  // namespace qhesim
