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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qhesim/noise.hpp"

namespace qhesim {

/// Calibration matrix G of the readout correction: column j is the outcome
/// distribution measured after preparing basis state |j>.
///
/// Calibration here is preparation based. Each basis state is prepared by
/// bit flips and measured under the full synthetic noise model, so G
/// captures both the aggregate depolarizing mix and the readout confusion.
struct CalibrationMatrix {
  RealMatrix g;
  NoiseModel noise;
  std::uint64_t shots = 0;  // 0 = analytic
  std::uint64_t seed = 0;

  int n_qubits() const;
};

/// shots == 0 gives the analytic matrix; otherwise each column is a sampled
/// histogram of `shots` outcomes.
CalibrationMatrix calibration_matrix(const NoiseModel& noise, int n_qubits,
                                     std::uint64_t shots = 0, std::uint64_t seed = 0);

struct MitigationResult {
  std::vector<double> x;
  double residual = 0.0;  // f(x) = sum_i (v_i - (G x)_i)^2
  /// G is numerically rank deficient; x is a best-effort minimizer.
  bool singular_calibration = false;
  int iterations = 0;
};

struct MitigationOptions {
  /// Enforce x >= 0 and sum x = 1.
  bool constrained = true;
  int max_iterations = 10000;
  double tolerance = 1e-12;
};

/// Minimize sum_i (v_i - (G x)_i)^2 over the probability simplex with a
/// primal active-set method. `v` is a frequency vector.
MitigationResult mitigate(std::span<const double> v, const CalibrationMatrix& calibration,
                          MitigationOptions options = {});
MitigationResult mitigate(std::span<const double> v, const RealMatrix& g,
                          MitigationOptions options = {});

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> y);

}  // namespace qhesim
