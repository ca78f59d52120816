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

#include "qhesim/noise.hpp"

#include "qhesim/errors.hpp"

namespace qhesim {

void NoiseModel::validate() const {
  for (double p : {readout_flip_01, readout_flip_10, depolarizing})
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("NoiseModel: probabilities must lie in [0, 1]");
}

bool NoiseModel::is_ideal() const {
  return readout_flip_01 == 0.0 && readout_flip_10 == 0.0 && depolarizing == 0.0;
}

RealMatrix readout_confusion(const NoiseModel& noise, int n_qubits) {
  noise.validate();
  RealMatrix single(2, 2);
  single << 1.0 - noise.readout_flip_01, noise.readout_flip_10,
            noise.readout_flip_01, 1.0 - noise.readout_flip_10;
  RealMatrix c = RealMatrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) c = kron(c, single);
  return c;
}

RealMatrix noise_transfer_matrix(const NoiseModel& noise, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  const double w = noise.depolarizing;
  const RealMatrix mix = (1.0 - w) * RealMatrix::Identity(dim, dim) +
                         RealMatrix::Constant(dim, dim, w / static_cast<double>(dim));
  return readout_confusion(noise, n_qubits) * mix;
}

std::vector<double> apply_noise(const NoiseModel& noise, int n_qubits,
                                std::span<const double> probabilities) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (static_cast<Eigen::Index>(probabilities.size()) != dim)
    throw DimensionMismatch("apply_noise: distribution size is not 2^N");
  const RealVector p = Eigen::Map<const RealVector>(probabilities.data(), dim);
  const double w = noise.depolarizing;
  const RealVector mixed = (1.0 - w) * p.array() + w * p.sum() / static_cast<double>(dim);
  const RealVector out = readout_confusion(noise, n_qubits) * mixed;
  return {out.data(), out.data() + out.size()};
}

}  // namespace qhesim
