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

#include <cmath>
#include <filesystem>
#include <random>

#include <json.hpp>

#include "qhesim/io.hpp"

namespace qhesim::testing {

inline const nlohmann::json& golden() {
  static const nlohmann::json g = io::read_json_file(QHESIM_GOLDEN_PATH);
  return g;
}

inline std::filesystem::path data_dir() { return QHESIM_DATA_DIR; }

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  Matrix ginibre(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(), normal());
    return m;
  }

  DensityMatrix density(Eigen::Index n, Basis basis = Basis::bare) {
    const Matrix g = ginibre(n, n);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::from_matrix(hermitian_part(rho), basis);
  }

  Matrix hermitian(Eigen::Index n) { return hermitian_part(ginibre(n, n)); }

  // Random matrix scaled to spectral norm in [0, 1].
  Matrix contraction(Eigen::Index n) {
    const Matrix g = ginibre(n, n);
    return g * (uniform() / spectral_norm(g));
  }

  EngineParams params() {
    EngineParams p;
    p.omega2 = uniform(1.2, 5.0);
    p.lambda_field = uniform(0.05, 0.6);
    p.beta_h = uniform(0.2, 1.0);
    p.beta_c = p.beta_h + uniform(0.5, 4.0);
    p.gamma_h_e20 = uniform(0.2, 2.0);
    p.gamma_c_e10 = uniform(0.2, 2.0);
    p.gamma_h_e10 = uniform(0.0, 1.0);
    p.gamma_c_e20 = uniform(0.0, 1.0);
    return p;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline std::array<double, 3> golden_pops(const nlohmann::json& row) {
  return {row[0].get<double>(), row[1].get<double>(), row[2].get<double>()};
}

}  // namespace qhesim::testing
