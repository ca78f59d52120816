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

#include "qhesim/linalg.hpp"

namespace qhesim {

/// Defect operators of a contraction A, built from one SVD A = W S V^dagger:
/// d_a = sqrt(I - A^dagger A) = V sqrt(1 - S^2) V^dagger and
/// d_a_adj = sqrt(I - A A^dagger) = W sqrt(1 - S^2) W^dagger.
/// Sharing the singular vectors keeps A^dagger d_a_adj = d_a A^dagger at
/// rounding level even for singular values at 1.
struct DefectOperators {
  Matrix d_a;
  Matrix d_a_adj;
};

DefectOperators defect_operators(const Matrix& a);

/// Unitary [[A, D_{A^dag}], [D_A, -A^dag]] (2n x 2n).
Matrix dilate1(const Matrix& a);

/// Unitary [[A, 0, D_{A^dag}], [D_A, 0, -A^dag], [0, I, 0]] (3n x 3n). The
/// payload block of a product of two such dilations is the product of the
/// payloads.
Matrix dilate2(const Matrix& a);

/// ||U^dagger U - I||_F
double unitarity_residual(const Matrix& u);

/// Smallest N with 2^N >= dim.
int qubits_for(Eigen::Index dim);

/// A dilation embedded top-left in a 2^N x 2^N identity.
struct PaddedUnitary {
  Matrix matrix;
  int n_qubits = 0;
  Eigen::Index block_dim = 0;
  Eigen::Index payload_dim = 0;
};

/// Embed `u` in the smallest qubit register, or in `min_qubits` qubits if
/// that is larger. payload_dim <= 0 records the full block.
PaddedUnitary pad_to_qubits(const Matrix& u, Eigen::Index payload_dim = 0, int min_qubits = 0);

}  // namespace qhesim
