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
#include <vector>

#include "qhesim/lindblad.hpp"

namespace qhesim {

/// Kraus operators for one evolution rho(0) -> rho(t).
///
/// Sets built by `kraus_from_pair` are specific to the state pair they were
/// built from: they reproduce rho(t) from rho(0) and are complete, but they
/// are not a tomographic reconstruction of the underlying channel and map
/// other inputs to unrelated states.
class KrausSet {
 public:
  KrausSet(std::vector<Matrix> operators, Basis basis, std::uint64_t source = 0);

  const std::vector<Matrix>& operators() const { return operators_; }
  Basis basis() const { return basis_; }
  std::uint64_t source() const { return source_; }
  std::size_t size() const { return operators_.size(); }
  Eigen::Index dim() const;

  /// || sum M^dagger M - I ||_F
  double completeness_residual() const;

  /// Conjugate every operator into `target`.
  KrausSet in_basis(Basis target, const DressedBasis& basis) const;

 private:
  std::vector<Matrix> operators_;
  Basis basis_;
  std::uint64_t source_;
};

struct KrausOptions {
  /// Drop operators that are identically zero (eigenvalue 0 of rho(t)).
  bool prune_zero = false;
};

/// M_(j,k) = U(t) sqrt(q_j) E_jk U(0)^dagger with q the spectrum of rho(t),
/// eigendecompositions sorted descending. Both states must share a basis.
KrausSet kraus_from_pair(const DensityMatrix& rho0, const DensityMatrix& rhot,
                         KrausOptions options = {});

/// sum_k M_k rho M_k^dagger
DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho);

/// Largest singular value; <= 1 for a contraction.
double contraction_check(const Matrix& m);

}  // namespace qhesim
