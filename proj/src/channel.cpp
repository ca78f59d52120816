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

#include "qhesim/channel.hpp"

#include <cmath>

#include "qhesim/errors.hpp"

namespace qhesim {

KrausSet::KrausSet(std::vector<Matrix> operators, Basis basis, std::uint64_t source)
    : operators_(std::move(operators)), basis_(basis), source_(source) {
  if (operators_.empty()) throw InvalidArgument("KrausSet: at least one operator required");
  const Eigen::Index n = operators_.front().rows();
  for (const Matrix& m : operators_)
    if (m.rows() != n || m.cols() != n) throw DimensionMismatch("KrausSet: operators must be n x n");
}

Eigen::Index KrausSet::dim() const { return operators_.front().rows(); }

double KrausSet::completeness_residual() const {
  const Eigen::Index n = dim();
  Matrix sum = Matrix::Zero(n, n);
  for (const Matrix& m : operators_) sum.noalias() += m.adjoint() * m;
  return (sum - Matrix::Identity(n, n)).norm();
}

KrausSet KrausSet::in_basis(Basis target, const DressedBasis& basis) const {
  if (target == basis_) return *this;
  const Matrix& v = basis.vectors;
  std::vector<Matrix> ops;
  ops.reserve(operators_.size());
  for (const Matrix& m : operators_)
    ops.push_back(target == Basis::dressed ? Matrix(v.adjoint() * m * v)
                                           : Matrix(v * m * v.adjoint()));
  return KrausSet(std::move(ops), target, source_);
}

KrausSet kraus_from_pair(const DensityMatrix& rho0, const DensityMatrix& rhot,
                         KrausOptions options) {
  // Re-run validation: trusted states produced elsewhere must still meet the
  // density-matrix invariants before we build a channel from them.
  const DensityMatrix a = DensityMatrix::from_matrix(rho0.matrix(), rho0.basis());
  const DensityMatrix b = DensityMatrix::from_matrix(rhot.matrix(), rhot.basis());
  if (a.basis() != b.basis()) throw InvalidArgument("kraus_from_pair: states in different bases");
  if (a.dim() != b.dim()) throw DimensionMismatch("kraus_from_pair: state dimensions differ");

  const HermitianEigen e0 = eigh_descending(a.matrix());
  const HermitianEigen et = eigh_descending(b.matrix());
  const Eigen::Index n = a.dim();

  RealVector q = et.values.cwiseMax(0.0);
  q /= q.sum();

  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const double amp = std::sqrt(q(j));
    for (Eigen::Index k = 0; k < n; ++k) {
      if (options.prune_zero && amp == 0.0) continue;
      // U(t) (sqrt(q_j) E_jk) U(0)^dagger is a rank-one outer product.
      ops.push_back(amp * et.vectors.col(j) * e0.vectors.col(k).adjoint());
    }
  }
  if (ops.empty()) throw InvalidArgument("kraus_from_pair: all operators pruned");
  const std::uint64_t source = fingerprint(b.matrix(), fingerprint(a.matrix()));
  return KrausSet(std::move(ops), a.basis(), source);
}

DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho) {
  if (ks.dim() != rho.dim()) throw DimensionMismatch("apply_channel: dimension mismatch");
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const Matrix& m : ks.operators()) out.noalias() += m * rho.matrix() * m.adjoint();
  return DensityMatrix::from_matrix(out, rho.basis());
}

double contraction_check(const Matrix& m) { return spectral_norm(m); }

}  // namespace qhesim
