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

#include "qhesim/dilation.hpp"

#include <cmath>
#include <sstream>

#include "qhesim/errors.hpp"

namespace qhesim {

namespace {

constexpr double kContractionSlack = 1e-9;

// Returns A, renormalized when its norm exceeds 1 by rounding only.
Matrix checked_contraction(const Matrix& a, Eigen::JacobiSVD<Matrix>& svd) {
  if (a.rows() != a.cols()) throw DimensionMismatch("dilation: operator must be square");
  svd.compute(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smax = a.size() ? svd.singularValues()(0) : 0.0;
  if (smax > 1.0 + kContractionSlack) {
    std::ostringstream msg;
    msg << "operator is not a contraction (largest singular value " << smax << ")";
    throw NotContraction(msg.str());
  }
  if (smax > 1.0) {
    svd.compute(a / smax, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return a / smax;
  }
  return a;
}

DefectOperators defects_from_svd(const Eigen::JacobiSVD<Matrix>& svd) {
  const RealVector s = svd.singularValues();
  const RealVector d = (1.0 - s.array().square()).cwiseMax(0.0).sqrt().matrix();
  const Matrix& w = svd.matrixU();
  const Matrix& v = svd.matrixV();
  return {v * d.asDiagonal() * v.adjoint(), w * d.asDiagonal() * w.adjoint()};
}

}  // namespace

DefectOperators defect_operators(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd;
  checked_contraction(a, svd);
  return defects_from_svd(svd);
}

Matrix dilate1(const Matrix& a_in) {
  Eigen::JacobiSVD<Matrix> svd;
  const Matrix a = checked_contraction(a_in, svd);
  const DefectOperators d = defects_from_svd(svd);
  const Eigen::Index n = a.rows();
  Matrix u(2 * n, 2 * n);
  u << a, d.d_a_adj, d.d_a, -a.adjoint();
  return u;
}

Matrix dilate2(const Matrix& a_in) {
  Eigen::JacobiSVD<Matrix> svd;
  const Matrix a = checked_contraction(a_in, svd);
  const DefectOperators d = defects_from_svd(svd);
  const Eigen::Index n = a.rows();
  const Matrix zero = Matrix::Zero(n, n);
  const Matrix id = Matrix::Identity(n, n);
  Matrix u(3 * n, 3 * n);
  u << a, zero, d.d_a_adj,
       d.d_a, zero, -a.adjoint(),
       zero, id, zero;
  return u;
}

double unitarity_residual(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

int qubits_for(Eigen::Index dim) {
  if (dim < 1) throw InvalidArgument("qubits_for: dimension must be >= 1");
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

PaddedUnitary pad_to_qubits(const Matrix& u, Eigen::Index payload_dim, int min_qubits) {
  if (u.rows() != u.cols()) throw DimensionMismatch("pad_to_qubits: matrix must be square");
  const int n = std::max(qubits_for(u.rows()), min_qubits);
  const Eigen::Index full = Eigen::Index{1} << n;
  PaddedUnitary out;
  out.matrix = Matrix::Identity(full, full);
  out.matrix.topLeftCorner(u.rows(), u.cols()) = u;
  out.n_qubits = n;
  out.block_dim = u.rows();
  out.payload_dim = payload_dim > 0 ? payload_dim : u.rows();
  return out;
}

}  // namespace qhesim
