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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qhesim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order. Ties are broken lexicographically on the (phase-fixed)
/// eigenvector entries so repeated calls give identical bases.
struct HermitianEigen {
  RealVector values;
  Matrix vectors;  // columns
};

HermitianEigen eigh_descending(const Matrix& h);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues below zero
/// (rounding) are clamped to zero.
Matrix psd_sqrt(const Matrix& h);

double spectral_norm(const Matrix& m);
double min_hermitian_eigenvalue(const Matrix& h);

Matrix kron(const Matrix& a, const Matrix& b);
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);

/// Column-stacking vectorization: vec(A X B) = (B^T kron A) vec(X).
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, Eigen::Index n);

Matrix hermitian_part(const Matrix& m);

/// 64-bit FNV-1a over raw bytes, used for fingerprints and config hashes.
std::uint64_t fnv1a(const void* data, std::size_t size,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t fingerprint(const Matrix& m, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace qhesim
