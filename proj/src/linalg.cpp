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

#include "qhesim/linalg.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

#include "qhesim/errors.hpp"

namespace qhesim {

namespace {

// Rotate so the largest-magnitude entry (first on ties) is real positive.
void fix_phase(Eigen::Ref<Vector> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs + 1e-12) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0.0) v *= std::conj(v(best)) / best_abs;
}

bool lexicographic_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > 1e-12) return a(i).real() < b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > 1e-12) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

HermitianEigen eigh_descending(const Matrix& h) {
  if (h.rows() != h.cols()) throw DimensionMismatch("eigh_descending: matrix is not square");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) throw Error("eigh_descending: eigensolver failed");

  const Eigen::Index n = h.rows();
  Matrix vecs = solver.eigenvectors();
  for (Eigen::Index k = 0; k < n; ++k) fix_phase(vecs.col(k));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const RealVector& vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (std::abs(vals(a) - vals(b)) > 1e-12) return vals(a) > vals(b);
    return lexicographic_less(vecs.col(a), vecs.col(b));
  });

  HermitianEigen out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = vals(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

Matrix psd_sqrt(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  RealVector roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double min_hermitian_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector vectorize(const Matrix& m) { return m.reshaped(); }

Matrix unvectorize(const Vector& v, Eigen::Index n) {
  if (v.size() != n * n) throw DimensionMismatch("unvectorize: size is not n^2");
  return v.reshaped(n, n);
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fingerprint(const Matrix& m, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double parts[2] = {m(i, j).real(), m(i, j).imag()};
      h = fnv1a(parts, sizeof(parts), h);
    }
  }
  return h;
}

}  // namespace qhesim
