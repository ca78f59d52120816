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

#include <doctest.h>

#include "qhesim/errors.hpp"
#include "qhesim/observable.hpp"
#include "support.hpp"

using namespace qhesim;
using doctest::Approx;

namespace {

CircuitOptions exact_mode() {
  CircuitOptions o;
  o.shots = 0;
  return o;
}

}  // namespace

TEST_SUITE("observable") {

TEST_CASE("reduction of the identity") {
  const ReducedObservable r = reduce(Matrix::Identity(3, 3));
  CHECK(r.hs_norm == Approx(1.7320508).epsilon(1e-7));
  const double d = (1.0 + std::sqrt(3.0)) / (2.0 * std::sqrt(3.0));
  CHECK(d == Approx(0.7886751).epsilon(1e-7));
  CHECK((r.o_tilde - d * Matrix::Identity(3, 3)).norm() < 1e-15);
  CHECK((r.chol_factor * r.chol_factor.adjoint() - r.o_tilde).norm() < 1e-10);
}

TEST_CASE("reduced spectrum lies in [0, 1]") {
  Matrix o = Matrix::Zero(3, 3);
  o.diagonal() << 1.0, -1.0, 0.0;
  const ReducedObservable r = reduce(o);
  CHECK(r.hs_norm == Approx(std::sqrt(2.0)));
  Eigen::SelfAdjointEigenSolver<Matrix> es(r.o_tilde);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(es.eigenvalues()(0) == Approx((1 - s) / 2));
  CHECK(es.eigenvalues()(1) == Approx(0.5));
  CHECK(es.eigenvalues()(2) == Approx((1 + s) / 2));

  testing::RandomSource rs(73);
  for (int trial = 0; trial < 50; ++trial) {
    const ReducedObservable q = reduce(rs.hermitian(3));
    Eigen::SelfAdjointEigenSolver<Matrix> e(q.o_tilde);
    CHECK(e.eigenvalues().minCoeff() >= -1e-10);
    CHECK(e.eigenvalues().maxCoeff() <= 1.0 + 1e-10);
    CHECK((q.chol_factor * q.chol_factor.adjoint() - q.o_tilde).norm() < 1e-10);
  }
}

TEST_CASE("energy observable norm") {
  CHECK(reduce(hamiltonian_at(EngineParams{}, 0.0)).hs_norm == Approx(2.7838822).epsilon(1e-7));
}

TEST_CASE("singular reduction needs jitter") {
  // rank-one O = -|0><0| has eigenvalue -|O|_HS, so O~ is singular
  Matrix o = Matrix::Zero(3, 3);
  o(0, 0) = -1.0;
  const ReducedObservable r = reduce(o);
  CHECK((r.chol_factor * r.chol_factor.adjoint() - r.o_tilde).norm() < 1e-6);
}

TEST_CASE("reduction errors") {
  CHECK_THROWS_AS(reduce(Matrix::Zero(3, 3)), ZeroObservable);
  Matrix o = Matrix::Zero(3, 3);
  o(0, 1) = 1.0;
  CHECK_THROWS_AS(reduce(o), InvalidArgument);
}

TEST_CASE("exact expectation values") {
  const EngineParams p;
  const DressedBasis b = dressed_basis(p);
  const Matrix h = hamiltonian_at(p, 0.0);
  testing::RandomSource rs(79);
  CHECK(expectation_exact(Matrix::Identity(3, 3), rs.density(3)) == Approx(1.0));
  CHECK(expectation_exact(h, DensityMatrix::pure(b.vectors.col(2))) == Approx(2.6513878).epsilon(1e-7));
  CHECK(expectation_exact(h, DensityMatrix::maximally_mixed(3)) == Approx(h.trace().real() / 3));
  Matrix nh = Matrix::Zero(3, 3);
  nh(0, 1) = nh(1, 0) = Complex(0.0, 1.0);
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = m(1, 1) = 0.5;
  m(0, 1) = m(1, 0) = 0.5;
  CHECK_THROWS_AS(expectation_exact(nh, DensityMatrix::from_matrix(m)), ImaginaryResidue);
}

TEST_CASE("round trip of the affine reduction") {
  testing::RandomSource rs(83);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix o = rs.hermitian(3);
    const DensityMatrix rho = rs.density(3);
    const ReducedObservable r = reduce(o);
    const double reduced = (r.o_tilde * rho.matrix()).trace().real();
    CHECK(2 * r.hs_norm * reduced - r.hs_norm == Approx(expectation_exact(o, rho)).epsilon(1e-10));
  }
}

TEST_CASE("circuit expectation, identity observable") {
  testing::RandomSource rs(89);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix a = rs.density(3);
    const DensityMatrix b = rs.density(3);
    const Estimate e = expectation_circuit(Matrix::Identity(3, 3), a, kraus_from_pair(a, b), exact_mode());
    CHECK(std::abs(e.value - 1.0) < 1e-12);
  }
}

TEST_CASE("circuit expectation matches the trajectory energy") {
  const EngineParams p;
  const Matrix h = hamiltonian_at(p, 0.0);
  const DensityMatrix rho0 = DensityMatrix::pure(Vector::Unit(3, 0));
  const DensityMatrix rhot = evolve(p, rho0, 8.0);
  const KrausSet ks = kraus_from_pair(rho0, rhot);
  const double exact = expectation_exact(h, rhot);
  CHECK(std::abs(expectation_circuit(h, rho0, ks, exact_mode()).value - exact) < 1e-8);

  CircuitOptions o;
  o.shots = 8192;
  o.seed = 2024;
  const Estimate e = expectation_circuit(h, rho0, ks, o);
  CHECK(e.std_error > 0.0);
  CHECK(std::abs(e.value - exact) <= 3 * e.std_error);
}

TEST_CASE("random observables and channels, exact mode") {
  testing::RandomSource rs(97);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix o = rs.hermitian(3);
    const DensityMatrix a = rs.density(3);
    const DensityMatrix b = rs.density(3);
    const Estimate e = expectation_circuit(o, a, kraus_from_pair(a, b), exact_mode());
    CHECK(e.value == Approx(expectation_exact(o, b)).epsilon(1e-9));
  }
}

TEST_CASE("basis mismatch is rejected") {
  testing::RandomSource rs(101);
  const DensityMatrix a = rs.density(3);
  const DensityMatrix d = rs.density(3, Basis::dressed);
  const KrausSet ks = kraus_from_pair(d, d);
  CHECK_THROWS_AS(expectation_circuit(Matrix::Identity(3, 3), a, ks, exact_mode()), InvalidArgument);
}

}
