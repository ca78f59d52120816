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

#include "qhesim/lindblad.hpp"

#include <cmath>
#include <sstream>

#include "qhesim/errors.hpp"

namespace qhesim {

// DensityMatrix ------------------------------------------------------------

DensityMatrix DensityMatrix::from_matrix(const Matrix& m, Basis basis) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw InvalidState("density matrix must be square and non-empty");
  const double herm = (m - m.adjoint()).norm();
  if (herm >= kTolerance) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (||rho - rho^dag||_F = " << herm << ")";
    throw InvalidState(msg.str());
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) >= kTolerance) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr.real() << ", expected 1";
    throw InvalidState(msg.str());
  }
  Matrix h = hermitian_part(m);
  const double min_eig = min_hermitian_eigenvalue(h);
  if (min_eig < -kTolerance) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw InvalidState(msg.str());
  }
  return DensityMatrix(std::move(h), basis);
}

DensityMatrix DensityMatrix::pure(const Vector& psi, Basis basis) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-9) throw InvalidState("pure state vector must have unit norm");
  return from_matrix(psi * psi.adjoint(), basis);
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index n, Basis basis) {
  return DensityMatrix(Matrix::Identity(n, n) / static_cast<double>(n), basis);
}

DensityMatrix DensityMatrix::trusted(const Matrix& m, Basis basis) {
  if (m.rows() != m.cols()) throw InvalidState("density matrix must be square");
  return DensityMatrix(hermitian_part(m), basis);
}

double DensityMatrix::min_eigenvalue() const { return min_hermitian_eigenvalue(data_); }

DensityMatrix DensityMatrix::in_basis(Basis target, const DressedBasis& basis) const {
  if (target == basis_) return *this;
  if (dim() != basis.vectors.rows())
    throw DimensionMismatch("in_basis: state and dressed basis dimensions differ");
  const Matrix& v = basis.vectors;
  Matrix m = target == Basis::dressed ? Matrix(v.adjoint() * data_ * v)
                                      : Matrix(v * data_ * v.adjoint());
  return DensityMatrix(hermitian_part(m), target);
}

// Generator ----------------------------------------------------------------

std::vector<JumpChannel> jump_channels(const EngineParams& params, const DressedBasis& basis) {
  std::vector<JumpChannel> out;
  out.reserve(8);
  const Vector ground = basis.vectors.col(0);
  for (Bath bath : {Bath::hot, Bath::cold}) {
    for (int m = 1; m <= 2; ++m) {
      const Vector excited = basis.vectors.col(m);
      const double w = channel_weight(basis, bath, m);
      const double e = basis.energy(m) - basis.eps0;
      out.push_back({bath, ground * excited.adjoint(), w * bath_rate(params, basis, bath, e)});
      out.push_back({bath, excited * ground.adjoint(), w * bath_rate(params, basis, bath, -e)});
    }
  }
  return out;
}

Matrix liouvillian(const Matrix& hamiltonian, std::span<const JumpChannel> channels) {
  const Eigen::Index n = hamiltonian.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Complex i_unit(0.0, 1.0);
  Matrix l = -i_unit * (kron(id, hamiltonian) - kron(Matrix(hamiltonian.transpose()), id));
  for (const JumpChannel& ch : channels) {
    if (ch.rate == 0.0) continue;
    const Matrix ada = ch.op.adjoint() * ch.op;
    l += ch.rate * (kron(Matrix(ch.op.conjugate()), ch.op) - 0.5 * kron(id, ada) -
                    0.5 * kron(Matrix(ada.transpose()), id));
  }
  return l;
}

Matrix generator(const EngineParams& params) {
  const DressedBasis basis = dressed_basis(params);
  const auto channels = jump_channels(params, basis);
  return liouvillian(rotating_frame_hamiltonian(params), channels);
}

Matrix apply_dissipator(std::span<const JumpChannel> channels, Bath bath, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const JumpChannel& ch : channels) {
    if (ch.bath != bath || ch.rate == 0.0) continue;
    const Matrix ada = ch.op.adjoint() * ch.op;
    out += ch.rate * (ch.op * rho * ch.op.adjoint() - 0.5 * (ada * rho + rho * ada));
  }
  return out;
}

double default_time_step(const Matrix& superop) {
  Eigen::ComplexEigenSolver<Matrix> solver(superop, false);
  const double radius = solver.eigenvalues().cwiseAbs().maxCoeff();
  return radius > 0.0 ? 1e-3 / radius : 1e-3;
}

// Propagation --------------------------------------------------------------

Propagator::Propagator(Matrix superop, double dt) : superop_(std::move(superop)), dt_(dt) {
  if (superop_.rows() != superop_.cols()) throw DimensionMismatch("Propagator: non-square generator");
  if (dt_ <= 0.0) dt_ = default_time_step(superop_);
}

Matrix Propagator::step_matrix(double h) const {
  const Eigen::Index n = superop_.rows();
  const Matrix x = h * superop_;
  const Matrix x2 = x * x;
  const Matrix x3 = x2 * x;
  const Matrix x4 = x3 * x;
  return Matrix::Identity(n, n) + x + x2 / 2.0 + x3 / 6.0 + x4 / 24.0;
}

Matrix Propagator::transfer_matrix(double duration) const {
  if (duration < 0.0) throw InvalidArgument("Propagator: negative duration");
  const Eigen::Index n2 = superop_.rows();
  Matrix power = Matrix::Identity(n2, n2);
  if (duration == 0.0) return power;
  auto steps = static_cast<std::uint64_t>(std::ceil(duration / dt_ - 1e-9));
  if (steps == 0) steps = 1;
  Matrix base = step_matrix(duration / static_cast<double>(steps));
  for (std::uint64_t e = steps; e > 0; e >>= 1) {
    if (e & 1U) power = base * power;
    if (e > 1) base = base * base;
  }
  return power;
}

Matrix Propagator::advance(const Matrix& rho, double duration) const {
  if (duration < 0.0) throw InvalidArgument("Propagator::advance: negative duration");
  if (duration == 0.0) return rho;
  const Eigen::Index n = rho.rows();
  if (n * n != superop_.rows()) throw DimensionMismatch("Propagator::advance: state size");

  Matrix out = unvectorize(transfer_matrix(duration) * vectorize(rho), n);
  const double drift = std::abs(out.trace() - rho.trace());
  if (drift > 1e-6) {
    std::ostringstream msg;
    msg << "trace drift " << drift << " exceeds 1e-6; reduce dt (" << dt_ << ")";
    throw StepSizeRejected(msg.str());
  }
  return hermitian_part(out);
}

std::vector<TrajectoryPoint> propagate(const EngineParams& params, const DensityMatrix& rho0,
                                       std::span<const double> sample_times, double dt) {
  const DressedBasis basis = dressed_basis(params);
  const Propagator prop(generator(params), dt);
  Matrix rho = rho0.in_basis(Basis::bare, basis).matrix();

  std::vector<TrajectoryPoint> out;
  out.reserve(sample_times.size());
  double t = 0.0;
  for (double ts : sample_times) {
    if (ts < t) throw InvalidArgument("propagate: sample times must be non-decreasing and >= 0");
    rho = prop.advance(rho, ts - t);
    t = ts;
    const DensityMatrix state = DensityMatrix::trusted(rho, Basis::bare);
    out.push_back({t, rho, dressed_populations(state, basis), rho.trace().real(),
                   state.min_eigenvalue()});
  }
  return out;
}

DensityMatrix evolve(const EngineParams& params, const DensityMatrix& rho0, double t_final,
                     double dt) {
  const double times[] = {t_final};
  return DensityMatrix::trusted(propagate(params, rho0, times, dt).back().rho, Basis::bare);
}

// Steady state -------------------------------------------------------------

DensityMatrix steady_state(const Matrix& superop, Basis basis) {
  const Eigen::Index n2 = superop.rows();
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n2))));
  if (n * n != n2 || superop.cols() != n2) throw DimensionMismatch("steady_state: generator shape");

  Eigen::JacobiSVD<Matrix> svd(superop, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  if (n2 >= 2 && s(n2 - 2) < 1e-8) {
    std::ostringstream msg;
    msg << "generator kernel is not one-dimensional (second-smallest singular value "
        << s(n2 - 2) << ")";
    throw DegenerateKernel(msg.str());
  }
  Matrix rho = unvectorize(svd.matrixV().col(n2 - 1), n);
  rho /= rho.trace();
  rho = hermitian_part(rho);

  const double residual = (superop * vectorize(rho)).norm();
  if (residual > 1e-9 * std::max(1.0, superop.norm())) {
    std::ostringstream msg;
    msg << "steady_state: residual " << residual << " too large";
    throw Error(msg.str());
  }
  return DensityMatrix::trusted(rho, basis);
}

DensityMatrix steady_state(const EngineParams& params) {
  return steady_state(generator(params), Basis::bare);
}

// Thermodynamics -----------------------------------------------------------

std::array<double, 3> dressed_populations(const DensityMatrix& rho, const DressedBasis& basis) {
  if (rho.dim() != 3) throw DimensionMismatch("dressed_populations: expects a 3-level state");
  std::array<double, 3> pops{};
  if (rho.basis() == Basis::dressed) {
    for (int m = 0; m < 3; ++m) pops[static_cast<std::size_t>(m)] = rho.matrix()(m, m).real();
    return pops;
  }
  for (int m = 0; m < 3; ++m) {
    const Vector v = basis.vectors.col(m);
    pops[static_cast<std::size_t>(m)] = (v.adjoint() * rho.matrix() * v)(0, 0).real();
  }
  return pops;
}

HeatFluxes heat_fluxes(const EngineParams& params, const DressedBasis& basis,
                       const std::array<double, 3>& pops) {
  const double e10 = basis.e10();
  const double e20 = basis.e20();
  auto flux = [&](Bath bath) {
    const double lower = channel_weight(basis, bath, 1) *
                         (bath_rate(params, basis, bath, e10) * pops[1] -
                          bath_rate(params, basis, bath, -e10) * pops[0]);
    const double upper = channel_weight(basis, bath, 2) *
                         (bath_rate(params, basis, bath, e20) * pops[2] -
                          bath_rate(params, basis, bath, -e20) * pops[0]);
    return -e10 * lower - e20 * upper;
  };
  return {flux(Bath::hot), flux(Bath::cold)};
}

double instantaneous_heat_flux(const EngineParams& params, Bath bath, const Matrix& rho) {
  const DressedBasis basis = dressed_basis(params);
  const auto channels = jump_channels(params, basis);
  return (hamiltonian_at(params, 0.0) * apply_dissipator(channels, bath, rho)).trace().real();
}

double entropy_production(double beta_h, double beta_c, const HeatFluxes& fluxes) {
  return -(beta_h * fluxes.j_h + beta_c * fluxes.j_c);
}

bool engine_valid(const HeatFluxes& f) {
  // Fluxes at rounding level (no field, no engine) must not count as valid.
  const double tol = kFluxTolerance;
  return f.j_h > tol && f.j_c < -tol && (f.j_h + f.j_c) > tol;
}

SteadyStateReport performance_from_populations(const EngineParams& params,
                                               const std::array<double, 3>& populations) {
  const DressedBasis basis = dressed_basis(params);
  const HeatFluxes f = heat_fluxes(params, basis, populations);
  SteadyStateReport r;
  r.populations = populations;
  r.j_h = f.j_h;
  r.j_c = f.j_c;
  r.power = f.j_h + f.j_c;
  if (f.j_h != 0.0) r.efficiency = r.power / f.j_h;
  r.valid = engine_valid(f);
  return r;
}

SteadyStateReport performance(const EngineParams& params, const DensityMatrix& rho_ss) {
  const DressedBasis basis = dressed_basis(params);
  SteadyStateReport r = performance_from_populations(params, dressed_populations(rho_ss, basis));
  r.rho_ss = rho_ss.in_basis(Basis::bare, basis).matrix();
  return r;
}

}  // namespace qhesim
