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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qhesim/linalg.hpp"
#include "qhesim/model.hpp"

namespace qhesim {

enum class Basis { bare, dressed };

/// Hermitian, unit-trace, positive semidefinite matrix tagged with the basis
/// it is expressed in. Construction through `from_matrix` validates all
/// three invariants at 1e-10.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  static DensityMatrix from_matrix(const Matrix& m, Basis basis = Basis::bare);
  static DensityMatrix pure(const Vector& psi, Basis basis = Basis::bare);
  static DensityMatrix maximally_mixed(Eigen::Index n, Basis basis = Basis::bare);
  /// Hermitizes but skips validation. For states produced by trusted
  /// numerics (integrator output, channel output) whose tolerance budget is
  /// checked separately.
  static DensityMatrix trusted(const Matrix& m, Basis basis);

  const Matrix& matrix() const { return data_; }
  Basis basis() const { return basis_; }
  Eigen::Index dim() const { return data_.rows(); }
  double trace() const { return data_.trace().real(); }
  double min_eigenvalue() const;

  /// Change of basis through the dressed eigenvectors.
  DensityMatrix in_basis(Basis target, const DressedBasis& basis) const;

 private:
  DensityMatrix(Matrix m, Basis basis) : data_(std::move(m)), basis_(basis) {}

  Matrix data_;
  Basis basis_;
};

/// One dissipation channel: jump operator with its total rate (weight times
/// bath spectral rate).
struct JumpChannel {
  Bath bath;
  Matrix op;
  double rate;
};

/// Decay |eps0><eps_m| and excitation |eps_m><eps0| channels for m = 1, 2
/// and both baths, in the bare basis. Zero-rate channels are kept.
std::vector<JumpChannel> jump_channels(const EngineParams& params, const DressedBasis& basis);

/// Liouvillian superoperator for `hamiltonian` and `channels` acting on
/// column-stacked density matrices.
Matrix liouvillian(const Matrix& hamiltonian, std::span<const JumpChannel> channels);

/// Rotating-frame GKLS generator of the engine (n^2 x n^2).
Matrix generator(const EngineParams& params);

/// D_alpha(rho) restricted to the channels of `bath`.
Matrix apply_dissipator(std::span<const JumpChannel> channels, Bath bath, const Matrix& rho);

/// Default integrator step: 1e-3 over the fastest rate or Bohr frequency.
double default_time_step(const Matrix& superop);

/// Fixed-step integrator for a time-independent generator. For a linear
/// autonomous system one RK4 step is exactly the degree-4 Taylor polynomial
/// of exp(h L); the propagator caches that matrix and advances by repeated
/// squaring, which gives the same iterates as stepping h at a time.
class Propagator {
 public:
  Propagator(Matrix superop, double dt);

  /// Advance `rho` by `duration` using ceil(duration / dt) equal steps.
  /// Throws StepSizeRejected if the trace drifts by more than 1e-6.
  Matrix advance(const Matrix& rho, double duration) const;

  /// Superoperator mapping vec(rho) over `duration` (identity for 0).
  Matrix transfer_matrix(double duration) const;

  const Matrix& superop() const { return superop_; }
  double dt() const { return dt_; }

 private:
  Matrix step_matrix(double h) const;

  Matrix superop_;
  double dt_;
};

struct TrajectoryPoint {
  double t;
  Matrix rho;  // bare basis, rotating frame
  std::array<double, 3> populations;  // dressed
  double trace;
  double min_eigenvalue;
};

/// Propagate `rho0` under the engine generator and emit the state at each of
/// `sample_times` (non-decreasing, >= 0). dt <= 0 selects the default step.
std::vector<TrajectoryPoint> propagate(const EngineParams& params, const DensityMatrix& rho0,
                                       std::span<const double> sample_times, double dt = 0.0);

/// Convenience: the state after `t_final`.
DensityMatrix evolve(const EngineParams& params, const DensityMatrix& rho0, double t_final,
                     double dt = 0.0);

/// Null vector of the generator via SVD. Throws DegenerateKernel when the
/// second-smallest singular value is below 1e-8.
DensityMatrix steady_state(const EngineParams& params);
DensityMatrix steady_state(const Matrix& superop, Basis basis = Basis::bare);

/// Populations <eps_m|rho|eps_m>.
std::array<double, 3> dressed_populations(const DensityMatrix& rho, const DressedBasis& basis);

struct HeatFluxes {
  double j_h;
  double j_c;
};

/// Steady-state heat currents from dressed populations (rho00, rho11, rho22).
/// J > 0 means heat flowing into the system.
HeatFluxes heat_fluxes(const EngineParams& params, const DressedBasis& basis,
                       const std::array<double, 3>& populations);

/// Instantaneous energy flow tr(H(0) D_alpha(rho)) for a bare-basis state.
double instantaneous_heat_flux(const EngineParams& params, Bath bath, const Matrix& rho);

/// Entropy production rate -(beta_h J_h + beta_c J_c); non-negative at any
/// steady state.
double entropy_production(double beta_h, double beta_c, const HeatFluxes& fluxes);

struct SteadyStateReport {
  Matrix rho_ss;
  std::array<double, 3> populations;
  double j_h = 0.0;
  double j_c = 0.0;
  double power = 0.0;
  std::optional<double> efficiency;  // unset when J_h = 0
  bool valid = false;
};

/// Fluxes and power below this magnitude are treated as zero.
inline constexpr double kFluxTolerance = 1e-12;

/// J_h > 0, J_c < 0 and P > 0, each beyond kFluxTolerance.
bool engine_valid(const HeatFluxes& fluxes);

SteadyStateReport performance(const EngineParams& params, const DensityMatrix& rho_ss);
SteadyStateReport performance_from_populations(const EngineParams& params,
                                               const std::array<double, 3>& populations);

}  // namespace qhesim
