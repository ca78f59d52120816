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

#include "qhesim/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qhesim/errors.hpp"

namespace qhesim {

namespace {

double half_gap(const EngineParams& p) {
  const double d = 0.5 * (p.omega2 - p.omega1);
  return std::sqrt(d * d + p.lambda_field * p.lambda_field);
}

}  // namespace

void EngineParams::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidArgument("EngineParams: " + msg); };
  const double values[] = {omega0,      omega1,      omega2,      lambda_field, beta_h,
                           beta_c,      gamma_h_e20, gamma_c_e10, gamma_h_e10,  gamma_c_e20};
  for (double v : values)
    if (!std::isfinite(v)) fail("non-finite value");
  if (!(omega1 > omega0 && omega2 > omega1)) fail("requires omega2 > omega1 > omega0");
  if (lambda_field < 0.0) fail("lambda_field must be >= 0");
  if (!(beta_h > 0.0 && beta_c > 0.0)) fail("inverse temperatures must be > 0");
  if (gamma_h_e20 < 0.0 || gamma_c_e10 < 0.0 || gamma_h_e10 < 0.0 || gamma_c_e20 < 0.0)
    fail("dissipation rates must be >= 0");
  if (omega_drive && !(std::isfinite(*omega_drive) && *omega_drive >= 0.0))
    fail("omega_drive must be finite and >= 0");
  // The lower dressed level must stay above the ground level, otherwise the
  // dressed gaps change sign and the bath assignments are meaningless.
  if (0.5 * (omega1 + omega2) - half_gap(*this) <= omega0)
    fail("field too strong: dressed level eps1 falls below eps0");
}

double EngineParams::drive_frequency() const {
  if (omega_drive) return *omega_drive;
  return 2.0 * half_gap(*this);
}

double DressedBasis::cos_theta() const { return std::cos(theta); }

double DressedBasis::energy(int level) const {
  switch (level) {
    case 0: return eps0;
    case 1: return eps1;
    case 2: return eps2;
    default: throw InvalidArgument("DressedBasis::energy: level must be 0, 1 or 2");
  }
}

DressedBasis dressed_basis(const EngineParams& params) {
  params.validate();
  const double mean = 0.5 * (params.omega1 + params.omega2);
  const double r = half_gap(params);

  DressedBasis b;
  b.eps0 = params.omega0;
  b.eps1 = mean - r;
  b.eps2 = mean + r;
  // cos(theta) = (w2 - w1) / sqrt((w2 - w1)^2 + 4 lambda^2), theta in [0, pi)
  b.theta = std::atan2(2.0 * params.lambda_field, params.omega2 - params.omega1);

  const double c = std::cos(0.5 * b.theta);
  const double s = std::sin(0.5 * b.theta);
  b.vectors = Matrix::Zero(3, 3);
  b.vectors(0, 0) = 1.0;
  b.vectors(1, 1) = c;
  b.vectors(2, 1) = -s;
  b.vectors(1, 2) = s;
  b.vectors(2, 2) = c;
  return b;
}

Matrix hamiltonian_at(const EngineParams& params, double t) {
  if (t < 0.0) throw InvalidArgument("hamiltonian_at: t must be >= 0");
  const Complex phase = std::polar(1.0, params.drive_frequency() * t);
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = params.omega0;
  h(1, 1) = params.omega1;
  h(2, 2) = params.omega2;
  h(1, 2) = params.lambda_field * phase;
  h(2, 1) = params.lambda_field * std::conj(phase);
  return h;
}

Matrix rotating_frame_hamiltonian(const EngineParams& params) {
  Matrix h = hamiltonian_at(params, 0.0);
  h(2, 2) -= params.drive_frequency();
  return h;
}

double bath_rate(const EngineParams& params, const DressedBasis& basis, Bath bath,
                 double energy) {
  const double magnitude = std::abs(energy);
  constexpr double kMatch = 1e-9;
  double gamma = 0.0;
  if (std::abs(magnitude - basis.e10()) <= kMatch) {
    gamma = bath == Bath::hot ? params.gamma_h_e10 : params.gamma_c_e10;
  } else if (std::abs(magnitude - basis.e20()) <= kMatch) {
    gamma = bath == Bath::hot ? params.gamma_h_e20 : params.gamma_c_e20;
  } else {
    std::ostringstream msg;
    msg << "bath_rate: energy " << energy << " is not +-eps10 (" << basis.e10()
        << ") or +-eps20 (" << basis.e20() << ")";
    throw InvalidArgument(msg.str());
  }
  if (energy >= 0.0) return gamma;
  const double beta = bath == Bath::hot ? params.beta_h : params.beta_c;
  return std::exp(-beta * magnitude) * gamma;
}

double bath_rate(const EngineParams& params, Bath bath, double energy) {
  return bath_rate(params, dressed_basis(params), bath, energy);
}

double channel_weight(const DressedBasis& basis, Bath bath, int level) {
  const double c = basis.cos_theta();
  const bool plus = (bath == Bath::hot) == (level == 2);
  if (level != 1 && level != 2) throw InvalidArgument("channel_weight: level must be 1 or 2");
  return plus ? 0.5 * (1.0 + c) : 0.5 * (1.0 - c);
}

}  // namespace qhesim
