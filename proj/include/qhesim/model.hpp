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

#include <optional>

#include "qhesim/linalg.hpp"

namespace qhesim {

/// Physical constants of the three-level engine. Energies and rates are in
/// units of omega10 = omega1 - omega0, with hbar = k_B = 1 and omega0 = 0.
/// The defaults are the reference operating point (beta_c = 5, beta_h = 1,
/// omega20 = 2.5, lambda = 0.5) with the level-1 dissipation rates.
struct EngineParams {
  double omega0 = 0.0;
  double omega1 = 1.0;
  double omega2 = 2.5;
  double lambda_field = 0.5;
  /// Drive frequency. Unset means resonance with the dressed gap eps2 - eps1.
  std::optional<double> omega_drive;
  double beta_h = 1.0;
  double beta_c = 5.0;
  double gamma_h_e20 = 0.5;
  double gamma_c_e10 = 0.5;
  double gamma_h_e10 = 0.0;
  double gamma_c_e20 = 0.0;

  /// Throws InvalidArgument on level ordering, negative rates/field, or
  /// non-positive inverse temperatures.
  void validate() const;

  /// Explicit drive frequency, or the resonant value when unset.
  double drive_frequency() const;

  double carnot_efficiency() const { return 1.0 - beta_h / beta_c; }

  bool operator==(const EngineParams&) const = default;
};

enum class Bath { hot, cold };

/// Eigenbasis of the driven Hamiltonian at the reference time.
struct DressedBasis {
  double eps0 = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double theta = 0.0;  // mixing angle in [0, pi)
  Matrix vectors;      // columns |eps0>, |eps1>, |eps2> in the bare basis

  double e10() const { return eps1 - eps0; }
  double e20() const { return eps2 - eps0; }
  double cos_theta() const;
  double energy(int level) const;
};

DressedBasis dressed_basis(const EngineParams& params);

/// Lab-frame Hamiltonian with the single-tone field lambda e^{+-i omega t}
/// on the |1><2| / |2><1| entries.
Matrix hamiltonian_at(const EngineParams& params, double t);

/// Time-independent Hamiltonian in the frame co-rotating with the drive
/// phase on level |2>: H(0) - omega |2><2|. This generates the coherent
/// part of the dynamics; the system energy observable is H(0).
Matrix rotating_frame_hamiltonian(const EngineParams& params);

/// Bath spectral rate at a signed dressed transition energy. Positive
/// energies return the configured decay rate; negative energies the
/// detailed-balance excitation rate e^{-beta |eps|} gamma(|eps|). Throws
/// InvalidArgument unless |energy| matches eps10 or eps20 within 1e-9.
double bath_rate(const EngineParams& params, const DressedBasis& basis, Bath bath,
                 double energy);
double bath_rate(const EngineParams& params, Bath bath, double energy);

/// Dissipation weight of bath `bath` on the dressed transition 0 <-> level:
/// hot (1 - cos)/2, (1 + cos)/2 and cold (1 + cos)/2, (1 - cos)/2 for
/// levels 1, 2.
double channel_weight(const DressedBasis& basis, Bath bath, int level);

}  // namespace qhesim
