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
#include <span>
#include <string>
#include <vector>

#include "qhesim/qcsim.hpp"

namespace qhesim {

/// Relative error assigned to sign-inconsistent cells. Kept out of the
/// max-normalization.
inline constexpr double kInvalidSentinel = 1.05;

/// One row of the L9(3^3) orthogonal design: temperature pair and the four
/// dissipation rates. Evolution time follows gamma_h(eps20) * t = 4.
struct SweepCase {
  int case_id = 0;
  double beta_h = 0.0;
  double beta_c = 0.0;
  double gamma_h_e20 = 0.0;
  double gamma_c_e10 = 0.0;
  double gamma_h_e10 = 0.0;
  double gamma_c_e20 = 0.0;
  double evolution_time = 0.0;
  /// Row kept as tabulated although it breaks the level pattern.
  bool flagged = false;
  std::string note;

  EngineParams params(double lambda, double omega20) const;
  double carnot_efficiency() const { return 1.0 - beta_h / beta_c; }
};

std::vector<SweepCase> l9_cases();
SweepCase l9_case(int case_id);  // throws InvalidArgument outside 1..9

/// lambda in [lambda_min, lambda_max] inclusive; omega20 in
/// (omega20_min, omega20_max], the open end skipped by one grid spacing.
struct GridSpec {
  int n_lambda = 21;
  int n_omega20 = 21;
  double lambda_min = 0.0;
  double lambda_max = 1.0;
  double omega20_min = 1.0;
  double omega20_max = 5.0;

  double lambda(int i) const;
  double omega20(int j) const;
  void validate() const;
};

enum class CellStatus { comparable, sentinel, masked };

struct ErrorValue {
  double value = 0.0;  // normalized error, sentinel, or NaN when masked
  CellStatus status = CellStatus::masked;
};

enum class ErrorKind { power, efficiency };

/// Per-cell inputs of the relative-error map.
struct CellComparison {
  double theo = 0.0;
  double sim = 0.0;
  bool valid_theo = false;
  bool valid_sim = false;
  bool defined_theo = true;  // efficiency: J_h != 0
  bool defined_sim = true;
};

/// Normalized relative error |(T - S)/T| / max over comparable cells.
/// Masked: theory fails the engine condition, or the simulation does
/// without a sign conflict. Sentinel: opposite signs, or for efficiency a
/// simulated value above `carnot`.
std::vector<ErrorValue> relative_error(std::span<const CellComparison> cells, ErrorKind kind,
                                       double carnot);

struct SweepCell {
  int i_lambda = 0;
  int j_omega20 = 0;
  double lambda = 0.0;
  double omega20 = 0.0;
  double p_theo = 0.0;
  double p_sim = 0.0;
  double eta_theo = 0.0;  // NaN when undefined
  double eta_sim = 0.0;
  double jh_sim = 0.0;
  double jc_sim = 0.0;
  bool valid_theo = false;
  bool valid_sim = false;
  ErrorValue er_p;
  ErrorValue er_eta;
  std::string error;  // per-cell failure message, empty on success
};

struct ErrorMap {
  SweepCase sweep_case;
  GridSpec grid;
  std::vector<SweepCell> cells;  // lambda-major
};

enum class SweepBackend { exact, circuit };

struct SweepOptions {
  SweepBackend backend = SweepBackend::circuit;
  CircuitOptions circuit;
  /// Worker threads; 0 = hardware concurrency.
  unsigned threads = 0;
};

/// Theory from the exact steady state; simulation either the exact steady
/// state again (self-comparison) or circuit-estimated populations of the
/// state evolved from |eps0> for the case's evolution time, turned into
/// heat currents. Cell failures are recorded, never thrown.
ErrorMap run_case(const SweepCase& sweep_case, const GridSpec& grid,
                  const SweepOptions& options);

struct SweepSummary {
  int case_id = 0;
  std::size_t cells = 0;
  std::size_t valid_theo = 0;
  std::size_t valid_sim = 0;
  std::size_t comparable_p = 0;
  std::size_t sentinel_p = 0;
  std::size_t comparable_eta = 0;
  std::size_t sentinel_eta = 0;
  double max_er_p = 0.0;
  double median_er_p = 0.0;
  double max_er_eta = 0.0;
  double median_er_eta = 0.0;
  bool flagged = false;
};

SweepSummary summarize(const ErrorMap& map);

}  // namespace qhesim
