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

#include "qhesim/qcsim.hpp"

#include <cmath>
#include <sstream>

#include "qhesim/errors.hpp"
#include "qhesim/rng.hpp"

namespace qhesim {

std::vector<double> ShotHistogram::frequencies() const {
  std::vector<double> f(counts.size(), 0.0);
  if (shots == 0) return f;
  for (std::size_t i = 0; i < counts.size(); ++i)
    f[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
  return f;
}

CircuitRun run_circuit(std::span<const PaddedUnitary> unitaries, const Vector& initial,
                       std::uint64_t shots, const std::optional<NoiseModel>& noise,
                       std::uint64_t seed) {
  if (initial.size() == 0) throw DimensionMismatch("run_circuit: empty initial state");
  const int n_qubits = unitaries.empty() ? qubits_for(initial.size()) : unitaries.front().n_qubits;
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  for (const PaddedUnitary& u : unitaries)
    if (u.n_qubits != n_qubits || u.matrix.rows() != dim)
      throw DimensionMismatch("run_circuit: unitaries act on different registers");
  if (initial.size() > dim) throw DimensionMismatch("run_circuit: initial state larger than register");
  if (std::abs(initial.norm() - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "run_circuit: initial state norm " << initial.norm() << " is not 1";
    throw InvalidArgument(msg.str());
  }

  Vector psi = Vector::Zero(dim);
  psi.head(initial.size()) = initial;
  for (const PaddedUnitary& u : unitaries) psi = u.matrix * psi;

  std::vector<double> probs(static_cast<std::size_t>(dim));
  for (Eigen::Index j = 0; j < dim; ++j) probs[static_cast<std::size_t>(j)] = std::norm(psi(j));
  if (noise && !noise->is_ideal()) probs = apply_noise(*noise, n_qubits, probs);

  CircuitRun run;
  if (shots == 0) {
    run.distribution = std::move(probs);
    return run;
  }
  Rng rng(seed);
  ShotHistogram h;
  h.n_qubits = n_qubits;
  h.shots = shots;
  h.counts = sample_counts(probs, shots, rng);
  run.distribution = h.frequencies();
  run.histogram = std::move(h);
  return run;
}

std::vector<StateComponent> decompose_state(const DensityMatrix& rho) {
  const HermitianEigen e = eigh_descending(rho.matrix());
  std::vector<StateComponent> out;
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    if (e.values(i) >= 1e-12) out.push_back({e.values(i), e.vectors.col(i)});
  return out;
}

PayloadEstimate run_payload_circuits(std::span<const StateComponent> components,
                                     std::span<const std::vector<PaddedUnitary>> circuits,
                                     Eigen::Index payload, const CircuitOptions& options,
                                     std::uint64_t stream) {
  if (circuits.empty() || circuits.front().empty())
    throw InvalidArgument("run_payload_circuits: no circuits");
  if (options.reps < 1) throw InvalidArgument("run_payload_circuits: reps must be >= 1");
  const int n_qubits = circuits.front().front().n_qubits;
  const auto np = static_cast<std::size_t>(payload);
  const bool sampled = options.shots > 0;
  const int reps = sampled ? options.reps : 1;
  const double shots = static_cast<double>(options.shots);

  std::optional<CalibrationMatrix> calibration;
  if (options.mitigate) {
    const NoiseModel noise = options.noise.value_or(NoiseModel::ideal());
    const std::uint64_t cal_shots = options.calibration_shots.value_or(options.shots);
    calibration = calibration_matrix(noise, n_qubits, cal_shots,
                                     derive_seed(options.seed, {stream, 0xca11b4a7eULL}));
  }

  // Accumulators summed over repetitions.
  std::vector<double> mean(np, 0.0), var(np, 0.0), mit(np, 0.0), mit_var(np, 0.0);
  double total = 0.0, total_var = 0.0, mit_total = 0.0, mit_total_var = 0.0;

  auto binomial = [&](double q) { return sampled ? q * (1.0 - q) / shots : 0.0; };

  for (int r = 0; r < reps; ++r) {
    for (std::size_t i = 0; i < components.size(); ++i) {
      const double w = components[i].weight;
      for (std::size_t k = 0; k < circuits.size(); ++k) {
        const std::uint64_t seed = derive_seed(
            options.seed, {stream, static_cast<std::uint64_t>(r), i, k});
        const CircuitRun run = run_circuit(circuits[k], components[i].state, options.shots,
                                           options.noise, seed);
        double mass = 0.0;
        for (std::size_t j = 0; j < np; ++j) {
          const double f = run.distribution[j];
          mean[j] += w * f;
          var[j] += w * w * binomial(f);
          mass += f;
        }
        total += w * mass;
        total_var += w * w * binomial(std::min(mass, 1.0));

        if (calibration) {
          const MitigationResult m = mitigate(run.distribution, *calibration);
          double mmass = 0.0;
          for (std::size_t j = 0; j < np; ++j) {
            mit[j] += w * m.x[j];
            mit_var[j] += w * w * binomial(m.x[j]);
            mmass += m.x[j];
          }
          mit_total += w * mmass;
          mit_total_var += w * w * binomial(std::min(mmass, 1.0));
        }
      }
    }
  }

  const double nr = static_cast<double>(reps);
  PayloadEstimate out;
  out.values.resize(np);
  out.std_errors.resize(np);
  for (std::size_t j = 0; j < np; ++j) {
    out.values[j] = mean[j] / nr;
    out.std_errors[j] = std::sqrt(var[j] / nr / nr);
  }
  out.total = total / nr;
  out.total_std_error = std::sqrt(total_var / nr / nr);
  if (calibration) {
    std::vector<double> v(np), se(np);
    for (std::size_t j = 0; j < np; ++j) {
      v[j] = mit[j] / nr;
      se[j] = std::sqrt(mit_var[j] / nr / nr);
    }
    out.mitigated = std::move(v);
    out.mitigated_std_errors = std::move(se);
    out.mitigated_total = mit_total / nr;
    out.mitigated_total_std_error = std::sqrt(mit_total_var / nr / nr);
  }
  return out;
}

PopulationEstimate estimate_populations(const EngineParams& params, const DensityMatrix& rho0,
                                        const KrausSet& ks, const CircuitOptions& options,
                                        std::uint64_t stream) {
  if (rho0.dim() != 3 || ks.dim() != 3)
    throw DimensionMismatch("estimate_populations: expects a 3-level state and channel");
  const DressedBasis basis = dressed_basis(params);
  const DensityMatrix rho_d = rho0.in_basis(Basis::dressed, basis);
  const KrausSet ks_d = ks.in_basis(Basis::dressed, basis);

  std::vector<std::vector<PaddedUnitary>> circuits;
  for (const Matrix& m : ks_d.operators()) {
    if (options.prune_zero_kraus && m.norm() == 0.0) continue;
    circuits.push_back({pad_to_qubits(dilate1(m), m.rows())});
  }
  const auto components = decompose_state(rho_d);
  const PayloadEstimate est = run_payload_circuits(components, circuits, 3, options, stream);

  PopulationEstimate out;
  for (std::size_t j = 0; j < 3; ++j) {
    out.values[j] = est.values[j];
    out.std_errors[j] = est.std_errors[j];
  }
  if (est.mitigated) {
    std::array<double, 3> v{}, se{};
    for (std::size_t j = 0; j < 3; ++j) {
      v[j] = (*est.mitigated)[j];
      se[j] = (*est.mitigated_std_errors)[j];
    }
    out.mitigated = v;
    out.mitigated_std_errors = se;
  }
  return out;
}

}  // namespace qhesim
