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

#include "qhesim/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qhesim/errors.hpp"
#include "qhesim/dilation.hpp"
#include "qhesim/rng.hpp"

namespace qhesim {

int CalibrationMatrix::n_qubits() const { return qubits_for(g.rows()); }

CalibrationMatrix calibration_matrix(const NoiseModel& noise, int n_qubits, std::uint64_t shots,
                                     std::uint64_t seed) {
  CalibrationMatrix cal;
  cal.noise = noise;
  cal.shots = shots;
  cal.seed = seed;
  const RealMatrix exact = noise_transfer_matrix(noise, n_qubits);
  if (shots == 0) {
    cal.g = exact;
    return cal;
  }
  cal.g.resize(exact.rows(), exact.cols());
  for (Eigen::Index j = 0; j < exact.cols(); ++j) {
    Rng rng(derive_seed(seed, {0xca1bULL, static_cast<std::uint64_t>(j)}));
    const RealVector col = exact.col(j);
    const auto counts = sample_counts({col.data(), static_cast<std::size_t>(col.size())}, shots, rng);
    for (Eigen::Index i = 0; i < exact.rows(); ++i)
      cal.g(i, j) = static_cast<double>(counts[static_cast<std::size_t>(i)]) / static_cast<double>(shots);
  }
  return cal;
}

std::vector<double> project_to_simplex(std::span<const double> y) {
  std::vector<double> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumsum += sorted[k];
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) tau = t;
  }
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = std::max(y[i] - tau, 0.0);
  return out;
}

namespace {

// Primal active-set method for min 1/2 x'Qx - c'x  s.t.  1'x = 1, x >= 0.
RealVector simplex_qp(const RealMatrix& q, const RealVector& c, const MitigationOptions& opts,
                      int& iterations) {
  const Eigen::Index n = q.rows();
  RealVector x = RealVector::Constant(n, 1.0 / static_cast<double>(n));
  std::vector<bool> active(static_cast<std::size_t>(n), false);

  for (iterations = 0; iterations < opts.max_iterations; ++iterations) {
    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!active[static_cast<std::size_t>(i)]) free.push_back(i);
    const auto nf = static_cast<Eigen::Index>(free.size());

    const RealVector g = q * x - c;
    RealMatrix kkt = RealMatrix::Zero(nf + 1, nf + 1);
    RealVector rhs = RealVector::Zero(nf + 1);
    for (Eigen::Index a = 0; a < nf; ++a) {
      for (Eigen::Index b = 0; b < nf; ++b) kkt(a, b) = q(free[a], free[b]);
      kkt(a, nf) = 1.0;
      kkt(nf, a) = 1.0;
      rhs(a) = -g(free[a]);
    }
    const RealVector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    const RealVector p = sol.head(nf);

    if (p.cwiseAbs().maxCoeff() <= opts.tolerance) {
      const double nu = sol(nf);
      Eigen::Index release = -1;
      double most_negative = -opts.tolerance;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!active[static_cast<std::size_t>(i)]) continue;
        const double lambda = g(i) + nu;
        if (lambda < most_negative) {
          most_negative = lambda;
          release = i;
        }
      }
      if (release < 0) return x;
      active[static_cast<std::size_t>(release)] = false;
      continue;
    }

    double alpha = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index a = 0; a < nf; ++a) {
      if (p(a) < 0.0) {
        const double ratio = -x(free[a]) / p(a);
        if (ratio < alpha) {
          alpha = ratio;
          blocking = free[a];
        }
      }
    }
    for (Eigen::Index a = 0; a < nf; ++a) x(free[a]) += alpha * p(a);
    if (blocking >= 0) {
      x(blocking) = 0.0;
      active[static_cast<std::size_t>(blocking)] = true;
    }
  }
  return x;
}

}  // namespace

MitigationResult mitigate(std::span<const double> v_in, const RealMatrix& g,
                          MitigationOptions options) {
  const auto n = static_cast<Eigen::Index>(v_in.size());
  if (g.rows() != n || g.cols() != n) throw DimensionMismatch("mitigate: G and v sizes differ");
  const RealVector v = Eigen::Map<const RealVector>(v_in.data(), n);

  MitigationResult result;
  Eigen::JacobiSVD<RealMatrix> svd(g);
  const RealVector& s = svd.singularValues();
  result.singular_calibration = s(n - 1) <= 1e-12 * s(0);

  RealVector x;
  if (!options.constrained) {
    x = g.completeOrthogonalDecomposition().solve(v);
  } else {
    x = simplex_qp(g.transpose() * g, g.transpose() * v, options, result.iterations);
    x = x.cwiseMax(0.0);
    x /= x.sum();
  }
  result.x.assign(x.data(), x.data() + n);
  result.residual = (v - g * x).squaredNorm();
  return result;
}

MitigationResult mitigate(std::span<const double> v, const CalibrationMatrix& calibration,
                          MitigationOptions options) {
  return mitigate(v, calibration.g, options);
}

}  // namespace qhesim
