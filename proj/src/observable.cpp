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

#include "qhesim/observable.hpp"

#include <cmath>
#include <sstream>

#include "qhesim/errors.hpp"

namespace qhesim {

ReducedObservable reduce(const Matrix& o) {
  if (o.rows() != o.cols()) throw DimensionMismatch("reduce: observable must be square");
  const double hs = o.norm();
  if (hs == 0.0) throw ZeroObservable("reduce: observable is zero");
  if ((o - o.adjoint()).norm() > 1e-10 * std::max(1.0, hs))
    throw InvalidArgument("reduce: observable is not Hermitian");

  const Eigen::Index n = o.rows();
  ReducedObservable r;
  r.hs_norm = hs;
  r.o_tilde = hermitian_part((o + hs * Matrix::Identity(n, n)) / (2.0 * hs));

  for (double jitter : {0.0, 1e-14, 1e-12}) {
    Eigen::LLT<Matrix> llt(r.o_tilde + jitter * Matrix::Identity(n, n));
    if (llt.info() != Eigen::Success) continue;
    Matrix l = llt.matrixL();
    if (!l.allFinite()) continue;
    r.chol_factor = std::move(l);
    r.jitter = jitter;
    return r;
  }
  throw Error("reduce: Cholesky factorization failed after jitter escalation");
}

double expectation_exact(const Matrix& o, const DensityMatrix& rho) {
  if (o.rows() != rho.dim() || o.cols() != rho.dim())
    throw DimensionMismatch("expectation_exact: dimension mismatch");
  const Complex v = (o * rho.matrix()).trace();
  if (std::abs(v.imag()) > 1e-8) {
    std::ostringstream msg;
    msg << "expectation_exact: imaginary residue " << v.imag() << " (non-Hermitian observable?)";
    throw ImaginaryResidue(msg.str());
  }
  return v.real();
}

Estimate expectation_circuit(const Matrix& o, const DensityMatrix& rho0, const KrausSet& ks,
                             const CircuitOptions& options, std::uint64_t stream) {
  if (ks.basis() != rho0.basis())
    throw InvalidArgument("expectation_circuit: state and Kraus set in different bases");
  if (o.rows() != rho0.dim() || ks.dim() != rho0.dim())
    throw DimensionMismatch("expectation_circuit: dimension mismatch");

  const ReducedObservable red = reduce(o);
  const Eigen::Index n = rho0.dim();
  const PaddedUnitary readout = pad_to_qubits(dilate2(red.chol_factor.adjoint()), n);

  std::vector<std::vector<PaddedUnitary>> circuits;
  circuits.reserve(ks.size());
  for (const Matrix& m : ks.operators()) {
    if (options.prune_zero_kraus && m.norm() == 0.0) continue;
    circuits.push_back({pad_to_qubits(dilate2(m), n, readout.n_qubits), readout});
  }
  const auto components = decompose_state(rho0);
  const PayloadEstimate est = run_payload_circuits(components, circuits, n, options, stream);

  const bool use_mitigated = est.mitigated_total.has_value();
  const double reduced = use_mitigated ? *est.mitigated_total : est.total;
  const double reduced_se = use_mitigated ? *est.mitigated_total_std_error : est.total_std_error;
  return {2.0 * red.hs_norm * reduced - red.hs_norm, 2.0 * red.hs_norm * reduced_se};
}

}  // namespace qhesim
