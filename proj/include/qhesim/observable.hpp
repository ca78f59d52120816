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

#include "qhesim/qcsim.hpp"

namespace qhesim {

/// Observable rescaled into a PSD contraction, O~ = (O + |O|_HS I) / (2 |O|_HS),
/// together with its Cholesky factor O~ = L L^dagger.
struct ReducedObservable {
  Matrix o_tilde;
  double hs_norm = 0.0;
  Matrix chol_factor;  // lower triangular
  double jitter = 0.0; // diagonal shift needed for the factorization
};

/// Throws ZeroObservable for O = 0 and InvalidArgument for non-Hermitian O.
ReducedObservable reduce(const Matrix& o);

/// tr(O rho). Throws ImaginaryResidue if |Im tr(O rho)| > 1e-8.
double expectation_exact(const Matrix& o, const DensityMatrix& rho);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// <O> at the endpoint of the evolution encoded by `ks`, from circuits
/// pad(dilate2(L^dagger)) * pad(dilate2(M_k)) applied to each eigencomponent
/// of rho0. `o`, `rho0` and `ks` must be expressed in the same basis.
Estimate expectation_circuit(const Matrix& o, const DensityMatrix& rho0, const KrausSet& ks,
                             const CircuitOptions& options, std::uint64_t stream = 0);

}  // namespace qhesim
