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

#include <stdexcept>
#include <string>

namespace qhesim {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A matrix failed the density-matrix invariants (Hermitian, unit trace, PSD).
class InvalidState : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The Liouvillian kernel is not one-dimensional, so no unique steady state.
class DegenerateKernel : public Error {
 public:
  using Error::Error;
};

/// Trace drift during integration exceeded tolerance; the step is too large.
class StepSizeRejected : public Error {
 public:
  using Error::Error;
};

class NotContraction : public Error {
 public:
  using Error::Error;
};

class ZeroObservable : public Error {
 public:
  using Error::Error;
};

class ImaginaryResidue : public Error {
 public:
  using Error::Error;
};

class NonPositivePower : public Error {
 public:
  using Error::Error;
};

}  // namespace qhesim
