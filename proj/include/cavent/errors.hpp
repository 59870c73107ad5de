// Copyright 2026 The cavity-entangler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace cavent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong dimensions, indices out of range, empty inputs.
class ArgumentError : public Error {
   public:
    using Error::Error;
};

/// A photon number at or above the Fock-space cutoff was requested.
class TruncationError : public Error {
   public:
    using Error::Error;
};

/// Parameters outside the range where a closed form is defined (e.g. kappa >= 4 lambda).
class RegimeError : public Error {
   public:
    using Error::Error;
};

/// Dense state-vector operation requested beyond the supported register size.
class CapacityError : public Error {
   public:
    using Error::Error;
};

/// Closed-form map applied to a state with support outside its derivation sector.
class UnsupportedSectorError : public Error {
   public:
    using Error::Error;
};

/// Non-finite numbers appeared in a computation.
class NumericError : public Error {
   public:
    using Error::Error;
};

/// Errors that carry the magnitude of the offending residual.
class ResidualError : public Error {
   public:
    ResidualError(const std::string &what, double residual) : Error(what), residual_(residual) {
    }
    double residual() const noexcept {
        return residual_;
    }

   private:
    double residual_;
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public ResidualError {
   public:
    using ResidualError::ResidualError;
};

/// A subsystem expected to be in a product state was still entangled.
class FactorizationError : public ResidualError {
   public:
    using ResidualError::ResidualError;
};

/// A protocol failed to reach its target configuration (e.g. W-state disentanglement).
class ProtocolError : public ResidualError {
   public:
    using ResidualError::ResidualError;
};

}  // namespace cavent
