// Copyright 2026 The enstele Authors
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

namespace enstele {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
   public:
    using Error::Error;
};

class LayoutError : public Error {
   public:
    using Error::Error;
};

/// Raised when a Hermitian-only routine receives a matrix whose
/// largest |a_ij - conj(a_ji)| exceeds the Hermiticity tolerance.
class NotHermitianError : public Error {
   public:
    NotHermitianError(const std::string &what, double max_asymmetry)
        : Error(what), max_asymmetry_(max_asymmetry) {}
    double max_asymmetry() const noexcept { return max_asymmetry_; }

   private:
    double max_asymmetry_;
};

/// A statistical operator or coefficient vector violated one of its invariants.
/// The message names the invariant.
class InvalidStateError : public Error {
   public:
    using Error::Error;
};

/// A preparation produced an operator with (near) zero trace.
class AnnihilatedError : public Error {
   public:
    using Error::Error;
};

/// Inconsistent protocol configuration (e.g. a message that does not match the preparation).
class ProtocolError : public Error {
   public:
    using Error::Error;
};

}  // namespace enstele
