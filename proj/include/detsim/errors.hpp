// Copyright 2026 The detsim Authors
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

#ifndef DETSIM_ERRORS_HPP
#define DETSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace detsim {

/// Base class for every error detsim raises on bad inputs or failed runs.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Vector/matrix/grid sizes do not match.
struct DimensionError : Error {
    using Error::Error;
};

/// A state or weight list is outside the normalization tolerance.
struct NormalizationError : Error {
    using Error::Error;
};

/// Malformed input file.
struct ParseError : Error {
    using Error::Error;
};

/// A scattering context/reservoir pair has no table entry.
struct UnknownReactionError : Error {
    using Error::Error;
};

/// A documented size cap was exceeded (grid qubits, option volume, ...).
struct CapError : Error {
    using Error::Error;
};

/// Database apply was requested for a key that has no stored entry.
struct MissingEntryError : Error {
    using Error::Error;
};

/// Fixed-point iteration failed to converge.
struct DivergenceError : Error {
    using Error::Error;
};

/// A classical trajectory left the grid range (-A, A).
struct GridRangeError : Error {
    using Error::Error;
};

/// Persistence I/O failed; never an excuse to rebuild differently.
struct IoError : Error {
    using Error::Error;
};

}  // namespace detsim

#endif
