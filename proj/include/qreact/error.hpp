// Copyright 2026 The qreact Authors
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

namespace qreact {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand widths or vector lengths disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Requested size exceeds a configured cap (dense matrix, statevector, ...).
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// Imaginary weight survived where a Hermitian operator was expected.
class HermiticityError : public Error {
 public:
  using Error::Error;
};

/// A tapered qubit carries X/Y weight after simplification.
class SymmetryViolationError : public Error {
 public:
  using Error::Error;
};

/// Empty symmetry sector or similar out-of-domain request.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Non-finite objective or other numerical breakdown.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. Carries the 1-based line number when known.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, int line = 0)
      : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + what
                                 : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qreact
