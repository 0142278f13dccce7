/*
 * Copyright 2026 the cloudchem authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace cloudchem {

/// Base class for all cloudchem errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (geometry / basis / orbital files). Carries the
/// 1-based line number when one is known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  explicit ParseError(const std::string& message) : Error(message), line_(-1) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Semantically invalid input (bad electron count, bad settings, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Requested an integral or evaluation outside the supported geometry
/// (e.g. two-electron integrals over primitives on different centers).
class UnsupportedGeometryError : public Error {
 public:
  using Error::Error;
};

/// Basis overlap matrix is numerically singular.
class LinearDependenceError : public Error {
 public:
  using Error::Error;
};

/// A quadrature self-check failed to converge; carries the best estimate.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& message, double estimate)
      : Error(message), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

/// Evaluation requested at a Coulomb singularity; carries the nucleus index.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& message, std::size_t nucleus_index)
      : Error(message), nucleus_index_(nucleus_index) {}
  std::size_t nucleus_index() const { return nucleus_index_; }

 private:
  std::size_t nucleus_index_;
};

}  // namespace cloudchem
