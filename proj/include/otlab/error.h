// Copyright 2026 The otlab Authors
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
#include <vector>

namespace otlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Input violates a documented invariant (unitarity, normalization, ...).
class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string &what) : Error(what) {}
    ValidationError(const std::string &what, std::vector<std::string> violations)
        : Error(what), violations_(std::move(violations)) {}
    const std::vector<std::string> &violations() const { return violations_; }

  private:
    std::vector<std::string> violations_;
};

class RankError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
  public:
    using Error::Error;
};

class PreconditionError : public Error {
  public:
    using Error::Error;
};

class UnsupportedError : public Error {
  public:
    using Error::Error;
};

/// Numerical method failed to reach its tolerance. Carries the best residuals seen.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &what, double primal_residual, double dual_residual, double gap)
        : Error(what), primal_residual_(primal_residual), dual_residual_(dual_residual), gap_(gap) {}
    double primal_residual() const { return primal_residual_; }
    double dual_residual() const { return dual_residual_; }
    double gap() const { return gap_; }

  private:
    double primal_residual_;
    double dual_residual_;
    double gap_;
};

}  // namespace otlab
