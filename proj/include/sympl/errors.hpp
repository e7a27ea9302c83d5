// Copyright 2026 sympl contributors.
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

#ifndef SYMPL_ERRORS_HPP
#define SYMPL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sympl {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad matrix file, bad dimensions in a structured payload.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Dimension mismatch or an odd-sized matrix where a 2n x 2n one is required.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

// Input fails the positive definiteness test. Carries the offending
// eigenvalue so callers can report how far from admissible the input is.
class NotPositiveDefiniteError : public Error {
 public:
  NotPositiveDefiniteError(const std::string& what, double smallest_eigenvalue)
      : Error(what), smallest_eigenvalue_(smallest_eigenvalue) {}
  double smallest_eigenvalue() const { return smallest_eigenvalue_; }

 private:
  double smallest_eigenvalue_;
};

// An iterative eigenvalue sweep hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double matrix_norm, int iterations)
      : Error(what), matrix_norm_(matrix_norm), iterations_(iterations) {}
  double matrix_norm() const { return matrix_norm_; }
  int iterations() const { return iterations_; }

 private:
  double matrix_norm_;
  int iterations_;
};

// A computed decomposition failed its own residual bounds.
class ResidualError : public Error {
 public:
  ResidualError(const std::string& what, double symplectic_residual,
                double congruence_residual)
      : Error(what),
        symplectic_residual_(symplectic_residual),
        congruence_residual_(congruence_residual) {}
  double symplectic_residual() const { return symplectic_residual_; }
  double congruence_residual() const { return congruence_residual_; }

 private:
  double symplectic_residual_;
  double congruence_residual_;
};

// A precondition on caller-supplied data does not hold (non-unit direction
// vector, inconsistent multiplicity indices, frame that is not symplectic).
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

// The gradient was requested at a point where the function is not
// differentiable (the requested index sits inside an eigenvalue cluster).
class GapError : public Error {
 public:
  GapError(const std::string& what, std::size_t cluster_first,
           std::size_t cluster_last)
      : Error(what), cluster_first_(cluster_first), cluster_last_(cluster_last) {}
  std::size_t cluster_first() const { return cluster_first_; }
  std::size_t cluster_last() const { return cluster_last_; }

 private:
  std::size_t cluster_first_;
  std::size_t cluster_last_;
};

// Finite differences disagree with the closed form beyond the CLI gate.
class FdMismatchError : public Error {
 public:
  FdMismatchError(const std::string& what, double discrepancy)
      : Error(what), discrepancy_(discrepancy) {}
  double discrepancy() const { return discrepancy_; }

 private:
  double discrepancy_;
};

}  // namespace sympl

#endif  // SYMPL_ERRORS_HPP
