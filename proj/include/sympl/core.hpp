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

#ifndef SYMPL_CORE_HPP
#define SYMPL_CORE_HPP

#include <vector>

#include "sympl/matrix.hpp"

// Dense symmetric and Hermitian eigensolvers: Householder reduction to
// tridiagonal form followed by the implicit-shift QL sweep. Degenerate
// eigenspaces get an arbitrary orthonormal basis; downstream code treats any
// valid basis as equivalent.

namespace sympl {

enum class EigenOrder { ascending, descending };

struct EigenDecomposition {
  std::vector<double> values;
  Mat vectors;  // column j is the eigenvector for values[j]
};

struct HermEigenDecomposition {
  std::vector<double> values;  // descending
  CMat vectors;
};

// Full eigendecomposition of a symmetric matrix, eigenvalues in the
// requested order. Eigenvector signs are fixed so the largest-magnitude
// entry is positive.
EigenDecomposition sym_eigen(const SymMatrix& s, EigenOrder order);

// Eigenvalues only, in the requested order.
std::vector<double> sym_eigenvalues(const SymMatrix& s, EigenOrder order);

// Full eigendecomposition of a Hermitian matrix, eigenvalues descending.
// Each eigenvector's phase is fixed so its largest-magnitude entry is real
// and positive.
HermEigenDecomposition herm_eigen(const HermMatrix& h);

// Symmetric positive definite square root. Rejects the input unless every
// eigenvalue exceeds pd_tol times the spectral norm; the error carries the
// smallest eigenvalue found.
SymMatrix sqrt_pd(const SymMatrix& a, double pd_tol = 1e-12);

// Largest |eigenvalue|.
double spectral_norm(const SymMatrix& a);

namespace detail {

// Householder reduction of the symmetric matrix held in a. On return a
// holds the accumulated orthogonal Q with A = Q T Q^T, d the diagonal of T
// and e its subdiagonal (e[k] = T(k+1, k)).
void tridiagonalize_symmetric(Mat& a, std::vector<double>& d, std::vector<double>& e);

// Implicit-shift QL on a symmetric tridiagonal (d, e). Rotations are
// applied to rows of w when w is non-null: row j starts at w + j*ld and is
// row_len doubles long. On return d holds the (unsorted) eigenvalues and
// row j of w holds the eigenvector for d[j] (given w initialized to Q^T).
// Throws ConvergenceError if an eigenvalue needs more than max_sweeps
// iterations.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, double* w,
                    std::size_t row_len, std::size_t ld, int max_sweeps = 30);

// Stable index sort of values.
std::vector<std::size_t> sort_order(const std::vector<double>& values, bool ascending);

// Eigendecomposition of a matrix required to be positive definite, values
// ascending. Throws NotPositiveDefiniteError otherwise.
EigenDecomposition pd_eigen(const SymMatrix& a, double pd_tol = 1e-12);

// V diag(f(values)) V^T.
Mat spectral_apply(const EigenDecomposition& eig, double (*f)(double));

}  // namespace detail

}  // namespace sympl

#endif  // SYMPL_CORE_HPP
