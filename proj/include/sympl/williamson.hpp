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

#ifndef SYMPL_WILLIAMSON_HPP
#define SYMPL_WILLIAMSON_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "sympl/core.hpp"
#include "sympl/matrix.hpp"

// Williamson normal form: for positive definite A of size 2n x 2n there is a
// symplectic M (M^T J M = J) with M^T A M = D ⊕ D, where D carries the
// symplectic eigenvalues d_1 <= ... <= d_n. Columns of M are ordered
// u_1..u_n, v_1..v_n; each pair satisfies A u_j = d_j J v_j and
// A v_j = -d_j J u_j and the pairs are symplectically orthonormal.

namespace sympl {

// The standard symplectic form J = [[0, I_n], [-I_n, 0]].
struct StandardJ {
  std::size_t n = 0;

  Mat materialize() const;
  // y = J x for x, y of length 2n (y must not alias x).
  void apply(const double* x, double* y) const;
};

// J * M without materializing J.
Mat apply_standard_j_left(const Mat& m);

struct WilliamsonDecomposition {
  Mat m;                  // 2n x 2n symplectic transformation
  std::vector<double> d;  // symplectic eigenvalues, ascending

  // Residuals recorded by williamson(); constructed-by-hand instances may
  // leave them zero.
  double symplectic_residual = 0.0;  // ||M^T J M - J||_F
  double congruence_residual = 0.0;  // ||M^T A M - D ⊕ D||_F
  double pair_residual = 0.0;        // worst eigen-pair equation residual

  std::size_t n() const { return d.size(); }
};

struct SymplecticReport {
  double residual = 0.0;   // ||M^T J M - J||_F
  double threshold = 0.0;  // tol * ||M||_F^2
  bool pass = false;
};

struct EigenPairReport {
  double max_residual_u = 0.0;     // max_j ||A u_j - d_j J v_j||
  double max_residual_v = 0.0;     // max_j ||A v_j + d_j J u_j||
  double max_orthogonality = 0.0;  // worst |<u_j,J u_k>|, |<v_j,J v_k>|,
                                   // |<u_j,J v_k> - delta_jk|
  double threshold = 0.0;
  bool pass = false;
};

// Partition of the columns of a 2n x 2m symplectic-column matrix into
// groups that keep u/v pairs together: for orders (a_1..a_k) summing to m,
// group i takes u-columns [o_i, o_i + a_i) and the matching v-columns
// [m + o_i, m + o_i + a_i), with o_i = a_1 + ... + a_{i-1}.
struct ColumnPartition {
  std::vector<std::size_t> orders;
  std::vector<std::vector<std::size_t>> index_sets;  // 0-based column indices
  std::vector<Mat> blocks;                           // 2n x 2*a_i each
};

// Symplectic eigenvalues of a positive definite matrix, ascending.
std::vector<double> symplectic_eigenvalues(const SymMatrix& a);

// Full Williamson decomposition. Throws NotPositiveDefiniteError for
// inadmissible input and ResidualError if the computed factors fail the
// residual bounds (residual_tol * ||M||_F^2 for the symplectic condition,
// residual_tol * ||A||_F for the congruence).
WilliamsonDecomposition williamson(const SymMatrix& a, double residual_tol = 1e-9);

// Checks M^T J M = J. Throws DimensionError for odd-dimensioned input.
SymplecticReport verify_symplectic(const Mat& m, double tol = 1e-9);

// Checks the eigen-pair equations and symplectic orthonormality of the
// columns of m against the per-pair values d. pass requires every residual
// to be at most tol * max(1, ||A||_2).
EigenPairReport verify_eigen_pairs(const SymMatrix& a, const Mat& m,
                                   const std::vector<double>& d, double tol = 1e-8);

// Splits s (2n x 2m) by the given orders; sum(orders) must equal m. Zero
// orders are legal and produce empty blocks.
ColumnPartition symplectic_column_partition(const Mat& s,
                                            const std::vector<std::size_t>& orders);

// Inverse of symplectic_column_partition for the same orders.
Mat assemble_from_partition(const std::vector<Mat>& blocks);

// Extends 2m columns of symplectically orthonormal eigen-pairs of a to a
// full 2n-column frame whose first m pairs reproduce partial exactly. The
// precondition (pair equations + orthonormality within tol) is verified and
// violations throw PreconditionError.
Mat extend_to_symplectic_basis(const SymMatrix& a, const Mat& partial,
                               double tol = 1e-8);

// Groups adjacent entries of the ascending list d by the relative-gap rule
// |d_{i+1} - d_i| <= cluster_tol * max(1, d_i); returns [first, last]
// (inclusive, 0-based) per cluster.
std::vector<std::pair<std::size_t, std::size_t>> cluster_ranges(
    const std::vector<double>& d, double cluster_tol = 1e-8);

namespace detail {

// Householder reduction of the skew-symmetric matrix in k to tridiagonal
// form (zero diagonal). On return e[c] = K_tri(c+1, c) and, if q is
// non-null, *q holds the accumulated orthogonal transformation with
// K = Q K_tri Q^T.
void skew_tridiagonalize(Mat& k, Mat* q, std::vector<double>& e);

}  // namespace detail

}  // namespace sympl

#endif  // SYMPL_WILLIAMSON_HPP
