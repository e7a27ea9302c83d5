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

#ifndef SYMPL_SENSITIVITY_HPP
#define SYMPL_SENSITIVITY_HPP

#include <cstddef>
#include <vector>

#include "sympl/matrix.hpp"
#include "sympl/williamson.hpp"

// First-order sensitivity of symplectic eigenvalues. For positive definite
// A with symplectic eigenvalues d_1 <= ... <= d_n and a symmetric direction
// B, the one-sided limits
//
//   sigma_m'(A;B) = lim_{t->0+} (sigma_m(A+tB) - sigma_m(A)) / t,
//   d_m'(A;B)     = lim_{t->0+} (d_m(A+tB) - d_m(A)) / t,
//
// with sigma_m(A) = -2 (d_1 + ... + d_m), have closed forms in terms of a
// small Hermitian compression of B through the Williamson frame. All
// formulas here consume a WilliamsonDecomposition (or compute one) and the
// multiplicity bookkeeping of the target index m.

namespace sympl {

// Position of index m (1-based) within its cluster of equal symplectic
// eigenvalues. Floating point has no exact equality, so membership uses the
// relative rule |d_k - d_m| <= cluster_tol * max(1, d_m).
struct MultiplicityIndices {
  std::size_t m = 0;      // queried index, 1-based
  std::size_t i = 0;      // cluster members with index <= m (always >= 1)
  std::size_t j = 0;      // cluster members with index > m
  std::size_t r = 0;      // multiplicity of d_m: r = i + j
  std::size_t m_hat = 0;  // smallest index in the cluster: m - i + 1
  std::size_t n = 0;      // total number of symplectic eigenvalues
  double cluster_tol = 0.0;

  // Some gap near m sits within a factor 10 of the clustering threshold;
  // derivative values then depend delicately on the clustering decision.
  bool ill_conditioned = false;
};

MultiplicityIndices multiplicity_indices(const std::vector<double>& d, std::size_t m,
                                         double cluster_tol = 1e-8);

// The direction B compressed through the Williamson frame. With the columns
// of M split as M_bar (pairs strictly below m's cluster, m - i of them) and
// M_tilde (the r cluster pairs):
//
//   lower_block   = -(M_bar)^T B M_bar          (2(m-i) square)
//   cluster_block = -(M_tilde)^T B M_tilde      (2r square, symmetric)
//   cluster_herm  = C_11 + C_22 + i(C_12 - C_12^T)  (r x r Hermitian)
//
// where C_pq are the r x r blocks of cluster_block. The map B -> blocks is
// linear, and every first-order formula reads off cluster_herm's ordered
// eigenvalues.
struct ReducedDirection {
  Mat lower_block;
  double lower_trace = 0.0;
  Mat cluster_block;
  HermMatrix cluster_herm;
};

// idx must describe w.d at its own m and cluster_tol; it is recomputed and
// compared, so a stale or hand-altered idx throws PreconditionError.
ReducedDirection reduce_direction(const WilliamsonDecomposition& w, const SymMatrix& b,
                                  const MultiplicityIndices& idx);

// sigma_m(A) = -2 (d_1 + ... + d_m).
double sigma_m(const std::vector<double>& d, std::size_t m);
double sigma_m(const SymMatrix& a, std::size_t m);

// One-sided directional derivative of sigma_m at A in direction B:
// tr(lower_block) plus the i largest eigenvalues of cluster_herm.
double sigma_dderiv(const WilliamsonDecomposition& w, const SymMatrix& b, std::size_t m,
                    double cluster_tol = 1e-8);
double sigma_dderiv(const SymMatrix& a, const SymMatrix& b, std::size_t m,
                    double cluster_tol = 1e-8);

// One-sided directional derivative of d_m at A in direction B: -1/2 times
// the i-th largest eigenvalue of cluster_herm.
double d_dderiv(const WilliamsonDecomposition& w, const SymMatrix& b, std::size_t m,
                double cluster_tol = 1e-8);
double d_dderiv(const SymMatrix& a, const SymMatrix& b, std::size_t m,
                double cluster_tol = 1e-8);

// Gateaux gradient of sigma_m, defined when d_m and d_{m+1} are separated:
// -S S^T with S the first m symplectic eigen-pairs of the frame. Throws
// GapError naming the blocking cluster when d_{m+1} clusters with d_m.
SymMatrix sigma_gradient(const WilliamsonDecomposition& w, std::size_t m,
                         double cluster_tol = 1e-8);
SymMatrix sigma_gradient(const SymMatrix& a, std::size_t m, double cluster_tol = 1e-8);

}  // namespace sympl

#endif  // SYMPL_SENSITIVITY_HPP
