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

#ifndef SYMPL_HARNESS_HPP
#define SYMPL_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sympl/matrix.hpp"
#include "sympl/williamson.hpp"

// Oracles and generators that are independent of the closed-form fast
// paths: one-sided finite differences for directional derivatives, random
// symplectic transformations, positive definite matrices with a prescribed
// symplectic spectrum, a worked nonconvexity witness, and the Frobenius
// norm bound on Williamson transformations. These exist so that every
// analytic claim in the library can be cross-checked by construction.

namespace sympl {

struct FDReport {
  double estimate = 0.0;        // quotient at step_used
  double step_used = 0.0;       // step of the stabilized quotient
  double error_estimate = 0.0;  // |difference of the stabilizing pair|
  // (t, quotient) for every step where f was evaluable, t descending.
  std::vector<std::pair<double, double>> samples;
};

// One-sided finite-difference estimate of lim_{t->0+} (f(A+tB) - f(A))/t.
// Quotients are taken on the geometric grid t_k = t_max * 2^-k down to
// t_min, skipping steps where f throws; the estimate is the later quotient
// of the adjacent pair with the smallest difference. t_max = 0 selects
// 1e-2 * (1 + ||A||_2) / (1 + ||B||_2). Throws PreconditionError when f
// fails on every grid point.
FDReport fd_directional_derivative(const std::function<double(const SymMatrix&)>& f,
                                   const SymMatrix& a, const SymMatrix& b,
                                   double t_min = 1e-8, double t_max = 0.0);

// Random element of Sp(2n). spread = 0 gives the orthogonal symplectic
// [[X, Y], [-Y, X]] built from a Haar unitary X + iY; spread > 0 composes
// two such factors with diag(e^s, e^-s), s_i uniform in [-spread, spread],
// so the condition number is controlled by spread. Deterministic per seed.
Mat random_symplectic(std::size_t n, std::uint64_t seed, double spread = 0.0);

struct SpectrumSpec {
  std::vector<double> d;  // target symplectic eigenvalues, any order, all > 0
  std::uint64_t seed = 0;
  double spread = 0.0;
};

struct PdWithSpectrum {
  SymMatrix a;
  Mat n_factor;                 // the symplectic N with A = N^T (D + D) N
  std::vector<double> d_sorted;  // ascending spectrum actually planted
};

// Positive definite matrix with prescribed symplectic spectrum, built as
// A = N^T (D + D) N from a random symplectic N. The factors are returned
// so failures can be traced to construction rather than analysis.
PdWithSpectrum pd_with_spectrum(const SpectrumSpec& spec);

// phi(A) = i A^(1/2) J A^(1/2), the Hermitian matrix whose positive
// eigenvalues are the symplectic eigenvalues of A.
CMat phi_map(const SymMatrix& a);

struct NonconvexityReport {
  CMat phi_identity;
  CMat phi_a;
  CMat phi_midpoint;
  CMat gap;  // phi((I+A)/2) - (phi(I) + phi(A))/2
  std::vector<double> gap_eigenvalues;  // descending
  std::string verdict;
};

// Worked 2x2 witness that phi is neither concave nor convex on the PD
// cone: A = diag(1, 4), where the midpoint gap has eigenvalues
// +-(sqrt(10) - 3)/2.
NonconvexityReport nonconvexity_example();

struct NormBoundReport {
  double frobenius_sq = 0.0;  // ||M||_F^2
  double kappa = 0.0;         // condition number of A
  double bound = 0.0;         // 2 n kappa
  bool pass = false;
};

// Checks ||M||_F^2 <= 2 n kappa(A) (1 + 1e-9) for a decomposition of A.
NormBoundReport norm_bound_check(const SymMatrix& a, const WilliamsonDecomposition& w);

// Rotates each cluster of w by a random orthogonal symplectic factor,
// producing a different valid frame for the same matrix. Exact for
// clusters of exactly equal eigenvalues; a tolerance cluster of merely
// close eigenvalues picks up congruence error of the cluster width.
WilliamsonDecomposition reframe(const WilliamsonDecomposition& w, std::uint64_t seed,
                                double cluster_tol = 1e-8);

}  // namespace sympl

#endif  // SYMPL_HARNESS_HPP
