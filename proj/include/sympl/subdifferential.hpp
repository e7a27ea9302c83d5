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

#ifndef SYMPL_SUBDIFFERENTIAL_HPP
#define SYMPL_SUBDIFFERENTIAL_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "sympl/matrix.hpp"
#include "sympl/sensitivity.hpp"
#include "sympl/williamson.hpp"

// Subgradient machinery for the two nonsmooth objects attached to the
// symplectic spectrum:
//
//   * the convex map sigma_m (Fenchel subdifferential), whose extreme
//     points are -M H H^T M^T over a structured family of frames H, and
//   * the locally Lipschitz map -d_m (Clarke and Michel-Penot
//     subdifferentials, which coincide), whose extreme points are
//     -1/2 (x x^T + y y^T) over normalized eigenvector pairs (x, y).
//
// Neither set is materialized as a hull. Callers get finite extreme-point
// samples (seeded, reproducible) plus exact support values in any chosen
// direction, with the support-maximizing element appended deterministically
// so equality is achieved rather than approached.

namespace sympl {

// One member of the structured frame family for sigma_m: columns 1..m-i of
// the identity pair layout stay verbatim, and the cluster coordinates carry
// the real embedding [[U, V], [-V, U]] of a column-orthonormal complex
// matrix U + iV of shape r x i.
struct DeltaElement {
  Mat h;  // 2n x 2m
  Mat u;  // r x i
  Mat v;  // r x i
};

// Eigenvector pair for d_m normalized to <x, J y> = 1.
struct NormalizedPair {
  std::vector<double> x, y;
};

enum class SampleKind { fenchel_sigma, clarke_mp };

struct SubgradientSample {
  SampleKind kind = SampleKind::fenchel_sigma;
  std::vector<SymMatrix> elements;
  // Provenance, parallel to elements: delta_provenance for fenchel_sigma,
  // pair_provenance for clarke_mp.
  std::vector<DeltaElement> delta_provenance;
  std::vector<NormalizedPair> pair_provenance;
};

struct SupportReport {
  double sampled_max = 0.0;  // max <G, B> over samples, optimal included
  double exact = 0.0;        // closed-form support value in direction B
  double gap = 0.0;          // exact - sampled_max
  std::size_t count = 0;     // random samples drawn (optimal not counted)
};

struct MonotonicityReport {
  std::vector<double> d_a, d_b;
  double worst = 0.0;  // max_j (d_a[j] - d_b[j])
  bool pass = false;
};

// `count` seeded random frame elements (empty list for count = 0).
std::vector<DeltaElement> sample_delta_m(const MultiplicityIndices& idx,
                                         std::size_t count, std::uint64_t seed);

// The support-maximizing frame element in the direction whose reduced
// cluster matrix has the given eigendecomposition (descending): U + iV is
// made of the top i eigenvectors.
DeltaElement optimal_delta_element(const MultiplicityIndices& idx,
                                   const HermEigenDecomposition& cluster_eig);

// -M H H^T M^T for one frame element.
SymMatrix fenchel_element(const WilliamsonDecomposition& w, const DeltaElement& el);

// `count` seeded extreme points of the Fenchel subdifferential of sigma_m.
SubgradientSample fenchel_extreme_points(const WilliamsonDecomposition& w, std::size_t m,
                                         std::size_t count, std::uint64_t seed,
                                         double cluster_tol = 1e-8);

// Support of the Fenchel subdifferential of sigma_m in direction b:
// exact value sigma_dderiv(w, b, m) against the sampled-plus-optimal max.
SupportReport fenchel_support(const WilliamsonDecomposition& w, const SymMatrix& b,
                              std::size_t m, std::size_t count, std::uint64_t seed,
                              double cluster_tol = 1e-8);

// Extreme point of the Clarke/Michel-Penot subdifferential of -d_m from a
// unit vector wvec in C^r: (x, y) = M_tilde [[u, v], [-v, u]] columns with
// u = Re wvec, v = Im wvec, and the matrix -1/2 (x x^T + y y^T). Throws
// PreconditionError unless ||wvec|| = 1 within 1e-12.
std::pair<NormalizedPair, SymMatrix> clarke_extreme_point(
    const WilliamsonDecomposition& w, const MultiplicityIndices& idx,
    const std::vector<Complex>& wvec);

// `count` seeded extreme points of the Clarke/Michel-Penot subdifferential
// of -d_m, generated from normalized complex Gaussian unit vectors.
SubgradientSample clarke_extreme_points(const WilliamsonDecomposition& w, std::size_t m,
                                        std::size_t count, std::uint64_t seed,
                                        double cluster_tol = 1e-8);

// Support of the Clarke/Michel-Penot subdifferential of -d_m in direction
// b: 1/2 times the largest eigenvalue of the reduced cluster matrix. The
// value is the same for every m inside one cluster.
double clarke_mp_dderiv(const WilliamsonDecomposition& w, const SymMatrix& b,
                        std::size_t m, double cluster_tol = 1e-8);
double clarke_mp_dderiv(const SymMatrix& a, const SymMatrix& b, std::size_t m,
                        double cluster_tol = 1e-8);

// Sampled support check for the Clarke/Michel-Penot family: max over
// `count` random unit vectors plus the analytically optimal one, against
// the exact support value.
SupportReport support_gap(const WilliamsonDecomposition& w, const SymMatrix& b,
                          std::size_t m, std::size_t count, std::uint64_t seed,
                          double cluster_tol = 1e-8);
SupportReport support_gap(const SymMatrix& a, const SymMatrix& b, std::size_t m,
                          std::size_t count, std::uint64_t seed,
                          double cluster_tol = 1e-8);

// Entrywise comparison of symplectic spectra for an ordered pair A <= B
// (checked: smallest eigenvalue of B - A >= -1e-10 ||B - A||_F, else
// PreconditionError "not comparable"). pass requires
// d_j(A) <= d_j(B) + 1e-9 max(1, d_j(B)) for every j.
MonotonicityReport monotonicity_check(const SymMatrix& a, const SymMatrix& b);

}  // namespace sympl

#endif  // SYMPL_SUBDIFFERENTIAL_HPP
