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

#include "sympl/subdifferential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sympl/core.hpp"
#include "sympl/errors.hpp"
#include "sympl/rng.hpp"

namespace sympl {

namespace {

// Embeds the complex frame factor U + iV into the pair layout described on
// DeltaElement.
DeltaElement make_delta_element(const MultiplicityIndices& idx, Mat u, Mat v) {
  const std::size_t n = idx.n;
  const std::size_t m = idx.m;
  const std::size_t lower = m - idx.i;
  const std::size_t r = idx.r;

  DeltaElement el;
  el.h = Mat(2 * n, 2 * m);
  for (std::size_t p = 0; p < lower; ++p) {
    el.h(p, p) = 1.0;
    el.h(n + p, m + p) = 1.0;
  }
  for (std::size_t s = 0; s < r; ++s) {
    for (std::size_t t = 0; t < idx.i; ++t) {
      el.h(lower + s, lower + t) = u(s, t);
      el.h(n + lower + s, m + lower + t) = u(s, t);
      el.h(lower + s, m + lower + t) = v(s, t);
      el.h(n + lower + s, lower + t) = -v(s, t);
    }
  }
  el.u = std::move(u);
  el.v = std::move(v);
  return el;
}

CMat random_complex(Rng& rng, std::size_t rows, std::size_t cols) {
  CMat g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.cnormal();
  return g;
}

Mat cluster_frame(const WilliamsonDecomposition& w, const MultiplicityIndices& idx) {
  const std::size_t lower = idx.m - idx.i;
  const auto part =
      symplectic_column_partition(w.m, {lower, idx.r, idx.n - lower - idx.r});
  return part.blocks[1];
}

}  // namespace

std::vector<DeltaElement> sample_delta_m(const MultiplicityIndices& idx,
                                         std::size_t count, std::uint64_t seed) {
  std::vector<DeltaElement> out;
  out.reserve(count);
  const Rng base(seed);
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng = base.split(k);
    const CMat g = random_complex(rng, idx.r, idx.i);
    const CMat q = orthonormalize_columns(g, idx.i);
    Mat u(idx.r, idx.i), v(idx.r, idx.i);
    for (std::size_t s = 0; s < idx.r; ++s) {
      for (std::size_t t = 0; t < idx.i; ++t) {
        u(s, t) = q(s, t).real();
        v(s, t) = q(s, t).imag();
      }
    }
    out.push_back(make_delta_element(idx, std::move(u), std::move(v)));
  }
  return out;
}

DeltaElement optimal_delta_element(const MultiplicityIndices& idx,
                                   const HermEigenDecomposition& cluster_eig) {
  if (cluster_eig.values.size() != idx.r) {
    throw DimensionError("cluster eigendecomposition has dimension " +
                         std::to_string(cluster_eig.values.size()) + ", expected " +
                         std::to_string(idx.r));
  }
  Mat u(idx.r, idx.i), v(idx.r, idx.i);
  for (std::size_t s = 0; s < idx.r; ++s) {
    for (std::size_t t = 0; t < idx.i; ++t) {
      u(s, t) = cluster_eig.vectors(s, t).real();
      v(s, t) = cluster_eig.vectors(s, t).imag();
    }
  }
  return make_delta_element(idx, std::move(u), std::move(v));
}

SymMatrix fenchel_element(const WilliamsonDecomposition& w, const DeltaElement& el) {
  const Mat mh = matmul(w.m, el.h);
  return SymMatrix(scaled(matmul_nt(mh, mh), -1.0));
}

SubgradientSample fenchel_extreme_points(const WilliamsonDecomposition& w, std::size_t m,
                                         std::size_t count, std::uint64_t seed,
                                         double cluster_tol) {
  const MultiplicityIndices idx = multiplicity_indices(w.d, m, cluster_tol);
  SubgradientSample sample;
  sample.kind = SampleKind::fenchel_sigma;
  sample.delta_provenance = sample_delta_m(idx, count, seed);
  sample.elements.reserve(count);
  for (const DeltaElement& el : sample.delta_provenance) {
    sample.elements.push_back(fenchel_element(w, el));
  }
  return sample;
}

SupportReport fenchel_support(const WilliamsonDecomposition& w, const SymMatrix& b,
                              std::size_t m, std::size_t count, std::uint64_t seed,
                              double cluster_tol) {
  const MultiplicityIndices idx = multiplicity_indices(w.d, m, cluster_tol);
  const ReducedDirection red = reduce_direction(w, b, idx);
  const auto eig = herm_eigen(red.cluster_herm);

  SupportReport rep;
  rep.count = count;
  rep.exact = red.lower_trace;
  for (std::size_t k = 0; k < idx.i; ++k) rep.exact += eig.values[k];

  SubgradientSample sample = fenchel_extreme_points(w, m, count, seed, cluster_tol);
  sample.delta_provenance.push_back(optimal_delta_element(idx, eig));
  sample.elements.push_back(fenchel_element(w, sample.delta_provenance.back()));

  rep.sampled_max = -std::numeric_limits<double>::infinity();
  for (const SymMatrix& g : sample.elements) {
    rep.sampled_max = std::max(rep.sampled_max, frobenius_inner(g.mat(), b.mat()));
  }
  rep.gap = rep.exact - rep.sampled_max;
  return rep;
}

std::pair<NormalizedPair, SymMatrix> clarke_extreme_point(
    const WilliamsonDecomposition& w, const MultiplicityIndices& idx,
    const std::vector<Complex>& wvec) {
  if (wvec.size() != idx.r) {
    throw DimensionError("unit vector has dimension " + std::to_string(wvec.size()) +
                         ", cluster has multiplicity " + std::to_string(idx.r));
  }
  double norm_sq = 0.0;
  for (const Complex& c : wvec) norm_sq += std::norm(c);
  if (std::fabs(std::sqrt(norm_sq) - 1.0) > 1e-12) {
    throw PreconditionError("vector is not unit length: ||w|| = " +
                            std::to_string(std::sqrt(norm_sq)));
  }

  const Mat m_tilde = cluster_frame(w, idx);
  const std::size_t dim = m_tilde.rows();
  const std::size_t r = idx.r;

  NormalizedPair pair;
  pair.x.assign(dim, 0.0);
  pair.y.assign(dim, 0.0);
  std::vector<double> xc(2 * r), yc(2 * r);
  for (std::size_t s = 0; s < r; ++s) {
    xc[s] = wvec[s].real();
    xc[r + s] = -wvec[s].imag();
    yc[s] = wvec[s].imag();
    yc[r + s] = wvec[s].real();
  }
  matvec(m_tilde, xc.data(), pair.x.data());
  matvec(m_tilde, yc.data(), pair.y.data());

  Mat g(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t c = 0; c < dim; ++c) {
      g(a, c) = -0.5 * (pair.x[a] * pair.x[c] + pair.y[a] * pair.y[c]);
    }
  }
  return {std::move(pair), SymMatrix(std::move(g))};
}

double clarke_mp_dderiv(const WilliamsonDecomposition& w, const SymMatrix& b,
                        std::size_t m, double cluster_tol) {
  const MultiplicityIndices idx = multiplicity_indices(w.d, m, cluster_tol);
  const ReducedDirection red = reduce_direction(w, b, idx);
  const auto eig = herm_eigen(red.cluster_herm);
  return 0.5 * eig.values[0];
}

double clarke_mp_dderiv(const SymMatrix& a, const SymMatrix& b, std::size_t m,
                        double cluster_tol) {
  return clarke_mp_dderiv(williamson(a), b, m, cluster_tol);
}

SubgradientSample clarke_extreme_points(const WilliamsonDecomposition& w, std::size_t m,
                                        std::size_t count, std::uint64_t seed,
                                        double cluster_tol) {
  const MultiplicityIndices idx = multiplicity_indices(w.d, m, cluster_tol);
  SubgradientSample sample;
  sample.kind = SampleKind::clarke_mp;
  sample.elements.reserve(count);
  sample.pair_provenance.reserve(count);
  const Rng base(seed);
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng = base.split(k);
    std::vector<Complex> wvec(idx.r);
    double norm_sq = 0.0;
    do {
      norm_sq = 0.0;
      for (Complex& c : wvec) {
        c = rng.cnormal();
        norm_sq += std::norm(c);
      }
    } while (norm_sq < 1e-12);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (Complex& c : wvec) c *= inv;
    auto [pair, g] = clarke_extreme_point(w, idx, wvec);
    sample.pair_provenance.push_back(std::move(pair));
    sample.elements.push_back(std::move(g));
  }
  return sample;
}

SupportReport support_gap(const WilliamsonDecomposition& w, const SymMatrix& b,
                          std::size_t m, std::size_t count, std::uint64_t seed,
                          double cluster_tol) {
  const MultiplicityIndices idx = multiplicity_indices(w.d, m, cluster_tol);
  const ReducedDirection red = reduce_direction(w, b, idx);
  const auto eig = herm_eigen(red.cluster_herm);

  SupportReport rep;
  rep.count = count;
  rep.exact = 0.5 * eig.values[0];

  SubgradientSample sample = clarke_extreme_points(w, m, count, seed, cluster_tol);
  std::vector<Complex> top(idx.r);
  for (std::size_t s = 0; s < idx.r; ++s) top[s] = eig.vectors(s, 0);
  auto [pair, g] = clarke_extreme_point(w, idx, top);
  sample.pair_provenance.push_back(std::move(pair));
  sample.elements.push_back(std::move(g));

  rep.sampled_max = -std::numeric_limits<double>::infinity();
  for (const SymMatrix& el : sample.elements) {
    rep.sampled_max = std::max(rep.sampled_max, frobenius_inner(el.mat(), b.mat()));
  }
  rep.gap = rep.exact - rep.sampled_max;
  return rep;
}

SupportReport support_gap(const SymMatrix& a, const SymMatrix& b, std::size_t m,
                          std::size_t count, std::uint64_t seed, double cluster_tol) {
  return support_gap(williamson(a), b, m, count, seed, cluster_tol);
}

MonotonicityReport monotonicity_check(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("matrices have dimensions " + std::to_string(a.dim()) +
                         " and " + std::to_string(b.dim()));
  }
  const SymMatrix diff{sub(b.mat(), a.mat())};
  const double diff_norm = frobenius_norm(diff.mat());
  const double smallest = sym_eigenvalues(diff, EigenOrder::ascending).front();
  if (smallest < -1e-10 * diff_norm) {
    throw PreconditionError(
        "inputs are not comparable: B - A has smallest eigenvalue " +
        std::to_string(smallest));
  }

  MonotonicityReport rep;
  rep.d_a = symplectic_eigenvalues(a);
  rep.d_b = symplectic_eigenvalues(b);
  rep.worst = -std::numeric_limits<double>::infinity();
  rep.pass = true;
  for (std::size_t j = 0; j < rep.d_a.size(); ++j) {
    rep.worst = std::max(rep.worst, rep.d_a[j] - rep.d_b[j]);
    if (rep.d_a[j] > rep.d_b[j] + 1e-9 * std::max(1.0, rep.d_b[j])) rep.pass = false;
  }
  return rep;
}

}  // namespace sympl
