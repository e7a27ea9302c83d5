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

#include "sympl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sympl/core.hpp"
#include "sympl/errors.hpp"
#include "sympl/rng.hpp"

namespace sympl {

namespace {

Mat orthosymplectic_from_unitary(Rng& rng, std::size_t n) {
  CMat g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.cnormal();
  const CMat q = orthonormalize_columns(g, n);
  Mat o(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      o(i, j) = q(i, j).real();
      o(i, n + j) = q(i, j).imag();
      o(n + i, j) = -q(i, j).imag();
      o(n + i, n + j) = q(i, j).real();
    }
  }
  return o;
}

}  // namespace

FDReport fd_directional_derivative(const std::function<double(const SymMatrix&)>& f,
                                   const SymMatrix& a, const SymMatrix& b,
                                   double t_min, double t_max) {
  if (a.dim() != b.dim()) {
    throw DimensionError("base point and direction have dimensions " +
                         std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
  if (t_min <= 0.0 || t_max < 0.0) {
    throw PreconditionError("finite-difference steps must be positive");
  }
  if (t_max == 0.0) {
    t_max = 1e-2 * (1.0 + spectral_norm(a)) / (1.0 + spectral_norm(b));
  }

  const double f0 = f(a);

  FDReport rep;
  for (double t = t_max; ; t *= 0.5) {
    try {
      const SymMatrix probe{add(a.mat(), scaled(b.mat(), t))};
      rep.samples.emplace_back(t, (f(probe) - f0) / t);
    } catch (const Error&) {
    }
    if (t * 0.5 < t_min) break;
  }
  if (rep.samples.empty()) {
    throw PreconditionError("function failed on every finite-difference step");
  }

  if (rep.samples.size() == 1) {
    rep.estimate = rep.samples[0].second;
    rep.step_used = rep.samples[0].first;
    rep.error_estimate = 0.0;
    return rep;
  }

  std::size_t best = 0;
  double best_diff = std::fabs(rep.samples[1].second - rep.samples[0].second);
  for (std::size_t k = 1; k + 1 < rep.samples.size(); ++k) {
    const double diff = std::fabs(rep.samples[k + 1].second - rep.samples[k].second);
    if (diff < best_diff) {
      best_diff = diff;
      best = k;
    }
  }
  rep.estimate = rep.samples[best + 1].second;
  rep.step_used = rep.samples[best + 1].first;
  rep.error_estimate = best_diff;
  return rep;
}

Mat random_symplectic(std::size_t n, std::uint64_t seed, double spread) {
  if (spread < 0.0) throw PreconditionError("spread must be non-negative");
  const Rng base(seed);
  Rng first = base.split(0);
  Mat m = orthosymplectic_from_unitary(first, n);
  if (spread == 0.0) return m;

  Rng stretch = base.split(1);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = std::exp(stretch.uniform(-spread, spread));
    for (std::size_t i = 0; i < 2 * n; ++i) {
      m(i, j) *= s;
      m(i, n + j) /= s;
    }
  }
  Rng second = base.split(2);
  return matmul(m, orthosymplectic_from_unitary(second, n));
}

PdWithSpectrum pd_with_spectrum(const SpectrumSpec& spec) {
  const std::size_t n = spec.d.size();
  if (n == 0) throw PreconditionError("spectrum must be non-empty");
  for (double v : spec.d) {
    if (!(v > 0.0)) {
      throw PreconditionError("symplectic eigenvalues must be positive, got " +
                              std::to_string(v));
    }
  }

  PdWithSpectrum out;
  out.d_sorted = spec.d;
  std::sort(out.d_sorted.begin(), out.d_sorted.end());
  out.n_factor = random_symplectic(n, spec.seed, spec.spread);

  Mat dn(2 * n, 2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < 2 * n; ++i) {
      dn(j, i) = out.d_sorted[j] * out.n_factor(j, i);
      dn(n + j, i) = out.d_sorted[j] * out.n_factor(n + j, i);
    }
  }
  out.a = SymMatrix(matmul_tn(out.n_factor, dn));
  return out;
}

CMat phi_map(const SymMatrix& a) {
  const Mat r = sqrt_pd(a).mat();
  const Mat k = matmul(r, apply_standard_j_left(r));
  CMat phi(k.rows(), k.cols());
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) phi(i, j) = Complex(0.0, k(i, j));
  return phi;
}

NonconvexityReport nonconvexity_example() {
  const SymMatrix identity{Mat::identity(2)};
  const SymMatrix a = SymMatrix::diagonal({1.0, 4.0});
  const SymMatrix midpoint{scaled(add(identity.mat(), a.mat()), 0.5)};

  NonconvexityReport rep;
  rep.phi_identity = phi_map(identity);
  rep.phi_a = phi_map(a);
  rep.phi_midpoint = phi_map(midpoint);

  const CMat mean{scaled(add(rep.phi_identity, rep.phi_a), Complex(0.5, 0.0))};
  rep.gap = sub(rep.phi_midpoint, mean);
  rep.gap_eigenvalues = herm_eigen(HermMatrix{rep.gap}).values;

  const double lo = rep.gap_eigenvalues.back();
  const double hi = rep.gap_eigenvalues.front();
  const double tol = 1e-12 * (1.0 + std::max(std::fabs(lo), std::fabs(hi)));
  if (hi <= tol) {
    rep.verdict = "negative semidefinite";
  } else if (lo >= -tol) {
    rep.verdict = "positive semidefinite";
  } else {
    rep.verdict = "neither negative semidefinite nor positive semidefinite";
  }
  return rep;
}

NormBoundReport norm_bound_check(const SymMatrix& a, const WilliamsonDecomposition& w) {
  if (a.dim() != w.m.rows()) {
    throw DimensionError("matrix and decomposition have dimensions " +
                         std::to_string(a.dim()) + " and " + std::to_string(w.m.rows()));
  }
  const auto evals = sym_eigenvalues(a, EigenOrder::ascending);
  if (!(evals.front() > 0.0)) {
    throw NotPositiveDefiniteError("condition number needs a positive definite matrix",
                                   evals.front());
  }

  NormBoundReport rep;
  const double fn = frobenius_norm(w.m);
  rep.frobenius_sq = fn * fn;
  rep.kappa = evals.back() / evals.front();
  rep.bound = static_cast<double>(a.dim()) * rep.kappa;
  rep.pass = rep.frobenius_sq <= rep.bound * (1.0 + 1e-9);
  return rep;
}

WilliamsonDecomposition reframe(const WilliamsonDecomposition& w, std::uint64_t seed,
                                double cluster_tol) {
  const std::size_t n = w.d.size();
  WilliamsonDecomposition out = w;
  const Rng base(seed);
  std::uint64_t stream = 0;

  for (const auto& [first, last] : cluster_ranges(w.d, cluster_tol)) {
    const std::size_t r = last - first + 1;
    if (r == 1) continue;
    Rng rng = base.split(stream++);
    const Mat t = orthosymplectic_from_unitary(rng, r);

    Mat block(2 * n, 2 * r);
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t i = 0; i < 2 * n; ++i) {
        block(i, j) = w.m(i, first + j);
        block(i, r + j) = w.m(i, n + first + j);
      }
    }
    const Mat spun = matmul(block, t);
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t i = 0; i < 2 * n; ++i) {
        out.m(i, first + j) = spun(i, j);
        out.m(i, n + first + j) = spun(i, r + j);
      }
    }
  }
  return out;
}

}  // namespace sympl
