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

#include "sympl/sensitivity.hpp"

#include <cmath>
#include <string>

#include "sympl/core.hpp"
#include "sympl/errors.hpp"

namespace sympl {

MultiplicityIndices multiplicity_indices(const std::vector<double>& d, std::size_t m,
                                         double cluster_tol) {
  const std::size_t n = d.size();
  if (m < 1 || m > n) {
    throw PreconditionError("index m = " + std::to_string(m) +
                            " out of range 1.." + std::to_string(n));
  }

  MultiplicityIndices idx;
  idx.m = m;
  idx.n = n;
  idx.cluster_tol = cluster_tol;

  const double dm = d[m - 1];
  const double band = cluster_tol * std::max(1.0, dm);

  std::size_t first = m;
  while (first > 1 && std::fabs(d[first - 2] - dm) <= band) --first;
  std::size_t last = m;
  while (last < n && std::fabs(d[last] - dm) <= band) ++last;

  idx.i = m - first + 1;
  idx.j = last - m;
  idx.r = idx.i + idx.j;
  idx.m_hat = first;

  for (std::size_t k = 1; k <= n; ++k) {
    const double gap = std::fabs(d[k - 1] - dm);
    if (gap >= band / 10.0 && gap <= band * 10.0) {
      idx.ill_conditioned = true;
      break;
    }
  }
  return idx;
}

ReducedDirection reduce_direction(const WilliamsonDecomposition& w, const SymMatrix& b,
                                  const MultiplicityIndices& idx) {
  const std::size_t n = w.n();
  if (b.dim() != 2 * n) {
    throw DimensionError("direction has dimension " + std::to_string(b.dim()) +
                         ", decomposition has " + std::to_string(2 * n));
  }
  const MultiplicityIndices check = multiplicity_indices(w.d, idx.m, idx.cluster_tol);
  if (check.i != idx.i || check.j != idx.j || check.r != idx.r ||
      check.m_hat != idx.m_hat || check.n != idx.n) {
    throw PreconditionError("multiplicity indices are stale for this decomposition at m = " +
                            std::to_string(idx.m));
  }

  const std::size_t lower = idx.m - idx.i;
  const auto part =
      symplectic_column_partition(w.m, {lower, idx.r, n - lower - idx.r});
  const Mat& m_bar = part.blocks[0];
  const Mat& m_tilde = part.blocks[1];

  ReducedDirection red;
  red.lower_block = scaled(matmul_tn(m_bar, matmul(b.mat(), m_bar)), -1.0);
  red.lower_trace = trace(red.lower_block);
  red.cluster_block = scaled(matmul_tn(m_tilde, matmul(b.mat(), m_tilde)), -1.0);

  const std::size_t r = idx.r;
  CMat herm(r, r);
  for (std::size_t p = 0; p < r; ++p) {
    for (std::size_t q = 0; q < r; ++q) {
      herm(p, q) = Complex(red.cluster_block(p, q) + red.cluster_block(r + p, r + q),
                           red.cluster_block(p, r + q) - red.cluster_block(q, r + p));
    }
  }
  red.cluster_herm = HermMatrix(herm);
  return red;
}

double sigma_m(const std::vector<double>& d, std::size_t m) {
  if (m < 1 || m > d.size()) {
    throw PreconditionError("index m = " + std::to_string(m) +
                            " out of range 1.." + std::to_string(d.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) sum += d[k];
  return -2.0 * sum;
}

double sigma_m(const SymMatrix& a, std::size_t m) {
  return sigma_m(symplectic_eigenvalues(a), m);
}

double sigma_dderiv(const WilliamsonDecomposition& w, const SymMatrix& b, std::size_t m,
                    double cluster_tol) {
  const MultiplicityIndices idx = multiplicity_indices(w.d, m, cluster_tol);
  const ReducedDirection red = reduce_direction(w, b, idx);
  const auto eig = herm_eigen(red.cluster_herm);
  double value = red.lower_trace;
  for (std::size_t k = 0; k < idx.i; ++k) value += eig.values[k];
  return value;
}

double sigma_dderiv(const SymMatrix& a, const SymMatrix& b, std::size_t m,
                    double cluster_tol) {
  return sigma_dderiv(williamson(a), b, m, cluster_tol);
}

double d_dderiv(const WilliamsonDecomposition& w, const SymMatrix& b, std::size_t m,
                double cluster_tol) {
  const MultiplicityIndices idx = multiplicity_indices(w.d, m, cluster_tol);
  const ReducedDirection red = reduce_direction(w, b, idx);
  const auto eig = herm_eigen(red.cluster_herm);
  return -0.5 * eig.values[idx.i - 1];
}

double d_dderiv(const SymMatrix& a, const SymMatrix& b, std::size_t m,
                double cluster_tol) {
  return d_dderiv(williamson(a), b, m, cluster_tol);
}

SymMatrix sigma_gradient(const WilliamsonDecomposition& w, std::size_t m,
                         double cluster_tol) {
  const std::size_t n = w.n();
  const MultiplicityIndices idx = multiplicity_indices(w.d, m, cluster_tol);
  if (idx.j > 0) {
    throw GapError("sigma_" + std::to_string(m) +
                       " is not differentiable: d_" + std::to_string(m) +
                       " clusters with d_" + std::to_string(m + 1) +
                       " (cluster spans indices " + std::to_string(idx.m_hat) + ".." +
                       std::to_string(idx.m_hat + idx.r - 1) + ")",
                   idx.m_hat, idx.m_hat + idx.r - 1);
  }

  Mat s(2 * n, 2 * m);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t row = 0; row < 2 * n; ++row) {
      s(row, p) = w.m(row, p);
      s(row, m + p) = w.m(row, n + p);
    }
  }
  return SymMatrix(scaled(matmul_nt(s, s), -1.0));
}

SymMatrix sigma_gradient(const SymMatrix& a, std::size_t m, double cluster_tol) {
  return sigma_gradient(williamson(a), m, cluster_tol);
}

}  // namespace sympl
