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

#include "sympl/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sympl/kernels.hpp"

namespace sympl {

namespace detail {

// Derived from the Algol procedure tred2 (Bowdler, Martin, Reinsch and
// Wilkinson) as circulated in EISPACK. Reduces the symmetric matrix in a to
// tridiagonal form by Householder reflections, accumulating the orthogonal
// transformation back into a.
void tridiagonalize_symmetric(Mat& a, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.rows();
  d.assign(n, 0.0);
  std::vector<double> ei(n, 0.0);  // ei[i] = T(i, i-1), ei[0] unused

  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    double scale = 0.0;
    if (l > 0) {
      scale = kernels::asum(a.row(i), l + 1);
      if (scale == 0.0) {
        ei[i] = a(i, l);
      } else {
        kernels::scale(1.0 / scale, a.row(i), l + 1);
        h = kernels::dot(a.row(i), a.row(i), l + 1);
        double f = a(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        ei[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          a(j, i) = a(i, j) / h;
          // Element of A*u, split into the row part and the column part of
          // the symmetric storage.
          g = kernels::dot(a.row(j), a.row(i), j + 1);
          for (std::size_t k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
          ei[j] = g / h;
          f += ei[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = a(i, j);
          const double g2 = ei[j] - hh * f;
          ei[j] = g2;
          kernels::axpy(-f, ei.data(), a.row(j), j + 1);
          kernels::axpy(-g2, a.row(i), a.row(j), j + 1);
        }
      }
    } else {
      ei[i] = a(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  ei[0] = 0.0;

  // Accumulate the transformations.
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] != 0.0) {
      for (std::size_t j = 0; j < i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < i; ++k) g += a(i, k) * a(k, j);
        for (std::size_t k = 0; k < i; ++k) a(k, j) -= g * a(k, i);
      }
    }
    d[i] = a(i, i);
    a(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      a(j, i) = 0.0;
      a(i, j) = 0.0;
    }
  }

  e.assign(n > 1 ? n - 1 : 0, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) e[k] = ei[k + 1];
}

// Derived from the Algol procedure tql2 (Bowdler, Martin, Reinsch and
// Wilkinson) as circulated in EISPACK: implicit-shift QL sweeps on the
// tridiagonal (d, e), rotations accumulated into the rows of w.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, double* w,
                    std::size_t row_len, std::size_t ld, int max_sweeps) {
  const std::size_t n = d.size();
  if (n <= 1) return;

  std::vector<double> ew(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) ew[k] = e[k];

  const double eps = std::numeric_limits<double>::epsilon();
  double f = 0.0;
  double tst1 = 0.0;

  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(ew[l]));

    // Find small subdiagonal element.
    std::size_t m = l;
    while (m < n - 1 && std::fabs(ew[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_sweeps) {
          throw ConvergenceError(
              "tridiagonal QL failed to converge: eigenvalue " + std::to_string(l) +
                  " still moving after " + std::to_string(iter - 1) +
                  " sweeps (matrix scale " + std::to_string(tst1) + ")",
              tst1, iter - 1);
        }

        // Form implicit shift.
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * ew[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0.0) r = -r;
        d[l] = ew[l] / (p + r);
        d[l + 1] = ew[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        // Implicit QL transformation.
        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = ew[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * ew[i];
          h = c * p;
          r = std::hypot(p, ew[i]);
          ew[i + 1] = s * r;
          s = ew[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (w != nullptr) {
            kernels::rot(w + i * ld, w + (i + 1) * ld, c, s, row_len);
          }
        }
        p = -s * s2 * c3 * el1 * ew[l] / dl1;
        ew[l] = s * p;
        d[l] = c * p;
      } while (std::fabs(ew[l]) > eps * tst1);
    }
    d[l] += f;
    ew[l] = 0.0;
  }
}

std::vector<std::size_t> sort_order(const std::vector<double>& values, bool ascending) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return ascending ? values[a] < values[b] : values[a] > values[b];
  });
  return idx;
}

namespace {

// Sign convention: largest-magnitude entry of each eigenvector positive.
void canonicalize_sign(double* v, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::fabs(v[i]) > std::fabs(v[best])) best = i;
  }
  if (v[best] < 0.0) kernels::scale(-1.0, v, n);
}

// Complex Householder reduction of the Hermitian matrix in a to a real
// symmetric tridiagonal (d, e), with the accumulated unitary in uh so that
// A = uh T uh^H. The complex subdiagonal is rotated real by a diagonal
// phase matrix folded into uh.
void herm_tridiagonalize(CMat& a, std::vector<double>& d, std::vector<double>& e,
                         CMat& uh) {
  const std::size_t r = a.rows();
  d.assign(r, 0.0);
  e.assign(r > 1 ? r - 1 : 0, 0.0);
  std::vector<Complex> ec(r > 1 ? r - 1 : 0, Complex(0.0, 0.0));
  std::vector<Complex> v(r), wv(r), z(r), uv(r);

  for (std::size_t k = 0; k + 2 < r; ++k) {
    double nrm2 = 0.0;
    for (std::size_t i = k + 1; i < r; ++i) nrm2 += std::norm(a(i, k));
    const double nrm = std::sqrt(nrm2);
    if (nrm == 0.0) {
      ec[k] = Complex(0.0, 0.0);
      continue;
    }
    const Complex alpha = a(k + 1, k);
    const double aabs = std::abs(alpha);
    const Complex phase = aabs > 0.0 ? alpha / aabs : Complex(1.0, 0.0);
    const Complex target = -phase * nrm;

    std::fill(v.begin(), v.end(), Complex(0.0, 0.0));
    for (std::size_t i = k + 1; i < r; ++i) v[i] = a(i, k);
    v[k + 1] -= target;
    double tau = 0.0;
    for (std::size_t i = k + 1; i < r; ++i) tau += std::norm(v[i]);
    if (tau == 0.0) {
      ec[k] = alpha;
      continue;
    }
    const double beta = 2.0 / tau;

    // A <- H A H with H = I - beta v v^H, via the symmetric rank-2 update.
    for (std::size_t i = 0; i < r; ++i) {
      Complex acc(0.0, 0.0);
      for (std::size_t j = k + 1; j < r; ++j) acc += a(i, j) * v[j];
      wv[i] = beta * acc;
    }
    Complex vhw(0.0, 0.0);
    for (std::size_t i = k + 1; i < r; ++i) vhw += std::conj(v[i]) * wv[i];
    for (std::size_t i = 0; i < r; ++i) z[i] = wv[i] - 0.5 * beta * vhw * v[i];
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        a(i, j) -= v[i] * std::conj(z[j]) + z[i] * std::conj(v[j]);
      }
    }
    // The column is now target*e1 by construction; store it exactly.
    a(k + 1, k) = target;
    a(k, k + 1) = std::conj(target);
    for (std::size_t i = k + 2; i < r; ++i) {
      a(i, k) = Complex(0.0, 0.0);
      a(k, i) = Complex(0.0, 0.0);
    }

    // uh <- uh H.
    for (std::size_t i = 0; i < r; ++i) {
      Complex acc(0.0, 0.0);
      for (std::size_t j = k + 1; j < r; ++j) acc += uh(i, j) * v[j];
      uv[i] = acc;
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = k + 1; j < r; ++j) {
        uh(i, j) -= beta * uv[i] * std::conj(v[j]);
      }
    }

    ec[k] = target;
  }
  if (r >= 2) ec[r - 2] = a(r - 1, r - 2);
  for (std::size_t i = 0; i < r; ++i) d[i] = a(i, i).real();

  // Rotate the complex subdiagonal onto the real axis: T = D^H A_tri D with
  // D the running product of subdiagonal phases, then fold D into uh.
  std::vector<Complex> phi(r, Complex(1.0, 0.0));
  for (std::size_t k = 0; k + 1 < r; ++k) {
    const double s = std::abs(ec[k]);
    phi[k + 1] = s > 0.0 ? phi[k] * (ec[k] / s) : phi[k];
    e[k] = s;
  }
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < r; ++i) uh(i, j) *= phi[j];
  }
}

void canonicalize_phase(CMat& vectors, std::size_t col) {
  std::size_t best = 0;
  double best_abs = 0.0;
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    const double a = std::abs(vectors(i, col));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs == 0.0) return;
  const Complex rot = std::conj(vectors(best, col)) / best_abs;
  for (std::size_t i = 0; i < vectors.rows(); ++i) vectors(i, col) *= rot;
}

}  // namespace

EigenDecomposition pd_eigen(const SymMatrix& a, double pd_tol) {
  EigenDecomposition eig = sym_eigen(a, EigenOrder::ascending);
  const double lmin = eig.values.front();
  const double lmax = std::max(std::fabs(eig.values.front()), std::fabs(eig.values.back()));
  if (!(lmin > 0.0) || lmin <= pd_tol * lmax) {
    throw NotPositiveDefiniteError(
        "matrix is not positive definite: smallest eigenvalue " +
            std::to_string(lmin) + " (spectral norm " + std::to_string(lmax) + ")",
        lmin);
  }
  return eig;
}

Mat spectral_apply(const EigenDecomposition& eig, double (*f)(double)) {
  const std::size_t n = eig.values.size();
  Mat scaled_vecs = eig.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    const double fj = f(eig.values[j]);
    for (std::size_t i = 0; i < n; ++i) scaled_vecs(i, j) *= fj;
  }
  return matmul_nt(scaled_vecs, eig.vectors);
}

}  // namespace detail

EigenDecomposition sym_eigen(const SymMatrix& s, EigenOrder order) {
  const std::size_t n = s.dim();
  Mat a = s.mat();
  std::vector<double> d, e;
  detail::tridiagonalize_symmetric(a, d, e);
  Mat w = transpose(a);  // rows of w accumulate Q^T
  detail::tridiagonal_ql(d, e, w.data().data(), n, n);

  const auto ord = detail::sort_order(d, order == EigenOrder::ascending);
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Mat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[ord[j]];
    double* row = w.row(ord[j]);
    detail::canonicalize_sign(row, n);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = row[i];
  }
  return out;
}

std::vector<double> sym_eigenvalues(const SymMatrix& s, EigenOrder order) {
  Mat a = s.mat();
  std::vector<double> d, e;
  detail::tridiagonalize_symmetric(a, d, e);
  detail::tridiagonal_ql(d, e, nullptr, 0, 0);
  std::sort(d.begin(), d.end());
  if (order == EigenOrder::descending) std::reverse(d.begin(), d.end());
  return d;
}

HermEigenDecomposition herm_eigen(const HermMatrix& h) {
  const std::size_t r = h.dim();
  CMat a = h.mat();
  std::vector<double> d, e;
  CMat uh = CMat::identity(r);
  detail::herm_tridiagonalize(a, d, e, uh);

  CMat w = conj_transpose(uh);
  // Rows of w are complex but the rotations have real coefficients, so the
  // QL sweep can treat each row as 2r interleaved doubles.
  detail::tridiagonal_ql(d, e, reinterpret_cast<double*>(w.data().data()), 2 * r, 2 * r);

  const auto ord = detail::sort_order(d, /*ascending=*/false);
  HermEigenDecomposition out;
  out.values.resize(r);
  out.vectors = CMat(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    out.values[j] = d[ord[j]];
    for (std::size_t i = 0; i < r; ++i) out.vectors(i, j) = std::conj(w(ord[j], i));
    detail::canonicalize_phase(out.vectors, j);
  }
  return out;
}

SymMatrix sqrt_pd(const SymMatrix& a, double pd_tol) {
  EigenDecomposition eig = detail::pd_eigen(a, pd_tol);
  return SymMatrix(detail::spectral_apply(eig, [](double x) { return std::sqrt(x); }));
}

double spectral_norm(const SymMatrix& a) {
  const std::vector<double> vals = sym_eigenvalues(a, EigenOrder::ascending);
  return std::max(std::fabs(vals.front()), std::fabs(vals.back()));
}

}  // namespace sympl
