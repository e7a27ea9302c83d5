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

#include "sympl/williamson.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sympl/kernels.hpp"

namespace sympl {

Mat StandardJ::materialize() const {
  Mat j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  return j;
}

void StandardJ::apply(const double* x, double* y) const {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = x[n + i];
    y[n + i] = -x[i];
  }
}

Mat apply_standard_j_left(const Mat& m) {
  if (m.rows() % 2 != 0) {
    throw DimensionError("J application needs an even number of rows, got " +
                         std::to_string(m.rows()));
  }
  const std::size_t n = m.rows() / 2;
  Mat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = m(n + i, j);
      out(n + i, j) = -m(i, j);
    }
  }
  return out;
}

namespace detail {

void skew_tridiagonalize(Mat& k, Mat* q, std::vector<double>& e) {
  const std::size_t n = k.rows();
  e.assign(n > 1 ? n - 1 : 0, 0.0);
  if (q != nullptr) *q = Mat::identity(n);
  if (n < 3) {
    for (std::size_t c = 0; c + 1 < n; ++c) e[c] = k(c + 1, c);
    return;
  }

  std::vector<double> v(n), w(n);
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t i = c + 1; i < n; ++i) v[i] = k(i, c);

    const double scale = kernels::asum(v.data() + c + 1, n - c - 1);
    if (scale == 0.0) continue;
    kernels::scale(1.0 / scale, v.data() + c + 1, n - c - 1);
    const double h = kernels::dot(v.data() + c + 1, v.data() + c + 1, n - c - 1);
    const double f = v[c + 1];
    const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
    v[c + 1] = f - g;
    const double tau = h - f * g;  // = |v|^2 / 2 in the scaled units
    if (tau == 0.0) continue;
    const double beta = 1.0 / tau;

    // K <- P K P with P = I - beta v v^T. Skewness makes this the rank-2
    // update K + v w^T - w v^T with w = beta K v.
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = beta * kernels::dot(k.row(i) + c + 1, v.data() + c + 1, n - c - 1);
    }
    for (std::size_t i = 0; i < n; ++i) {
      double* row = k.row(i);
      kernels::axpy(v[i], w.data(), row, n);
      kernels::axpy(-w[i], v.data(), row, n);
    }

    if (q != nullptr) {
      for (std::size_t i = 0; i < n; ++i) {
        double* row = q->row(i);
        const double coeff = beta * kernels::dot(row + c + 1, v.data() + c + 1, n - c - 1);
        kernels::axpy(-coeff, v.data() + c + 1, row + c + 1, n - c - 1);
      }
    }
  }
  for (std::size_t c = 0; c + 1 < n; ++c) e[c] = k(c + 1, c);
}

namespace {

double inv_sqrt(double x) { return 1.0 / std::sqrt(x); }

// Eigenvalues of the tridiagonal similarity image of i K, where K is the
// skew form R J R. Positive entries are the symplectic eigenvalues.
struct SkewSpectrum {
  std::vector<double> values;  // all 2n eigenvalues, unsorted
  Mat z;                       // rows are tridiagonal eigenvectors (optional)
  Mat q;                       // orthogonal reduction factor (optional)
};

SkewSpectrum skew_spectrum(Mat k, bool want_vectors) {
  const std::size_t dim = k.rows();
  SkewSpectrum out;
  std::vector<double> e;
  detail::skew_tridiagonalize(k, want_vectors ? &out.q : nullptr, e);
  out.values.assign(dim, 0.0);
  if (want_vectors) {
    out.z = Mat::identity(dim);
    detail::tridiagonal_ql(out.values, e, out.z.data().data(), dim, dim);
  } else {
    detail::tridiagonal_ql(out.values, e, nullptr, 0, 0);
  }
  return out;
}

}  // namespace

}  // namespace detail

std::vector<double> symplectic_eigenvalues(const SymMatrix& a) {
  const std::size_t n = a.half_dim();
  EigenDecomposition eig = detail::pd_eigen(a);
  const Mat r = detail::spectral_apply(eig, [](double x) { return std::sqrt(x); });
  const Mat k = matmul(r, apply_standard_j_left(r));

  detail::SkewSpectrum sp = detail::skew_spectrum(k, /*want_vectors=*/false);
  std::sort(sp.values.begin(), sp.values.end());
  // The spectrum is symmetric about zero; the top half carries d.
  return std::vector<double>(sp.values.begin() + static_cast<std::ptrdiff_t>(n),
                             sp.values.end());
}

WilliamsonDecomposition williamson(const SymMatrix& a, double residual_tol) {
  const std::size_t n = a.half_dim();
  const std::size_t dim = a.dim();

  EigenDecomposition eig = detail::pd_eigen(a);
  const Mat r = detail::spectral_apply(eig, [](double x) { return std::sqrt(x); });
  const Mat rinv = detail::spectral_apply(eig, detail::inv_sqrt);
  const Mat k = matmul(r, apply_standard_j_left(r));

  detail::SkewSpectrum sp = detail::skew_spectrum(k, /*want_vectors=*/true);

  // Top n eigenvalues of the tridiagonal image, ascending.
  std::vector<std::size_t> ord = detail::sort_order(sp.values, /*ascending=*/true);
  std::vector<std::size_t> top(ord.begin() + static_cast<std::ptrdiff_t>(n), ord.end());

  WilliamsonDecomposition w;
  w.d.resize(n);
  w.m = Mat(dim, dim);

  std::vector<double> re(dim), im(dim), p(dim), qv(dim), col(dim);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = top[j];
    const double dj = sp.values[src];
    w.d[j] = dj;

    // Eigenvector of i K for eigenvalue dj is Q (diag(i^t) z). The i^t
    // phases split the real tridiagonal eigenvector z into the real and
    // imaginary parts of the complex one.
    const double* z = sp.z.row(src);
    for (std::size_t t = 0; t < dim; ++t) {
      switch (t % 4) {
        case 0: re[t] = z[t]; im[t] = 0.0; break;
        case 1: re[t] = 0.0; im[t] = z[t]; break;
        case 2: re[t] = -z[t]; im[t] = 0.0; break;
        default: re[t] = 0.0; im[t] = -z[t]; break;
      }
    }
    matvec(sp.q, re.data(), p.data());
    matvec(sp.q, im.data(), qv.data());

    // Phase fix: rotate so the largest-magnitude entry is real positive.
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t t = 0; t < dim; ++t) {
      const double mag = p[t] * p[t] + qv[t] * qv[t];
      if (mag > best_mag) {
        best_mag = mag;
        best = t;
      }
    }
    if (best_mag > 0.0) {
      const double mag = std::sqrt(best_mag);
      const double cr = p[best] / mag;
      const double ci = -qv[best] / mag;
      for (std::size_t t = 0; t < dim; ++t) {
        const double pt = p[t];
        const double qt = qv[t];
        p[t] = cr * pt - ci * qt;
        qv[t] = cr * qt + ci * pt;
      }
    }

    // u_j = sqrt(2 d_j) R^{-1} p, v_j = -sqrt(2 d_j) R^{-1} q.
    const double s = std::sqrt(2.0 * dj);
    matvec(rinv, p.data(), col.data());
    for (std::size_t t = 0; t < dim; ++t) w.m(t, j) = s * col[t];
    matvec(rinv, qv.data(), col.data());
    for (std::size_t t = 0; t < dim; ++t) w.m(t, n + j) = -s * col[t];
  }

  // Residual bookkeeping against the input.
  const SymplecticReport sym = verify_symplectic(w.m, residual_tol);
  w.symplectic_residual = sym.residual;

  Mat dd(dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    dd(j, j) = w.d[j];
    dd(n + j, n + j) = w.d[j];
  }
  const Mat congr = matmul_tn(w.m, matmul(a.mat(), w.m));
  w.congruence_residual = frobenius_norm(sub(congr, dd));

  const EigenPairReport pairs = verify_eigen_pairs(a, w.m, w.d);
  w.pair_residual = std::max(pairs.max_residual_u, pairs.max_residual_v);

  const double congr_threshold = residual_tol * frobenius_norm(a.mat());
  if (!sym.pass || w.congruence_residual > congr_threshold) {
    throw ResidualError(
        "williamson decomposition failed residual bounds: symplectic residual " +
            std::to_string(w.symplectic_residual) + " (threshold " +
            std::to_string(sym.threshold) + "), congruence residual " +
            std::to_string(w.congruence_residual) + " (threshold " +
            std::to_string(congr_threshold) + ")",
        w.symplectic_residual, w.congruence_residual);
  }
  return w;
}

SymplecticReport verify_symplectic(const Mat& m, double tol) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0) {
    throw DimensionError("symplectic check needs even dimensions, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (m.rows() != m.cols()) {
    throw DimensionError("symplectic check needs a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const std::size_t n = m.rows() / 2;
  const Mat gram = matmul_tn(m, apply_standard_j_left(m));
  const Mat j = StandardJ{n}.materialize();

  SymplecticReport rep;
  rep.residual = frobenius_norm(sub(gram, j));
  const double mf = frobenius_norm(m);
  rep.threshold = tol * mf * mf;
  rep.pass = rep.residual <= rep.threshold;
  return rep;
}

EigenPairReport verify_eigen_pairs(const SymMatrix& a, const Mat& m,
                                   const std::vector<double>& d, double tol) {
  const std::size_t dim = a.dim();
  if (m.rows() != dim) {
    throw DimensionError("frame has " + std::to_string(m.rows()) +
                         " rows, matrix has dimension " + std::to_string(dim));
  }
  if (m.cols() % 2 != 0 || d.size() * 2 != m.cols()) {
    throw DimensionError("frame with " + std::to_string(m.cols()) +
                         " columns does not match " + std::to_string(d.size()) +
                         " eigenvalues");
  }
  const std::size_t k = d.size();

  const Mat am = matmul(a.mat(), m);
  const Mat jm = apply_standard_j_left(m);

  EigenPairReport rep;
  std::vector<double> resid(dim);
  for (std::size_t j = 0; j < k; ++j) {
    // A u_j - d_j J v_j.
    for (std::size_t i = 0; i < dim; ++i) resid[i] = am(i, j) - d[j] * jm(i, k + j);
    rep.max_residual_u = std::max(rep.max_residual_u, vec_norm(resid));
    // A v_j + d_j J u_j.
    for (std::size_t i = 0; i < dim; ++i) resid[i] = am(i, k + j) + d[j] * jm(i, j);
    rep.max_residual_v = std::max(rep.max_residual_v, vec_norm(resid));
  }

  // Symplectic Gram matrix M^T J M against [[0, I], [-I, 0]].
  const Mat gram = matmul_tn(m, jm);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l < k; ++l) {
      const double uu = std::fabs(gram(j, l));
      const double vv = std::fabs(gram(k + j, k + l));
      const double uv = std::fabs(gram(j, k + l) - (j == l ? 1.0 : 0.0));
      rep.max_orthogonality = std::max({rep.max_orthogonality, uu, vv, uv});
    }
  }

  rep.threshold = tol * std::max(1.0, spectral_norm(a));
  rep.pass = rep.max_residual_u <= rep.threshold &&
             rep.max_residual_v <= rep.threshold &&
             rep.max_orthogonality <= rep.threshold;
  return rep;
}

ColumnPartition symplectic_column_partition(const Mat& s,
                                            const std::vector<std::size_t>& orders) {
  if (s.cols() % 2 != 0) {
    throw DimensionError("partition needs 2m columns, got " + std::to_string(s.cols()));
  }
  const std::size_t m = s.cols() / 2;
  std::size_t total = 0;
  for (std::size_t a : orders) total += a;
  if (total != m) {
    throw PreconditionError("partition orders sum to " + std::to_string(total) +
                            ", expected " + std::to_string(m));
  }

  ColumnPartition part;
  part.orders = orders;
  std::size_t offset = 0;
  for (std::size_t a : orders) {
    std::vector<std::size_t> idx;
    idx.reserve(2 * a);
    for (std::size_t t = 0; t < a; ++t) idx.push_back(offset + t);
    for (std::size_t t = 0; t < a; ++t) idx.push_back(m + offset + t);
    Mat block(s.rows(), 2 * a);
    for (std::size_t c = 0; c < idx.size(); ++c) {
      for (std::size_t i = 0; i < s.rows(); ++i) block(i, c) = s(i, idx[c]);
    }
    part.index_sets.push_back(std::move(idx));
    part.blocks.push_back(std::move(block));
    offset += a;
  }
  return part;
}

Mat assemble_from_partition(const std::vector<Mat>& blocks) {
  std::size_t rows = 0;
  std::size_t m = 0;
  for (const Mat& b : blocks) {
    if (b.cols() % 2 != 0) {
      throw DimensionError("partition block must have an even column count");
    }
    if (!b.empty()) {
      if (rows == 0) rows = b.rows();
      if (b.rows() != rows) {
        throw DimensionError("partition blocks disagree on row count");
      }
    }
    m += b.cols() / 2;
  }
  Mat s(rows, 2 * m);
  std::size_t offset = 0;
  for (const Mat& b : blocks) {
    const std::size_t a = b.cols() / 2;
    for (std::size_t t = 0; t < a; ++t) {
      for (std::size_t i = 0; i < rows; ++i) {
        s(i, offset + t) = b(i, t);
        s(i, m + offset + t) = b(i, a + t);
      }
    }
    offset += a;
  }
  return s;
}

std::vector<std::pair<std::size_t, std::size_t>> cluster_ranges(
    const std::vector<double>& d, double cluster_tol) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (d.empty()) return out;
  std::size_t first = 0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const double gap = std::fabs(d[i + 1] - d[i]);
    if (gap > cluster_tol * std::max(1.0, d[i])) {
      out.emplace_back(first, i);
      first = i + 1;
    }
  }
  out.emplace_back(first, d.size() - 1);
  return out;
}

namespace {

// Complex vector stored as split real/imaginary parts.
struct SplitVec {
  std::vector<double> re, im;
};

SplitVec to_phase_vector(const Mat& r, const double* u, const double* v, double d,
                         std::size_t dim) {
  SplitVec w;
  w.re.resize(dim);
  w.im.resize(dim);
  std::vector<double> tmp(dim);
  const double s = 1.0 / std::sqrt(2.0 * d);
  matvec(r, u, tmp.data());
  for (std::size_t i = 0; i < dim; ++i) w.re[i] = s * tmp[i];
  matvec(r, v, tmp.data());
  for (std::size_t i = 0; i < dim; ++i) w.im[i] = -s * tmp[i];
  return w;
}

// Hermitian inner product <a, b> = conj(a) . b.
Complex split_inner(const SplitVec& a, const SplitVec& b) {
  const std::size_t n = a.re.size();
  const double rr = kernels::dot(a.re.data(), b.re.data(), n);
  const double ii = kernels::dot(a.im.data(), b.im.data(), n);
  const double ri = kernels::dot(a.re.data(), b.im.data(), n);
  const double ir = kernels::dot(a.im.data(), b.re.data(), n);
  return {rr + ii, ri - ir};
}

void split_axpy(const Complex& c, const SplitVec& x, SplitVec& y) {
  const std::size_t n = x.re.size();
  kernels::axpy(c.real(), x.re.data(), y.re.data(), n);
  kernels::axpy(-c.imag(), x.im.data(), y.re.data(), n);
  kernels::axpy(c.real(), x.im.data(), y.im.data(), n);
  kernels::axpy(c.imag(), x.re.data(), y.im.data(), n);
}

double split_norm(const SplitVec& a) {
  const std::size_t n = a.re.size();
  return std::sqrt(kernels::dot(a.re.data(), a.re.data(), n) +
                   kernels::dot(a.im.data(), a.im.data(), n));
}

void project_out(const std::vector<SplitVec>& basis, SplitVec& v) {
  for (const SplitVec& b : basis) {
    const Complex c = split_inner(b, v);
    split_axpy(-c, b, v);
  }
}

}  // namespace

Mat extend_to_symplectic_basis(const SymMatrix& a, const Mat& partial, double tol) {
  const std::size_t dim = a.dim();
  const std::size_t n = a.half_dim();
  if (partial.rows() != dim) {
    throw DimensionError("partial frame has " + std::to_string(partial.rows()) +
                         " rows, matrix has dimension " + std::to_string(dim));
  }
  if (partial.cols() % 2 != 0 || partial.cols() > dim) {
    throw DimensionError("partial frame must have 2m columns with m <= n, got " +
                         std::to_string(partial.cols()));
  }
  const std::size_t m = partial.cols() / 2;

  // Per-pair eigenvalue estimates <u_j, A u_j> (the pairing normalization
  // makes this the symplectic eigenvalue of the pair).
  std::vector<double> dg(m);
  std::vector<double> tmp(dim);
  for (std::size_t j = 0; j < m; ++j) {
    const std::vector<double> u = get_col(partial, j);
    matvec(a.mat(), u.data(), tmp.data());
    dg[j] = kernels::dot(u.data(), tmp.data(), dim);
  }

  if (m > 0) {
    const EigenPairReport rep = verify_eigen_pairs(a, partial, dg, tol);
    if (!rep.pass) {
      throw PreconditionError(
          "partial frame is not a symplectically orthonormal set of eigen-pairs: "
          "equation residuals " +
          std::to_string(rep.max_residual_u) + ", " + std::to_string(rep.max_residual_v) +
          ", orthogonality residual " + std::to_string(rep.max_orthogonality) +
          " (threshold " + std::to_string(rep.threshold) + ")");
    }
  }
  if (m == n) return partial;

  const WilliamsonDecomposition full = williamson(a);
  const EigenDecomposition eig = detail::pd_eigen(a);
  const Mat r = detail::spectral_apply(eig, [](double x) { return std::sqrt(x); });
  const Mat rinv = detail::spectral_apply(eig, detail::inv_sqrt);

  const auto clusters = cluster_ranges(full.d);

  // Map the given pairs to clusters of the computed spectrum.
  std::vector<std::vector<std::size_t>> given_in_cluster(clusters.size());
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (std::fabs(full.d[k] - dg[j]) < std::fabs(full.d[best] - dg[j])) best = k;
    }
    if (std::fabs(full.d[best] - dg[j]) > 1e-4 * std::max(1.0, full.d[best])) {
      throw PreconditionError("pair " + std::to_string(j) +
                              " has eigenvalue estimate " + std::to_string(dg[j]) +
                              " matching no symplectic eigenvalue of the matrix");
    }
    std::size_t c = 0;
    while (!(best >= clusters[c].first && best <= clusters[c].second)) ++c;
    given_in_cluster[c].push_back(j);
  }

  Mat out(dim, dim);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      out(i, j) = partial(i, j);
      out(i, n + j) = partial(i, m + j);
    }
  }

  std::size_t slot = m;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const std::size_t lo = clusters[c].first;
    const std::size_t hi = clusters[c].second;
    const std::size_t size = hi - lo + 1;
    const std::size_t g = given_in_cluster[c].size();
    if (g > size) {
      throw PreconditionError("cluster around eigenvalue " + std::to_string(full.d[lo]) +
                              " receives " + std::to_string(g) +
                              " given pairs but has multiplicity " + std::to_string(size));
    }
    if (g == 0) {
      // Untouched cluster: keep the computed pairs as they are.
      for (std::size_t k = lo; k <= hi; ++k) {
        for (std::size_t i = 0; i < dim; ++i) {
          out(i, slot) = full.m(i, k);
          out(i, n + slot) = full.m(i, n + k);
        }
        ++slot;
      }
      continue;
    }
    if (g == size) continue;

    double dbar = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) dbar += full.d[k];
    dbar /= static_cast<double>(size);

    std::vector<SplitVec> given;
    for (std::size_t j : given_in_cluster[c]) {
      const std::vector<double> u = get_col(partial, j);
      const std::vector<double> v = get_col(partial, m + j);
      given.push_back(to_phase_vector(r, u.data(), v.data(), dg[j], dim));
    }
    std::vector<SplitVec> basis;
    for (std::size_t k = lo; k <= hi; ++k) {
      const std::vector<double> u = get_col(full.m, k);
      const std::vector<double> v = get_col(full.m, n + k);
      basis.push_back(to_phase_vector(r, u.data(), v.data(), full.d[k], dim));
    }

    // Pivoted Gram-Schmidt completion: repeatedly take the basis vector
    // with the largest residual against the given pairs and everything
    // chosen so far.
    std::vector<SplitVec> chosen;
    for (std::size_t t = 0; t < size - g; ++t) {
      double best_norm = -1.0;
      SplitVec best_vec;
      for (const SplitVec& cand0 : basis) {
        SplitVec cand = cand0;
        project_out(given, cand);
        project_out(chosen, cand);
        // Second pass for numerical orthogonality.
        project_out(given, cand);
        project_out(chosen, cand);
        const double nn = split_norm(cand);
        if (nn > best_norm) {
          best_norm = nn;
          best_vec = std::move(cand);
        }
      }
      if (best_norm < 1e-6) {
        throw PreconditionError(
            "completion of the partial frame collapsed inside a cluster "
            "(residual " +
            std::to_string(best_norm) + ")");
      }
      const double inv = 1.0 / best_norm;
      kernels::scale(inv, best_vec.re.data(), dim);
      kernels::scale(inv, best_vec.im.data(), dim);
      chosen.push_back(std::move(best_vec));
    }

    const double s = std::sqrt(2.0 * dbar);
    for (const SplitVec& wv : chosen) {
      matvec(rinv, wv.re.data(), tmp.data());
      for (std::size_t i = 0; i < dim; ++i) out(i, slot) = s * tmp[i];
      matvec(rinv, wv.im.data(), tmp.data());
      for (std::size_t i = 0; i < dim; ++i) out(i, n + slot) = -s * tmp[i];
      ++slot;
    }
  }

  return out;
}

}  // namespace sympl
