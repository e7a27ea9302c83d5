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

#include "sympl/matrix.hpp"

#include <cmath>
#include <string>

#include "sympl/kernels.hpp"

namespace sympl {

SymMatrix::SymMatrix(Mat m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("symmetric matrix must be square, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (m.rows() == 0 || m.rows() % 2 != 0) {
    throw DimensionError("symmetric matrix must have even dimension 2n, got " +
                         std::to_string(m.rows()));
  }
  const std::size_t d = m.rows();
  half_ = d / 2;
  max_asymmetry_ = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double diff = std::fabs(m(i, j) - m(j, i));
      if (diff > max_asymmetry_) max_asymmetry_ = diff;
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = avg;
      m(j, i) = avg;
    }
  }
  entries_ = std::move(m);
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& diag) {
  Mat m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return SymMatrix(std::move(m));
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  return SymMatrix(Mat::identity(dim));
}

HermMatrix::HermMatrix(CMat m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("hermitian matrix must be square, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (m.rows() == 0) {
    throw DimensionError("hermitian matrix must be at least 1x1");
  }
  const std::size_t d = m.rows();
  max_deviation_ = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double imag_diag = std::fabs(m(i, i).imag());
    if (imag_diag > max_deviation_) max_deviation_ = imag_diag;
    m(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex diff = m(i, j) - std::conj(m(j, i));
      if (std::abs(diff) > max_deviation_) max_deviation_ = std::abs(diff);
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
  entries_ = std::move(m);
}

HermMatrix HermMatrix::diagonal(const std::vector<double>& diag) {
  CMat m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = Complex(diag[i], 0.0);
  return HermMatrix(std::move(m));
}

namespace {

void check_mul(std::size_t inner_a, std::size_t inner_b, const char* what) {
  if (inner_a != inner_b) {
    throw DimensionError(std::string(what) + ": inner dimensions " +
                         std::to_string(inner_a) + " and " + std::to_string(inner_b) +
                         " do not match");
  }
}

}  // namespace

Mat matmul(const Mat& a, const Mat& b) {
  check_mul(a.cols(), b.rows(), "matmul");
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      kernels::axpy(a(i, k), b.row(k), ci, b.cols());
    }
  }
  return c;
}

Mat matmul_tn(const Mat& a, const Mat& b) {
  check_mul(a.rows(), b.rows(), "matmul_tn");
  Mat c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const double* bk = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      kernels::axpy(a(k, i), bk, c.row(i), b.cols());
    }
  }
  return c;
}

Mat matmul_nt(const Mat& a, const Mat& b) {
  check_mul(a.cols(), b.cols(), "matmul_nt");
  Mat c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) {
      c(i, j) = kernels::dot(ai, b.row(j), a.cols());
    }
  }
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

Mat add(const Mat& a, const Mat& b) {
  check_mul(a.rows(), b.rows(), "add");
  check_mul(a.cols(), b.cols(), "add");
  Mat c = a;
  kernels::axpy(1.0, b.data().data(), c.data().data(), c.data().size());
  return c;
}

Mat sub(const Mat& a, const Mat& b) {
  check_mul(a.rows(), b.rows(), "sub");
  check_mul(a.cols(), b.cols(), "sub");
  Mat c = a;
  kernels::axpy(-1.0, b.data().data(), c.data().data(), c.data().size());
  return c;
}

Mat scaled(const Mat& a, double s) {
  Mat c = a;
  kernels::scale(s, c.data().data(), c.data().size());
  return c;
}

void matvec(const Mat& a, const double* x, double* y) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    y[i] = kernels::dot(a.row(i), x, a.cols());
  }
}

double frobenius_norm(const Mat& a) {
  return std::sqrt(kernels::dot(a.data().data(), a.data().data(), a.data().size()));
}

double max_abs(const Mat& a) {
  double m = 0.0;
  for (double v : a.data()) {
    const double av = std::fabs(v);
    if (av > m) m = av;
  }
  return m;
}

double trace(const Mat& a) {
  double t = 0.0;
  const std::size_t n = a.rows() < a.cols() ? a.rows() : a.cols();
  for (std::size_t i = 0; i < n; ++i) t += a(i, i);
  return t;
}

double frobenius_inner(const Mat& a, const Mat& b) {
  check_mul(a.rows(), b.rows(), "frobenius_inner");
  check_mul(a.cols(), b.cols(), "frobenius_inner");
  return kernels::dot(a.data().data(), b.data().data(), a.data().size());
}

std::vector<double> get_col(const Mat& a, std::size_t j) {
  std::vector<double> x(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) x[i] = a(i, j);
  return x;
}

void set_col(Mat& a, std::size_t j, const std::vector<double>& x) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) = x[i];
}

CMat cmatmul(const CMat& a, const CMat& b) {
  check_mul(a.cols(), b.rows(), "cmatmul");
  CMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      const Complex* bk = b.row(k);
      Complex* ci = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

CMat conj_transpose(const CMat& a) {
  CMat t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  }
  return t;
}

CMat add(const CMat& a, const CMat& b) {
  check_mul(a.rows(), b.rows(), "add");
  check_mul(a.cols(), b.cols(), "add");
  CMat c = a;
  for (std::size_t k = 0; k < c.data().size(); ++k) c.data()[k] += b.data()[k];
  return c;
}

CMat sub(const CMat& a, const CMat& b) {
  check_mul(a.rows(), b.rows(), "sub");
  check_mul(a.cols(), b.cols(), "sub");
  CMat c = a;
  for (std::size_t k = 0; k < c.data().size(); ++k) c.data()[k] -= b.data()[k];
  return c;
}

CMat scaled(const CMat& a, Complex s) {
  CMat c = a;
  for (Complex& v : c.data()) v *= s;
  return c;
}

double frobenius_norm(const CMat& a) {
  const double* raw = reinterpret_cast<const double*>(a.data().data());
  return std::sqrt(kernels::dot(raw, raw, 2 * a.data().size()));
}

double max_abs(const CMat& a) {
  double m = 0.0;
  for (const Complex& v : a.data()) {
    const double av = std::abs(v);
    if (av > m) m = av;
  }
  return m;
}

double vec_norm(const double* x, std::size_t n) {
  return std::sqrt(kernels::dot(x, x, n));
}

double vec_norm(const std::vector<double>& x) { return vec_norm(x.data(), x.size()); }

CMat orthonormalize_columns(const CMat& g, std::size_t keep) {
  const std::size_t rows = g.rows();
  const std::size_t cols = g.cols();
  if (keep > cols) {
    throw PreconditionError("orthonormalize_columns: cannot keep " +
                            std::to_string(keep) + " of " + std::to_string(cols) +
                            " columns");
  }
  CMat q(rows, keep);
  std::vector<Complex> work(rows);
  std::size_t out = 0;
  for (std::size_t j = 0; j < cols && out < keep; ++j) {
    for (std::size_t i = 0; i < rows; ++i) work[i] = g(i, j);
    double norm_before = 0.0;
    for (const Complex& v : work) norm_before += std::norm(v);
    norm_before = std::sqrt(norm_before);
    // Two projection passes keep the basis orthonormal to machine precision
    // even when the input columns are nearly dependent.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < out; ++k) {
        Complex proj(0.0, 0.0);
        for (std::size_t i = 0; i < rows; ++i) proj += std::conj(q(i, k)) * work[i];
        for (std::size_t i = 0; i < rows; ++i) work[i] -= proj * q(i, k);
      }
    }
    double norm_after = 0.0;
    for (const Complex& v : work) norm_after += std::norm(v);
    norm_after = std::sqrt(norm_after);
    if (norm_after <= 1e-12 * (norm_before > 1.0 ? norm_before : 1.0)) continue;
    for (std::size_t i = 0; i < rows; ++i) q(i, out) = work[i] / norm_after;
    ++out;
  }
  if (out < keep) {
    throw PreconditionError("orthonormalize_columns: only " + std::to_string(out) +
                            " independent columns, need " + std::to_string(keep));
  }
  return q;
}

}  // namespace sympl
