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

#ifndef SYMPL_MATRIX_HPP
#define SYMPL_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "sympl/errors.hpp"

namespace sympl {

using Complex = std::complex<double>;

// Dense row-major real matrix. Rows are contiguous so the vector kernels can
// run over them directly.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Dense row-major complex matrix. std::complex<double> is array-compatible
// with double[2], so a row doubles as a contiguous buffer of 2*cols doubles
// for the real plane-rotation kernel.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  static CMat identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Complex* row(std::size_t i) { return data_.data() + i * cols_; }
  const Complex* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Symmetric matrix of even dimension 2n x 2n. Construction symmetrizes the
// input as (S + S^T)/2 and records the largest asymmetry it removed; the
// stored entries therefore always satisfy entries(i,j) == entries(j,i).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Mat m);

  static SymMatrix diagonal(const std::vector<double>& diag);
  static SymMatrix identity(std::size_t dim);

  std::size_t dim() const { return entries_.rows(); }
  std::size_t half_dim() const { return half_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Mat& mat() const { return entries_; }

  // Largest |S(i,j) - S(j,i)| seen before symmetrization.
  double max_asymmetry() const { return max_asymmetry_; }

 private:
  std::size_t half_ = 0;
  Mat entries_;
  double max_asymmetry_ = 0.0;
};

// Hermitian matrix of any dimension r >= 1. Construction averages the input
// with its conjugate transpose and records the largest deviation removed.
class HermMatrix {
 public:
  HermMatrix() = default;
  explicit HermMatrix(CMat m);

  static HermMatrix diagonal(const std::vector<double>& diag);

  std::size_t dim() const { return entries_.rows(); }

  Complex operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const CMat& mat() const { return entries_; }

  double max_deviation() const { return max_deviation_; }

 private:
  CMat entries_;
  double max_deviation_ = 0.0;
};

// Real matrix products and reductions.
Mat matmul(const Mat& a, const Mat& b);      // a * b
Mat matmul_tn(const Mat& a, const Mat& b);   // a^T * b
Mat matmul_nt(const Mat& a, const Mat& b);   // a * b^T
Mat transpose(const Mat& a);
Mat add(const Mat& a, const Mat& b);
Mat sub(const Mat& a, const Mat& b);
Mat scaled(const Mat& a, double s);
void matvec(const Mat& a, const double* x, double* y);  // y = a * x
double frobenius_norm(const Mat& a);
double max_abs(const Mat& a);
double trace(const Mat& a);

// Frobenius inner product tr(a^T b).
double frobenius_inner(const Mat& a, const Mat& b);

std::vector<double> get_col(const Mat& a, std::size_t j);
void set_col(Mat& a, std::size_t j, const std::vector<double>& x);

// Complex helpers.
CMat cmatmul(const CMat& a, const CMat& b);
CMat conj_transpose(const CMat& a);
CMat add(const CMat& a, const CMat& b);
CMat sub(const CMat& a, const CMat& b);
CMat scaled(const CMat& a, Complex s);
double frobenius_norm(const CMat& a);
double max_abs(const CMat& a);

// Euclidean norm of a real vector, accumulated with the dot kernel.
double vec_norm(const double* x, std::size_t n);
double vec_norm(const std::vector<double>& x);

// Gram-Schmidt orthonormalization of the columns of g (two passes). Columns
// that turn out linearly dependent are rejected; the result keeps the first
// `keep` independent columns. Throws PreconditionError if fewer than `keep`
// independent columns exist.
CMat orthonormalize_columns(const CMat& g, std::size_t keep);

}  // namespace sympl

#endif  // SYMPL_MATRIX_HPP
