#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "sympl/core.hpp"
#include "sympl/errors.hpp"
#include "sympl/matrix.hpp"
#include "sympl/rng.hpp"
#include "sympl/sensitivity.hpp"
#include "sympl/williamson.hpp"

using namespace sympl;

namespace {

SymMatrix random_pd(Rng& rng, std::size_t n, double shift = 0.5) {
  const std::size_t dim = 2 * n;
  Mat g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.normal();
  return SymMatrix(add(matmul_tn(g, g), scaled(Mat::identity(dim), shift)));
}

SymMatrix random_sym(Rng& rng, std::size_t dim) {
  Mat g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.normal();
  return SymMatrix(add(g, transpose(g)));
}

// Orthogonal symplectic frame [[X, Y], [-Y, X]] built from a Haar unitary,
// so O (D + D) O^T has symplectic spectrum exactly D.
Mat random_orthosymplectic(Rng& rng, std::size_t n) {
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

// A = O (D + D) O^T with a prescribed symplectic spectrum; the matching
// Williamson frame is O itself.
WilliamsonDecomposition planted_decomposition(Rng& rng, std::vector<double> d) {
  const std::size_t n = d.size();
  WilliamsonDecomposition w;
  w.m = random_orthosymplectic(rng, n);
  w.d = std::move(d);
  return w;
}

SymMatrix planted_matrix(const WilliamsonDecomposition& w) {
  const std::size_t n = w.d.size();
  Mat dd(2 * n, 2 * n);
  for (std::size_t j = 0; j < n; ++j) dd(j, j) = dd(n + j, n + j) = w.d[j];
  return SymMatrix(matmul(w.m, matmul_nt(dd, w.m)));
}

}  // namespace

TEST_CASE("multiplicity indices on a clustered spectrum") {
  const std::vector<double> d = {1.0, 1.0, 3.0};

  const auto one = multiplicity_indices(d, 1);
  CHECK(one.m == 1);
  CHECK(one.i == 1);
  CHECK(one.j == 1);
  CHECK(one.r == 2);
  CHECK(one.m_hat == 1);
  CHECK(one.n == 3);

  const auto two = multiplicity_indices(d, 2);
  CHECK(two.i == 2);
  CHECK(two.j == 0);
  CHECK(two.r == 2);
  CHECK(two.m_hat == 1);

  const auto three = multiplicity_indices(d, 3);
  CHECK(three.i == 1);
  CHECK(three.j == 0);
  CHECK(three.r == 1);
  CHECK(three.m_hat == 3);
}

TEST_CASE("multiplicity indices invariants on random spectra") {
  Rng rng(401);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.index(7);
    std::vector<double> d(n);
    double cur = 0.3 + rng.uniform01();
    for (std::size_t k = 0; k < n; ++k) {
      if (rng.uniform01() < 0.4) cur += 0.2 + rng.uniform01();
      d[k] = cur;
    }
    for (std::size_t m = 1; m <= n; ++m) {
      const auto idx = multiplicity_indices(d, m);
      CHECK(idx.r == idx.i + idx.j);
      CHECK(idx.i >= 1);
      CHECK(m - idx.i + 1 == idx.m_hat);
      CHECK(m + idx.j <= n);
    }
    CHECK(multiplicity_indices(d, 1).i == 1);
    const auto last = multiplicity_indices(d, n);
    CHECK(last.j == 0);
    CHECK(last.i == last.r);
  }
}

TEST_CASE("multiplicity indices edge handling") {
  const std::vector<double> d = {1.0, 2.0};
  CHECK_THROWS_AS((void)multiplicity_indices(d, 0), PreconditionError);
  CHECK_THROWS_AS((void)multiplicity_indices(d, 3), PreconditionError);

  const auto clean = multiplicity_indices(d, 1);
  CHECK_FALSE(clean.ill_conditioned);

  const std::vector<double> tight = {1.0, 1.0 + 5e-8};
  const auto flagged = multiplicity_indices(tight, 1, 1e-8);
  CHECK(flagged.r == 1);
  CHECK(flagged.ill_conditioned);

  const std::vector<double> merged = {1.0, 1.0 + 5e-9};
  const auto wide = multiplicity_indices(merged, 1, 1e-8);
  CHECK(wide.r == 2);
}

TEST_CASE("direction reduction in the identity frame") {
  WilliamsonDecomposition w;
  w.m = Mat::identity(2);
  w.d = {1.0};
  const SymMatrix b = SymMatrix::diagonal({3.0, 5.0});
  const auto idx = multiplicity_indices(w.d, 1);
  const auto red = reduce_direction(w, b, idx);

  CHECK(red.lower_block.rows() == 0);
  CHECK(red.lower_trace == 0.0);
  CHECK(red.cluster_block.rows() == 2);
  CHECK(red.cluster_block(0, 0) == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(red.cluster_block(1, 1) == doctest::Approx(-5.0).epsilon(1e-14));
  CHECK(red.cluster_herm.dim() == 1);
  CHECK(red.cluster_herm.mat()(0, 0).real() == doctest::Approx(-8.0).epsilon(1e-14));

  WilliamsonDecomposition w2;
  w2.m = Mat::identity(4);
  w2.d = {1.0, 1.0};
  const SymMatrix b2 = SymMatrix::diagonal({1.0, 2.0, 1.0, 2.0});
  const auto idx2 = multiplicity_indices(w2.d, 1);
  const auto red2 = reduce_direction(w2, b2, idx2);
  CHECK(red2.cluster_herm.dim() == 2);
  CHECK(red2.cluster_herm.mat()(0, 0).real() == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(red2.cluster_herm.mat()(1, 1).real() == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(std::abs(red2.cluster_herm.mat()(0, 1)) <= 1e-14);
}

TEST_CASE("direction reduction is linear and symmetric") {
  Rng rng(402);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + rng.index(4);
    const SymMatrix a = random_pd(rng, n);
    const auto w = williamson(a);
    const std::size_t m = 1 + rng.index(n);
    const auto idx = multiplicity_indices(w.d, m);

    const SymMatrix b1 = random_sym(rng, 2 * n);
    const SymMatrix b2 = random_sym(rng, 2 * n);
    const double alpha = rng.uniform(-2.0, 2.0);
    const double beta = rng.uniform(-2.0, 2.0);
    const SymMatrix combo{add(scaled(b1.mat(), alpha), scaled(b2.mat(), beta))};

    const auto r1 = reduce_direction(w, b1, idx);
    const auto r2 = reduce_direction(w, b2, idx);
    const auto rc = reduce_direction(w, combo, idx);

    const Mat expect =
        add(scaled(r1.cluster_block, alpha), scaled(r2.cluster_block, beta));
    const double scale = 1.0 + frobenius_norm(rc.cluster_block);
    CHECK(frobenius_norm(sub(rc.cluster_block, expect)) <= 1e-12 * scale);
    CHECK(rc.lower_trace ==
          doctest::Approx(alpha * r1.lower_trace + beta * r2.lower_trace)
              .epsilon(1e-10));

    CHECK(frobenius_norm(sub(rc.cluster_block, transpose(rc.cluster_block))) <=
          1e-10 * scale);

    const SymMatrix zero{Mat(2 * n, 2 * n)};
    const auto rz = reduce_direction(w, zero, idx);
    CHECK(frobenius_norm(rz.cluster_block) == 0.0);
    CHECK(rz.lower_trace == 0.0);
  }
}

TEST_CASE("direction reduction rejects stale indices") {
  Rng rng(403);
  const SymMatrix a = random_pd(rng, 2);
  const auto w = williamson(a);
  const SymMatrix b = random_sym(rng, 4);

  auto idx = multiplicity_indices(w.d, 1);
  idx.m_hat += 1;
  CHECK_THROWS_AS((void)reduce_direction(w, b, idx), PreconditionError);

  const SymMatrix small = random_sym(rng, 2);
  const auto good = multiplicity_indices(w.d, 1);
  CHECK_THROWS_AS((void)reduce_direction(w, small, good), DimensionError);
}

TEST_CASE("sigma values") {
  CHECK(sigma_m(std::vector<double>{2.0, 12.0}, 1) == doctest::Approx(-4.0));
  CHECK(sigma_m(std::vector<double>{2.0, 12.0}, 2) == doctest::Approx(-28.0));

  for (std::size_t n : {1, 2, 3}) {
    const SymMatrix id{Mat::identity(2 * n)};
    for (std::size_t m = 1; m <= n; ++m) {
      CHECK(sigma_m(id, m) == doctest::Approx(-2.0 * static_cast<double>(m)));
    }
  }
  CHECK(sigma_m(SymMatrix::diagonal({1.0, 4.0}), 1) == doctest::Approx(-4.0));
  CHECK(sigma_m(SymMatrix::diagonal({1.0, 9.0, 4.0, 16.0}), 2) ==
        doctest::Approx(-28.0));

  CHECK_THROWS_AS((void)sigma_m(std::vector<double>{2.0}, 0), PreconditionError);
  CHECK_THROWS_AS((void)sigma_m(std::vector<double>{2.0}, 2), PreconditionError);
  CHECK_THROWS_AS((void)sigma_m(SymMatrix::diagonal({1.0, -2.0}), 1),
                  NotPositiveDefiniteError);
}

TEST_CASE("sigma directional derivative pinned values") {
  const SymMatrix i4{Mat::identity(4)};
  const SymMatrix b = SymMatrix::diagonal({1.0, 2.0, 1.0, 2.0});
  CHECK(sigma_dderiv(i4, b, 1) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(sigma_dderiv(i4, b, 2) == doctest::Approx(-6.0).epsilon(1e-12));

  const SymMatrix zero{Mat(4, 4)};
  CHECK(sigma_dderiv(i4, zero, 1) == 0.0);

  const SymMatrix a = SymMatrix::diagonal({1.0, 4.0});
  CHECK(sigma_dderiv(a, a, 1) == doctest::Approx(-4.0).epsilon(1e-12));
}

TEST_CASE("d directional derivative pinned values") {
  const SymMatrix i2{Mat::identity(2)};
  CHECK(d_dderiv(i2, SymMatrix::diagonal({2.0, 4.0}), 1) ==
        doctest::Approx(3.0).epsilon(1e-12));

  const SymMatrix i4{Mat::identity(4)};
  const SymMatrix b = SymMatrix::diagonal({1.0, 2.0, 1.0, 2.0});
  CHECK(d_dderiv(i4, b, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(d_dderiv(i4, b, 2) == doctest::Approx(2.0).epsilon(1e-10));

  const SymMatrix zero{Mat(4, 4)};
  CHECK(d_dderiv(i4, zero, 1) == 0.0);
  CHECK(d_dderiv(i4, zero, 2) == 0.0);

  const SymMatrix a = SymMatrix::diagonal({1.0, 4.0});
  CHECK(d_dderiv(a, a, 1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("pair of sums relation links the two derivatives") {
  Rng rng(404);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 1 + rng.index(4);
    SymMatrix a = random_pd(rng, n);
    if (trial % 3 == 0) {
      std::vector<double> d(n);
      for (std::size_t k = 0; k < n; ++k) d[k] = (k % 2 == 0) ? 1.0 : 2.5;
      std::sort(d.begin(), d.end());
      a = planted_matrix(planted_decomposition(rng, d));
    }
    const auto w = williamson(a);
    const SymMatrix b = random_sym(rng, 2 * n);
    double prev = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
      const double cur = sigma_dderiv(w, b, m);
      const double dd = d_dderiv(w, b, m);
      CHECK(2.0 * dd == doctest::Approx(prev - cur).epsilon(1e-9));
      prev = cur;
    }
  }
}

TEST_CASE("directional derivatives are positively homogeneous") {
  Rng rng(405);
  const SymMatrix a = random_pd(rng, 3);
  const auto w = williamson(a);
  const SymMatrix b = random_sym(rng, 6);
  const double base_d = d_dderiv(w, b, 2);
  const double base_s = sigma_dderiv(w, b, 2);
  for (double t : {0.0, 0.5, 2.0, 7.25}) {
    const SymMatrix tb{scaled(b.mat(), t)};
    CHECK(d_dderiv(w, tb, 2) ==
          doctest::Approx(t * base_d).epsilon(1e-10).scale(1.0 + std::fabs(base_d)));
    CHECK(sigma_dderiv(w, tb, 2) ==
          doctest::Approx(t * base_s).epsilon(1e-10).scale(1.0 + std::fabs(base_s)));
  }
}

TEST_CASE("negative of d derivative is sublinear at the cluster head") {
  Rng rng(406);
  for (int trial = 0; trial < 8; ++trial) {
    const auto w = planted_decomposition(rng, {1.0, 1.0, 2.5});
    const SymMatrix b1 = random_sym(rng, 6);
    const SymMatrix b2 = random_sym(rng, 6);
    const SymMatrix sum{add(b1.mat(), b2.mat())};
    const std::size_t m_hat = 1;
    const double lhs = -d_dderiv(w, sum, m_hat);
    const double rhs = -d_dderiv(w, b1, m_hat) - d_dderiv(w, b2, m_hat);
    CHECK(lhs <= rhs + 1e-9);
  }
}

TEST_CASE("simple spectra give two-sided derivatives") {
  Rng rng(407);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 1 + rng.index(4);
    const SymMatrix a = random_pd(rng, n);
    const auto w = williamson(a);
    bool simple = true;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (w.d[k + 1] - w.d[k] <= 1e-6 * std::max(1.0, w.d[k])) simple = false;
    }
    if (!simple) continue;
    const SymMatrix b = random_sym(rng, 2 * n);
    const SymMatrix nb{scaled(b.mat(), -1.0)};
    for (std::size_t m = 1; m <= n; ++m) {
      CHECK(d_dderiv(w, nb, m) == doctest::Approx(-d_dderiv(w, b, m)).epsilon(1e-8));
      CHECK(sigma_dderiv(w, nb, m) ==
            doctest::Approx(-sigma_dderiv(w, b, m)).epsilon(1e-8));
    }
  }
}

TEST_CASE("derivatives do not depend on the frame") {
  Rng rng(408);
  const std::vector<double> d = {1.0, 1.0, 3.0};
  const auto w1 = planted_decomposition(rng, d);
  const SymMatrix a = planted_matrix(w1);
  const auto w2 = williamson(a);
  const SymMatrix b = random_sym(rng, 6);
  for (std::size_t m = 1; m <= 3; ++m) {
    CHECK(sigma_dderiv(w1, b, m) ==
          doctest::Approx(sigma_dderiv(w2, b, m)).epsilon(1e-8));
    CHECK(d_dderiv(w1, b, m) == doctest::Approx(d_dderiv(w2, b, m)).epsilon(1e-8));
  }

  WilliamsonDecomposition id;
  id.m = Mat::identity(4);
  id.d = {1.0, 1.0};
  const SymMatrix dir = random_sym(rng, 4);
  const auto spun = planted_decomposition(rng, {1.0, 1.0});
  CHECK(sigma_dderiv(id, dir, 1) ==
        doctest::Approx(sigma_dderiv(spun, dir, 1)).epsilon(1e-10));
  CHECK(d_dderiv(id, dir, 2) == doctest::Approx(d_dderiv(spun, dir, 2)).epsilon(1e-10));
}

TEST_CASE("gradient in the simple case") {
  const SymMatrix a = SymMatrix::diagonal({1.0, 4.0});
  const SymMatrix g = sigma_gradient(a, 1);
  CHECK(g.mat()(0, 0) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(g.mat()(1, 1) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::fabs(g.mat()(0, 1)) <= 1e-12);

  const SymMatrix i6{Mat::identity(6)};
  const SymMatrix gi = sigma_gradient(i6, 3);
  CHECK(frobenius_norm(sub(gi.mat(), scaled(Mat::identity(6), -1.0))) <= 1e-10);
}

TEST_CASE("gradient pairs with every direction like the derivative") {
  Rng rng(409);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 1 + rng.index(3);
    const SymMatrix a = random_pd(rng, n);
    const auto w = williamson(a);
    for (std::size_t m = 1; m <= n; ++m) {
      const auto idx = multiplicity_indices(w.d, m);
      if (idx.j > 0) continue;
      const SymMatrix g = sigma_gradient(w, m);
      const auto evals = sym_eigenvalues(g, EigenOrder::descending);
      CHECK(evals.front() <= 1e-12);
      for (int probe = 0; probe < 5; ++probe) {
        const SymMatrix b = random_sym(rng, 2 * n);
        CHECK(frobenius_inner(g.mat(), b.mat()) ==
              doctest::Approx(sigma_dderiv(w, b, m)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("gradient refuses a blocking cluster") {
  const SymMatrix i4{Mat::identity(4)};
  bool thrown = false;
  try {
    (void)sigma_gradient(i4, 1);
  } catch (const GapError& e) {
    thrown = true;
    CHECK(e.cluster_first() == 1);
    CHECK(e.cluster_last() == 2);
  }
  CHECK(thrown);
}
