#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "sympl/core.hpp"
#include "sympl/errors.hpp"
#include "sympl/harness.hpp"
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

double abs_det(const Mat& m) {
  const auto evals = sym_eigenvalues(SymMatrix(matmul_tn(m, m)), EigenOrder::ascending);
  double prod = 1.0;
  for (double v : evals) prod *= v;
  return std::sqrt(prod);
}

}  // namespace

TEST_CASE("finite differences reproduce a linear functional") {
  Rng rng(601);
  const SymMatrix a = random_pd(rng, 2);
  const SymMatrix b = random_sym(rng, 4);
  const SymMatrix c = random_sym(rng, 4);

  const auto f = [&c](const SymMatrix& x) { return frobenius_inner(c.mat(), x.mat()); };
  const auto rep = fd_directional_derivative(f, a, b);
  const double expect = frobenius_inner(c.mat(), b.mat());

  CHECK(rep.samples.size() >= 10);
  for (std::size_t k = 0; k + 1 < rep.samples.size(); ++k) {
    CHECK(rep.samples[k].first > rep.samples[k + 1].first);
  }
  CHECK(rep.estimate ==
        doctest::Approx(expect).epsilon(1e-6).scale(1.0 + std::fabs(expect)));
  CHECK(rep.error_estimate <= 1e-6 * (1.0 + std::fabs(expect)));
  CHECK(rep.step_used > 0.0);
}

TEST_CASE("finite differences pin the stretched identity slope") {
  const SymMatrix a{Mat::identity(2)};
  const SymMatrix b = SymMatrix::diagonal({2.0, 4.0});
  const auto f = [](const SymMatrix& x) { return symplectic_eigenvalues(x)[0]; };
  const auto rep = fd_directional_derivative(f, a, b);
  CHECK(rep.estimate == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("finite differences are exact on a linear eigenvalue curve") {
  const SymMatrix a{Mat::identity(4)};
  const SymMatrix b = SymMatrix::diagonal({1.0, 2.0, 1.0, 2.0});
  const auto f = [](const SymMatrix& x) { return symplectic_eigenvalues(x)[1]; };
  const auto rep = fd_directional_derivative(f, a, b);
  CHECK(rep.estimate == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("finite differences skip steps that leave the cone") {
  const SymMatrix a{Mat::identity(2)};
  const SymMatrix b{scaled(Mat::identity(2), -1.0)};
  const auto f = [](const SymMatrix& x) { return symplectic_eigenvalues(x)[0]; };
  const auto rep = fd_directional_derivative(f, a, b, 1e-8, 4.0);

  CHECK(rep.samples.size() >= 2);
  for (const auto& [t, q] : rep.samples) {
    CHECK(t < 1.0);
    CHECK(q == doctest::Approx(-1.0).epsilon(1e-9));
  }
  CHECK(rep.estimate == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("finite differences report unusable functions") {
  const SymMatrix a{Mat::identity(2)};
  const SymMatrix b{Mat::identity(2)};
  const auto f = [](const SymMatrix& x) -> double {
    if (x(0, 0) > 1.0) throw PreconditionError("perturbed point rejected");
    return 0.0;
  };
  CHECK_THROWS_AS((void)fd_directional_derivative(f, a, b), PreconditionError);

  const auto ok = [](const SymMatrix&) { return 1.0; };
  CHECK_THROWS_AS((void)fd_directional_derivative(ok, a, b, -1.0, 1.0),
                  PreconditionError);
}

TEST_CASE("finite differences track the closed forms") {
  Rng rng(602);
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = 1 + rng.index(3);
    const SymMatrix a = random_pd(rng, n);
    const auto w = williamson(a);
    bool separated = true;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (w.d[k + 1] - w.d[k] <= 1e-3 * std::max(1.0, w.d[k])) separated = false;
    }
    if (!separated) continue;
    const SymMatrix b = random_sym(rng, 2 * n);
    const std::size_t m = 1 + rng.index(n);

    const auto fd_d = fd_directional_derivative(
        [m](const SymMatrix& x) { return symplectic_eigenvalues(x)[m - 1]; }, a, b);
    const double closed_d = d_dderiv(w, b, m);
    CHECK(fd_d.estimate ==
          doctest::Approx(closed_d).epsilon(5e-6).scale(1.0 + std::fabs(closed_d)));

    const auto fd_s = fd_directional_derivative(
        [m](const SymMatrix& x) { return sigma_m(x, m); }, a, b);
    const double closed_s = sigma_dderiv(w, b, m);
    CHECK(fd_s.estimate ==
          doctest::Approx(closed_s).epsilon(5e-6).scale(1.0 + std::fabs(closed_s)));
  }
}

TEST_CASE("random symplectic matrices satisfy the form identity") {
  const Mat rot = random_symplectic(1, 42);
  CHECK(rot(0, 0) == doctest::Approx(rot(1, 1)).epsilon(1e-14));
  CHECK(rot(0, 1) == doctest::Approx(-rot(1, 0)).epsilon(1e-14));
  CHECK(verify_symplectic(rot).residual <= 1e-12);

  Rng rng(603);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.index(6);
    const double spread = (trial % 2 == 0) ? 0.0 : rng.uniform(0.1, 1.2);
    const Mat m = random_symplectic(n, 7000 + trial, spread);
    CHECK(verify_symplectic(m).pass);
    CHECK(abs_det(m) == doctest::Approx(1.0).epsilon(1e-9));
    if (spread == 0.0) {
      CHECK(frobenius_norm(sub(matmul_tn(m, m), Mat::identity(2 * n))) <= 1e-12);
    }
  }

  const Mat m1 = random_symplectic(3, 99, 0.5);
  const Mat m2 = random_symplectic(3, 99, 0.5);
  const Mat m3 = random_symplectic(3, 100, 0.5);
  CHECK(frobenius_norm(sub(m1, m2)) == 0.0);
  CHECK(frobenius_norm(sub(m1, m3)) > 0.0);

  CHECK_THROWS_AS((void)random_symplectic(2, 1, -0.1), PreconditionError);
}

TEST_CASE("planted spectra close the oracle loop") {
  const auto flat = pd_with_spectrum({{1.0, 1.0, 1.0}, 11, 0.0});
  CHECK(frobenius_norm(sub(flat.a.mat(), Mat::identity(6))) <= 1e-12);

  Rng rng(604);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.index(5);
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = rng.uniform(0.5, 5.0);
    if (n >= 2 && trial % 3 == 0) d[1] = d[0];
    const auto out = pd_with_spectrum({d, 8000 + static_cast<std::uint64_t>(trial),
                                       rng.uniform(0.0, 1.0)});

    CHECK(verify_symplectic(out.n_factor).pass);
    for (std::size_t k = 0; k + 1 < n; ++k) CHECK(out.d_sorted[k] <= out.d_sorted[k + 1]);

    const auto recovered = symplectic_eigenvalues(out.a);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(recovered[k] ==
            doctest::Approx(out.d_sorted[k]).epsilon(1e-8));
    }

    Mat dd(2 * n, 2 * n);
    for (std::size_t j = 0; j < n; ++j) dd(j, j) = dd(n + j, n + j) = out.d_sorted[j];
    const Mat rebuilt = matmul_tn(out.n_factor, matmul(dd, out.n_factor));
    CHECK(frobenius_norm(sub(rebuilt, out.a.mat())) <= 1e-12 * (1.0 + frobenius_norm(out.a.mat())));
  }

  CHECK_THROWS_AS((void)pd_with_spectrum({{}, 0, 0.0}), PreconditionError);
  CHECK_THROWS_AS((void)pd_with_spectrum({{1.0, -2.0}, 0, 0.0}), PreconditionError);
}

TEST_CASE("phi map is hermitian with the symplectic spectrum") {
  const CMat phi_id = phi_map(SymMatrix{Mat::identity(2)});
  CHECK(phi_id(0, 0) == Complex(0.0, 0.0));
  CHECK(phi_id(0, 1) == Complex(0.0, 1.0));
  CHECK(phi_id(1, 0) == Complex(0.0, -1.0));

  const CMat phi_a = phi_map(SymMatrix::diagonal({1.0, 9.0, 4.0, 16.0}));
  CHECK(HermMatrix{phi_a}.max_deviation() <= 1e-12);
  const auto evals = herm_eigen(HermMatrix{phi_a}).values;
  CHECK(evals[0] == doctest::Approx(12.0).epsilon(1e-10));
  CHECK(evals[1] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(evals[2] == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(evals[3] == doctest::Approx(-12.0).epsilon(1e-10));
}

TEST_CASE("midpoint gap of the curvature witness is indefinite") {
  const auto rep = nonconvexity_example();
  const double c = (std::sqrt(10.0) - 3.0) / 2.0;

  CHECK(rep.phi_a(0, 1).real() == doctest::Approx(0.0));
  CHECK(rep.phi_a(0, 1).imag() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rep.phi_midpoint(0, 1).imag() ==
        doctest::Approx(std::sqrt(10.0) / 2.0).epsilon(1e-14));
  CHECK(rep.gap(0, 1).imag() == doctest::Approx(c).epsilon(1e-12));

  REQUIRE(rep.gap_eigenvalues.size() == 2);
  CHECK(rep.gap_eigenvalues[0] == doctest::Approx(c).epsilon(1e-12));
  CHECK(rep.gap_eigenvalues[1] == doctest::Approx(-c).epsilon(1e-12));
  CHECK(rep.verdict == "neither negative semidefinite nor positive semidefinite");
}

TEST_CASE("transformation norm bound") {
  for (std::size_t n : {1, 2, 3}) {
    const SymMatrix a{Mat::identity(2 * n)};
    const auto rep = norm_bound_check(a, williamson(a));
    CHECK(rep.frobenius_sq == doctest::Approx(2.0 * static_cast<double>(n)).epsilon(1e-12));
    CHECK(rep.kappa == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.pass);
  }

  const SymMatrix a = SymMatrix::diagonal({1.0, 4.0});
  const auto rep = norm_bound_check(a, williamson(a));
  CHECK(rep.frobenius_sq == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(rep.kappa == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rep.bound == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(rep.pass);

  Rng rng(605);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.index(4);
    const SymMatrix p = random_pd(rng, n);
    CHECK(norm_bound_check(p, williamson(p)).pass);
  }

  CHECK_THROWS_AS((void)norm_bound_check(SymMatrix::diagonal({1.0, -1.0}),
                                         williamson(SymMatrix{Mat::identity(2)})),
                  NotPositiveDefiniteError);
}

TEST_CASE("cluster rotation produces a second valid frame") {
  Mat n_factor = random_symplectic(3, 4242, 0.4);
  Mat dd(6, 6);
  const std::vector<double> d = {1.0, 1.0, 3.0};
  for (std::size_t j = 0; j < 3; ++j) dd(j, j) = dd(3 + j, 3 + j) = d[j];
  const SymMatrix a{matmul_tn(n_factor, matmul(dd, n_factor))};
  const auto w = williamson(a);

  const auto spun = reframe(w, 31);
  CHECK(frobenius_norm(sub(spun.m, w.m)) > 1e-3);
  CHECK(spun.d == w.d);
  CHECK(verify_symplectic(spun.m).pass);
  CHECK(verify_eigen_pairs(a, spun.m, spun.d).pass);

  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(spun.m(i, 2) == w.m(i, 2));
    CHECK(spun.m(i, 5) == w.m(i, 5));
  }

  const auto again = reframe(w, 31);
  CHECK(frobenius_norm(sub(spun.m, again.m)) == 0.0);

  const SymMatrix simple = SymMatrix::diagonal({1.0, 9.0, 4.0, 16.0});
  const auto ws = williamson(simple);
  const auto same = reframe(ws, 7);
  CHECK(frobenius_norm(sub(same.m, ws.m)) == 0.0);
}
