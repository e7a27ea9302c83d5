#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sympl/kernels.hpp"
#include "sympl/rng.hpp"

using namespace sympl;
using kernels::Isa;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform(-2.0, 2.0);
  return x;
}

}  // namespace

TEST_CASE("scalar reference values") {
  const auto& t = kernels::table(Isa::scalar);

  double x[] = {1.0, -2.0, 3.0};
  double y[] = {4.0, 5.0, -6.0};
  CHECK(t.dot(x, y, 3) == -24.0);
  CHECK(t.asum(x, 3) == 6.0);

  t.axpy(2.0, x, y, 3);
  CHECK(y[0] == 6.0);
  CHECK(y[1] == 1.0);
  CHECK(y[2] == 0.0);

  t.scale(-1.0, x, 3);
  CHECK(x[0] == -1.0);
  CHECK(x[1] == 2.0);
  CHECK(x[2] == -3.0);

  double u[] = {1.0, 0.0};
  double v[] = {0.0, 1.0};
  t.rot(u, v, 0.0, 1.0, 2);
  CHECK(u[0] == 0.0);
  CHECK(u[1] == -1.0);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.0);

  CHECK(t.dot(x, y, 0) == 0.0);
  CHECK(t.asum(x, 0) == 0.0);
}

TEST_CASE("simd variants match scalar") {
  const auto& ref = kernels::table(Isa::scalar);
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (!kernels::isa_available(isa)) continue;
    CAPTURE(kernels::isa_name(isa));
    const auto& t = kernels::table(isa);

    Rng rng(0x5eedULL + static_cast<unsigned>(isa));
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3},
                          std::size_t{4}, std::size_t{7}, std::size_t{8},
                          std::size_t{17}, std::size_t{64}, std::size_t{67}}) {
      auto x = random_vec(rng, n);
      auto y = random_vec(rng, n);
      const double a = rng.uniform(-3.0, 3.0);
      const double th = rng.uniform(0.0, 6.28318530717958647692);
      const double c = std::cos(th), s = std::sin(th);

      // Reductions may reassociate; bound the difference instead.
      const double scale_bound =
          1e-13 * (1.0 + ref.asum(x.data(), n) + ref.asum(y.data(), n));
      CHECK(std::fabs(t.dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) <=
            scale_bound);
      CHECK(std::fabs(t.asum(x.data(), n) - ref.asum(x.data(), n)) <= scale_bound);

      // Elementwise kernels must agree bit for bit.
      auto y1 = y, y2 = y;
      ref.axpy(a, x.data(), y1.data(), n);
      t.axpy(a, x.data(), y2.data(), n);
      CHECK(y1 == y2);

      auto x1 = x, x2 = x;
      ref.scale(a, x1.data(), n);
      t.scale(a, x2.data(), n);
      CHECK(x1 == x2);

      auto u1 = x, u2 = x, v1 = y, v2 = y;
      ref.rot(u1.data(), v1.data(), c, s, n);
      t.rot(u2.data(), v2.data(), c, s, n);
      CHECK(u1 == u2);
      CHECK(v1 == v2);
    }
  }
}

TEST_CASE("dispatch is consistent") {
  const Isa isa = kernels::active_isa();
  CHECK(kernels::isa_available(isa));
  CHECK(&kernels::active_table() == &kernels::table(isa));
  CHECK(kernels::isa_name(Isa::scalar) == std::string("scalar"));
  CHECK(kernels::isa_available(Isa::scalar));

  double x[] = {1.5, 2.5};
  CHECK(kernels::dot(x, x, 2) == 1.5 * 1.5 + 2.5 * 2.5);
  CHECK(kernels::asum(x, 2) == 4.0);
}
