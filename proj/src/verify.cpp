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

#include "sympl/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "sympl/core.hpp"
#include "sympl/errors.hpp"
#include "sympl/harness.hpp"
#include "sympl/matrix.hpp"
#include "sympl/rng.hpp"
#include "sympl/sensitivity.hpp"
#include "sympl/subdifferential.hpp"
#include "sympl/williamson.hpp"

namespace sympl {

const VerifyMetric* SuiteResult::metric(const std::string& metric_name) const {
  for (const VerifyMetric& m : metrics) {
    if (m.name == metric_name) return &m;
  }
  return nullptr;
}

namespace {

std::size_t resolve_workers(const VerifyOptions& opts) {
  std::size_t workers = opts.threads;
  if (workers == 0) {
    workers = std::max<unsigned>(1, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("SYMPL_THREADS")) {
      const unsigned long parsed = std::strtoul(cap, nullptr, 10);
      if (parsed >= 1) workers = std::min<std::size_t>(workers, parsed);
    }
  }
  return std::max<std::size_t>(1, workers);
}

// Runs body(0..count-1), fanning out over `workers` threads. Trials must
// write only to their own slot of any shared state.
template <typename Body>
void run_trials(std::size_t count, std::size_t workers, const Body& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const std::size_t spawn = std::min(workers, count);
  pool.reserve(spawn);
  for (std::size_t w = 0; w < spawn; ++w) {
    pool.emplace_back([&next, count, &body] {
      for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
        body(k);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Worst-value accumulator for one gated quantity.
class Gauge {
 public:
  Gauge(std::string name, double gate)
      : name_(std::move(name)), gate_(gate) {}

  void feed(double value) {
    worst_ = std::max(worst_, value);
    if (value > gate_) ++failures_;
  }

  VerifyMetric metric() const {
    return {name_, std::isfinite(worst_) ? worst_ : 0.0, gate_, failures_};
  }

 private:
  std::string name_;
  double gate_;
  double worst_ = -std::numeric_limits<double>::infinity();
  std::size_t failures_ = 0;
};

SuiteResult finalize(std::string name, std::size_t trials, double seconds,
                     std::vector<VerifyMetric> metrics) {
  SuiteResult out;
  out.name = std::move(name);
  out.trials = trials;
  out.seconds = seconds;
  out.metrics = std::move(metrics);
  out.pass = true;
  for (const VerifyMetric& m : out.metrics) {
    if (!m.pass()) out.pass = false;
  }
  return out;
}

SymMatrix random_direction(Rng& rng, std::size_t dim) {
  Mat g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.normal();
  Mat s = add(g, transpose(g));
  const double norm = frobenius_norm(s);
  if (norm > 0.0) s = scaled(s, 1.0 / norm);
  return SymMatrix(std::move(s));
}

SymMatrix random_pd_probe(Rng& rng, std::size_t dim) {
  Mat g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.normal();
  return SymMatrix(
      add(matmul_tn(g, g), scaled(Mat::identity(dim), 0.2 + rng.uniform01())));
}

// Spectrum with every adjacent gap at least `gap`, values starting near low.
std::vector<double> separated_spectrum(Rng& rng, std::size_t n, double gap) {
  std::vector<double> d(n);
  double cur = 0.5 + rng.uniform01();
  for (std::size_t k = 0; k < n; ++k) {
    d[k] = cur;
    cur += gap + rng.uniform01();
  }
  return d;
}

// Spectrum made of exactly-repeated groups with clear gaps between groups.
std::vector<double> degenerate_spectrum(Rng& rng, std::size_t n) {
  std::vector<double> d;
  d.reserve(n);
  double cur = 0.5 + rng.uniform01();
  while (d.size() < n) {
    std::size_t group = 1 + rng.index(std::min<std::size_t>(3, n - d.size()));
    if (d.size() + group > n) group = n - d.size();
    for (std::size_t k = 0; k < group; ++k) d.push_back(cur);
    cur += 0.3 + rng.uniform01();
  }
  return d;
}

struct WilliamsonTrial {
  double symplectic = 0.0;
  double congruence = 0.0;
  double spectrum = 0.0;
  double norm_ratio = 0.0;
  double kappa = 0.0;
  bool error = false;
};

struct DerivativeTrial {
  double fd_d = 0.0;
  double fd_sigma = 0.0;
  double identity = 0.0;
  bool degenerate = false;
  bool error = false;
};

struct GradientTrial {
  double pairing = 0.0;
  double antisymmetry = 0.0;
  bool error = false;
};

struct SubdiffTrial {
  double fenchel_slack = 0.0;     // max over probes of -(Fenchel slack)
  double fenchel_gap = 0.0;       // |exact - sampled max|, optimal included
  double fenchel_overshoot = 0.0; // max(sampled max - exact, 0)
  double exact_tie = 0.0;         // |support exact - sigma_dderiv|
  double clarke_gap = 0.0;
  double clarke_overshoot = 0.0;
  double cluster_spread = 0.0;
  bool error = false;
};

struct ExtremalTrial {
  double violation = 0.0;  // -tr(S^T A S) - sigma_m over random frames
  double equality = 0.0;   // |attained - sigma_m| at the Williamson frame
  bool error = false;
};

struct MonotonicityTrial {
  double worst = 0.0;
  bool failed = false;
  bool error = false;
};

}  // namespace

SuiteResult verify_example1() {
  const Stopwatch clock;
  Gauge matrices("example matrices entrywise", 1e-12);
  Gauge eigenvalues("gap eigenvalues", 1e-12);
  Gauge verdict("verdict mismatches", 0.0);

  const auto rep = nonconvexity_example();
  const double c = (std::sqrt(10.0) - 3.0) / 2.0;
  const double mid = std::sqrt(10.0) / 2.0;

  const auto entry_dev = [](const CMat& got, double off) {
    double worst = 0.0;
    const Complex expect[2][2] = {{Complex(0.0, 0.0), Complex(0.0, off)},
                                  {Complex(0.0, -off), Complex(0.0, 0.0)}};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        worst = std::max(worst, std::abs(got(i, j) - expect[i][j]));
    return worst;
  };
  matrices.feed(entry_dev(rep.phi_identity, 1.0));
  matrices.feed(entry_dev(rep.phi_a, 2.0));
  matrices.feed(entry_dev(rep.phi_midpoint, mid));
  matrices.feed(entry_dev(rep.gap, c));

  eigenvalues.feed(std::fabs(rep.gap_eigenvalues[0] - c));
  eigenvalues.feed(std::fabs(rep.gap_eigenvalues[1] + c));

  verdict.feed(
      rep.verdict == "neither negative semidefinite nor positive semidefinite" ? 0.0
                                                                               : 1.0);

  return finalize("example1", 1, clock.seconds(),
                  {matrices.metric(), eigenvalues.metric(), verdict.metric()});
}

SuiteResult verify_williamson(const VerifyOptions& opts) {
  const Stopwatch clock;
  const std::size_t trials = opts.trials ? opts.trials : 500;
  const std::size_t max_n = opts.max_n ? opts.max_n : 8;
  std::vector<WilliamsonTrial> slots(trials);

  run_trials(trials, resolve_workers(opts), [&](std::size_t k) {
    WilliamsonTrial& slot = slots[k];
    try {
      Rng rng = Rng(opts.seed).split(k);
      const std::size_t n = 1 + rng.index(max_n);
      std::vector<double> d(n);
      for (std::size_t j = 0; j < n; ++j) d[j] = rng.uniform(0.5, 5.0);
      if (rng.uniform01() < 0.5) {
        for (std::size_t j = 1; j < n; ++j) {
          if (rng.uniform01() < 0.4) d[j] = d[j - 1];
        }
      }
      const double spread = rng.uniform(0.0, 1.1);
      const auto planted = pd_with_spectrum({d, rng.next_u64(),
                                             spread});

      const auto w = williamson(planted.a);
      slot.symplectic = verify_symplectic(w.m).residual;

      const std::size_t dim = 2 * n;
      Mat dd(dim, dim);
      for (std::size_t j = 0; j < n; ++j) dd(j, j) = dd(n + j, n + j) = w.d[j];
      const Mat congr = matmul_tn(w.m, matmul(planted.a.mat(), w.m));
      slot.congruence =
          frobenius_norm(sub(congr, dd)) / frobenius_norm(planted.a.mat());

      for (std::size_t j = 0; j < n; ++j) {
        slot.spectrum = std::max(
            slot.spectrum,
            std::fabs(w.d[j] - planted.d_sorted[j]) / planted.d_sorted[j]);
      }

      const auto bound = norm_bound_check(planted.a, w);
      slot.norm_ratio = bound.frobenius_sq / bound.bound;
      slot.kappa = bound.kappa;
    } catch (const Error&) {
      slot.error = true;
    }
  });

  Gauge symplectic("symplectic residual", 1e-8);
  Gauge congruence("relative congruence residual", 1e-8);
  Gauge spectrum("relative spectrum error", 1e-8);
  Gauge norm_bound("norm bound ratio", 1.0 + 1e-9);
  Gauge kappa("condition number", 1e4);
  Gauge errors("exceptions", 0.0);
  for (const WilliamsonTrial& s : slots) {
    errors.feed(s.error ? 1.0 : 0.0);
    if (s.error) continue;
    symplectic.feed(s.symplectic);
    congruence.feed(s.congruence);
    spectrum.feed(s.spectrum);
    norm_bound.feed(s.norm_ratio);
    kappa.feed(s.kappa);
  }
  return finalize("williamson", trials, clock.seconds(),
                  {symplectic.metric(), congruence.metric(), spectrum.metric(),
                   norm_bound.metric(), kappa.metric(), errors.metric()});
}

SuiteResult verify_derivative(const VerifyOptions& opts) {
  const Stopwatch clock;
  const std::size_t separated = opts.trials ? opts.trials : 200;
  const std::size_t degenerate = std::max<std::size_t>(1, separated / 2);
  const std::size_t trials = separated + degenerate;
  const std::size_t max_n = opts.max_n ? opts.max_n : 6;
  std::vector<DerivativeTrial> slots(trials);

  run_trials(trials, resolve_workers(opts), [&](std::size_t k) {
    DerivativeTrial& slot = slots[k];
    slot.degenerate = k >= separated;
    try {
      Rng rng = Rng(opts.seed ^ 0x5eed0001).split(k);
      const std::size_t n =
          slot.degenerate ? 2 + rng.index(max_n - 1) : 1 + rng.index(max_n);
      const std::vector<double> d = slot.degenerate ? degenerate_spectrum(rng, n)
                                                    : separated_spectrum(rng, n, 0.2);
      const auto planted =
          pd_with_spectrum({d, rng.next_u64(), rng.uniform(0.0, 0.5)});
      const SymMatrix b = random_direction(rng, 2 * n);
      const std::size_t m = 1 + rng.index(n);
      const auto w = williamson(planted.a);

      const double closed_d = d_dderiv(w, b, m);
      const auto fd_d = fd_directional_derivative(
          [m](const SymMatrix& x) { return symplectic_eigenvalues(x)[m - 1]; },
          planted.a, b);
      slot.fd_d = std::fabs(closed_d - fd_d.estimate);

      const double closed_s = sigma_dderiv(w, b, m);
      const auto fd_s = fd_directional_derivative(
          [m](const SymMatrix& x) { return sigma_m(x, m); }, planted.a, b);
      slot.fd_sigma = std::fabs(closed_s - fd_s.estimate);

      const double prev = (m == 1) ? 0.0 : sigma_dderiv(w, b, m - 1);
      slot.identity = std::fabs(2.0 * closed_d - (prev - closed_s));
    } catch (const Error&) {
      slot.error = true;
    }
  });

  Gauge fd_sep("separated fd discrepancy", 5e-6);
  Gauge fd_deg("degenerate fd discrepancy", 1e-4);
  Gauge identity("pair of sums identity", 1e-9);
  Gauge exact("exact kink case", 1e-10);
  Gauge errors("exceptions", 0.0);
  for (const DerivativeTrial& s : slots) {
    errors.feed(s.error ? 1.0 : 0.0);
    if (s.error) continue;
    if (s.degenerate) {
      fd_deg.feed(s.fd_d);
      fd_deg.feed(s.fd_sigma);
    } else {
      fd_sep.feed(s.fd_d);
      fd_sep.feed(s.fd_sigma);
    }
    identity.feed(s.identity);
  }

  const SymMatrix i4{Mat::identity(4)};
  const SymMatrix kink = SymMatrix::diagonal({1.0, 2.0, 1.0, 2.0});
  exact.feed(std::fabs(d_dderiv(i4, kink, 1) - 1.0));
  exact.feed(std::fabs(d_dderiv(i4, kink, 2) - 2.0));

  return finalize("derivative", trials, clock.seconds(),
                  {fd_sep.metric(), fd_deg.metric(), identity.metric(), exact.metric(),
                   errors.metric()});
}

SuiteResult verify_gradient(const VerifyOptions& opts) {
  const Stopwatch clock;
  const std::size_t trials = opts.trials ? opts.trials : 100;
  const std::size_t max_n = opts.max_n ? opts.max_n : 6;
  std::vector<GradientTrial> slots(trials);

  run_trials(trials, resolve_workers(opts), [&](std::size_t k) {
    GradientTrial& slot = slots[k];
    try {
      Rng rng = Rng(opts.seed ^ 0x5eed0002).split(k);
      const std::size_t n = 1 + rng.index(max_n);
      const auto planted = pd_with_spectrum({separated_spectrum(rng, n, 0.2),
                                             rng.next_u64(),
                                             rng.uniform(0.0, 0.5)});
      const auto w = williamson(planted.a);
      const std::size_t m = 1 + rng.index(n);
      const SymMatrix g = sigma_gradient(w, m);
      const SymMatrix b = random_direction(rng, 2 * n);

      const double forward = sigma_dderiv(w, b, m);
      const double backward = sigma_dderiv(w, SymMatrix{scaled(b.mat(), -1.0)}, m);
      slot.pairing = std::fabs(frobenius_inner(g.mat(), b.mat()) - forward);
      slot.antisymmetry = std::fabs(forward + backward);
    } catch (const Error&) {
      slot.error = true;
    }
  });

  Gauge pairing("gradient pairing", 1e-8);
  Gauge antisymmetry("derivative antisymmetry", 1e-8);
  Gauge errors("exceptions", 0.0);
  for (const GradientTrial& s : slots) {
    errors.feed(s.error ? 1.0 : 0.0);
    if (s.error) continue;
    pairing.feed(s.pairing);
    antisymmetry.feed(s.antisymmetry);
  }
  return finalize("gradient", trials, clock.seconds(),
                  {pairing.metric(), antisymmetry.metric(), errors.metric()});
}

SuiteResult verify_subdiff(const VerifyOptions& opts) {
  const Stopwatch clock;
  const std::size_t trials = opts.trials ? opts.trials : 100;
  const std::size_t max_n = opts.max_n ? opts.max_n : 5;
  std::vector<SubdiffTrial> slots(trials);

  run_trials(trials, resolve_workers(opts), [&](std::size_t k) {
    SubdiffTrial& slot = slots[k];
    try {
      Rng rng = Rng(opts.seed ^ 0x5eed0003).split(k);
      const std::size_t n = 1 + rng.index(max_n);
      const std::vector<double> d = (rng.uniform01() < 0.5 && n >= 2)
                                        ? degenerate_spectrum(rng, n)
                                        : separated_spectrum(rng, n, 0.2);
      const auto planted =
          pd_with_spectrum({d, rng.next_u64(), rng.uniform(0.0, 0.5)});
      const auto w = williamson(planted.a);
      const SymMatrix b = random_direction(rng, 2 * n);
      const std::size_t m = 1 + rng.index(n);
      const std::uint64_t sample_seed = rng.next_u64();

      const auto idx = multiplicity_indices(w.d, m);
      const auto red = reduce_direction(w, b, idx);
      const auto eig = herm_eigen(red.cluster_herm);

      auto sample = fenchel_extreme_points(w, m, 20, sample_seed);
      sample.elements.push_back(fenchel_element(w, optimal_delta_element(idx, eig)));
      const double sigma_a = sigma_m(w.d, m);
      for (int probe = 0; probe < 20; ++probe) {
        const SymMatrix p = random_pd_probe(rng, 2 * n);
        const double gain = sigma_m(p, m) - sigma_a;
        const Mat step = sub(p.mat(), planted.a.mat());
        for (const SymMatrix& g : sample.elements) {
          const double slack = gain - frobenius_inner(g.mat(), step);
          slot.fenchel_slack = std::max(slot.fenchel_slack, -slack);
        }
      }

      const auto frep = fenchel_support(w, b, m, 20, sample_seed);
      slot.fenchel_gap = std::fabs(frep.gap);
      slot.fenchel_overshoot = std::max(-frep.gap, 0.0);
      slot.exact_tie = std::fabs(frep.exact - sigma_dderiv(w, b, m));

      const auto crep = support_gap(w, b, m, 20, sample_seed + 1);
      slot.clarke_gap = std::fabs(crep.gap);
      slot.clarke_overshoot = std::max(-crep.gap, 0.0);

      if (idx.r >= 2) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t mm = idx.m_hat; mm < idx.m_hat + idx.r; ++mm) {
          const double v = clarke_mp_dderiv(w, b, mm);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        slot.cluster_spread = hi - lo;
      }
    } catch (const Error&) {
      slot.error = true;
    }
  });

  Gauge slack("fenchel inequality slack", 1e-8);
  Gauge fgap("fenchel support gap", 1e-8);
  Gauge fover("fenchel support overshoot", 1e-9);
  Gauge tie("fenchel exact vs derivative", 1e-10);
  Gauge cgap("clarke support gap", 1e-8);
  Gauge cover("clarke support overshoot", 1e-9);
  Gauge cluster("cluster independence", 1e-12);
  Gauge errors("exceptions", 0.0);
  for (const SubdiffTrial& s : slots) {
    errors.feed(s.error ? 1.0 : 0.0);
    if (s.error) continue;
    slack.feed(s.fenchel_slack);
    fgap.feed(s.fenchel_gap);
    fover.feed(s.fenchel_overshoot);
    tie.feed(s.exact_tie);
    cgap.feed(s.clarke_gap);
    cover.feed(s.clarke_overshoot);
    cluster.feed(s.cluster_spread);
  }
  return finalize("subdiff", trials, clock.seconds(),
                  {slack.metric(), fgap.metric(), fover.metric(), tie.metric(),
                   cgap.metric(), cover.metric(), cluster.metric(), errors.metric()});
}

SuiteResult verify_extremal(const VerifyOptions& opts) {
  const Stopwatch clock;
  const std::size_t trials = opts.trials ? opts.trials : 100;
  const std::size_t max_n = opts.max_n ? opts.max_n : 6;
  std::vector<ExtremalTrial> slots(trials);

  run_trials(trials, resolve_workers(opts), [&](std::size_t k) {
    ExtremalTrial& slot = slots[k];
    try {
      Rng rng = Rng(opts.seed ^ 0x5eed0004).split(k);
      const std::size_t n = 1 + rng.index(max_n);
      const std::vector<double> d = (rng.uniform01() < 0.5 && n >= 2)
                                        ? degenerate_spectrum(rng, n)
                                        : separated_spectrum(rng, n, 0.2);
      const auto planted =
          pd_with_spectrum({d, rng.next_u64(), rng.uniform(0.0, 0.8)});
      const auto w = williamson(planted.a);
      const std::size_t m = 1 + rng.index(n);
      const double sigma = sigma_m(w.d, m);

      const Mat frame =
          random_symplectic(n, rng.next_u64(), rng.uniform(0.0, 1.0));
      const auto parts = symplectic_column_partition(frame, {m, n - m});
      const Mat& s_rand = parts.blocks[0];
      const double attained_rand =
          -trace(matmul_tn(s_rand, matmul(planted.a.mat(), s_rand)));
      slot.violation = attained_rand - sigma;

      const auto own = symplectic_column_partition(w.m, {m, n - m});
      const double attained_own =
          -trace(matmul_tn(own.blocks[0], matmul(planted.a.mat(), own.blocks[0])));
      slot.equality = std::fabs(attained_own - sigma);
    } catch (const Error&) {
      slot.error = true;
    }
  });

  Gauge violation("frame bound violation", 1e-9);
  Gauge equality("equality at decomposition frame", 1e-8);
  Gauge errors("exceptions", 0.0);
  for (const ExtremalTrial& s : slots) {
    errors.feed(s.error ? 1.0 : 0.0);
    if (s.error) continue;
    violation.feed(s.violation);
    equality.feed(s.equality);
  }
  return finalize("extremal", trials, clock.seconds(),
                  {violation.metric(), equality.metric(), errors.metric()});
}

SuiteResult verify_monotonicity(const VerifyOptions& opts) {
  const Stopwatch clock;
  const std::size_t trials = opts.trials ? opts.trials : 1000;
  const std::size_t max_n = opts.max_n ? opts.max_n : 6;
  std::vector<MonotonicityTrial> slots(trials);

  run_trials(trials, resolve_workers(opts), [&](std::size_t k) {
    MonotonicityTrial& slot = slots[k];
    try {
      Rng rng = Rng(opts.seed ^ 0x5eed0005).split(k);
      const std::size_t n = 1 + rng.index(max_n);
      const std::size_t dim = 2 * n;

      SymMatrix a = random_pd_probe(rng, dim);
      if (rng.uniform01() < 0.4) {
        const auto planted = pd_with_spectrum({degenerate_spectrum(rng, n),
                                               rng.next_u64(),
                                               rng.uniform(0.0, 0.8)});
        a = planted.a;
      }

      SymMatrix b = a;
      if (rng.uniform01() < 0.9) {
        const std::size_t rank = 1 + rng.index(dim);
        Mat c(rank, dim);
        const double scale = rng.uniform(0.1, 1.5);
        for (std::size_t i = 0; i < rank; ++i)
          for (std::size_t j = 0; j < dim; ++j) c(i, j) = scale * rng.normal();
        b = SymMatrix(add(a.mat(), matmul_tn(c, c)));
      }

      const auto rep = monotonicity_check(a, b);
      slot.worst = rep.worst;
      slot.failed = !rep.pass;
    } catch (const Error&) {
      slot.error = true;
    }
  });

  Gauge failed("ordering failures", 0.0);
  Gauge errors("exceptions", 0.0);
  for (const MonotonicityTrial& s : slots) {
    errors.feed(s.error ? 1.0 : 0.0);
    if (s.error) continue;
    failed.feed(s.failed ? 1.0 : 0.0);
  }
  return finalize("monotonicity", trials, clock.seconds(),
                  {failed.metric(), errors.metric()});
}

std::vector<SuiteResult> verify_all(const VerifyOptions& opts) {
  return {verify_example1(),      verify_williamson(opts), verify_derivative(opts),
          verify_gradient(opts),  verify_subdiff(opts),    verify_extremal(opts),
          verify_monotonicity(opts)};
}

}  // namespace sympl
