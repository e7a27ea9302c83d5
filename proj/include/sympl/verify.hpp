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

#ifndef SYMPL_VERIFY_HPP
#define SYMPL_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

// Property suites exercising the whole library against its independent
// oracles. Each suite runs a batch of randomized trials (deterministic per
// seed, and independent of the worker count because every trial owns a
// split of the seed) and reports named worst-case metrics with their
// gates. The SYMPL_THREADS environment variable caps the worker fan-out.

namespace sympl {

struct VerifyMetric {
  std::string name;
  double worst = 0.0;  // worst observed value, compared against gate
  double gate = 0.0;   // the value that worst must not exceed
  std::size_t failures = 0;
  bool pass() const { return failures == 0; }
};

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::vector<VerifyMetric> metrics;
  double seconds = 0.0;
  bool pass = true;

  const VerifyMetric* metric(const std::string& metric_name) const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 0;   // 0 selects the suite default
  std::size_t max_n = 0;    // 0 selects the suite default half-dimension cap
  std::size_t threads = 0;  // 0 selects hardware concurrency, then the
                            // SYMPL_THREADS cap is applied
};

// Reproduces the curvature counterexample matrices entrywise to 1e-12.
SuiteResult verify_example1();

// Decomposes randomized PD matrices with planted spectra (default 500
// trials, n up to 8, condition number below 1e4) and gates the symplectic,
// congruence, spectrum-recovery, and norm-bound residuals.
SuiteResult verify_williamson(const VerifyOptions& opts = {});

// Compares closed-form directional derivatives against one-sided finite
// differences: `trials` separated-spectrum cases at 5e-6 plus trials/2
// forced-degenerate cases at 1e-4 (defaults 200 and 100), the exact
// piecewise-linear identity matrix case at 1e-10, and the pairing
// 2 d' = sigma'_{m-1} - sigma'_m at 1e-9 everywhere.
SuiteResult verify_derivative(const VerifyOptions& opts = {});

// Checks the gradient in the differentiable case: <grad, B> equals the
// directional derivative and the derivative is antisymmetric in B, both to
// 1e-8, over `trials` random directions (default 100).
SuiteResult verify_gradient(const VerifyOptions& opts = {});

// Subdifferential suite: Fenchel inequality slack against random PD
// probes, sampled-plus-optimal support values for both families within
// 1e-8 of the closed forms, and cluster independence of the Clarke/MP
// value to 1e-12. Default 100 trials.
SuiteResult verify_subdiff(const VerifyOptions& opts = {});

// Extremal characterisation of sigma_m: random symplectic frames never
// beat it (slack >= -1e-9) and the Williamson frame attains it to 1e-8.
// Default 100 trials.
SuiteResult verify_extremal(const VerifyOptions& opts = {});

// Monotone pairs A <= B keep d_j(A) <= d_j(B) + 1e-9, default 1000 pairs.
SuiteResult verify_monotonicity(const VerifyOptions& opts = {});

// All suites above, in reporting order.
std::vector<SuiteResult> verify_all(const VerifyOptions& opts = {});

}  // namespace sympl

#endif  // SYMPL_VERIFY_HPP
