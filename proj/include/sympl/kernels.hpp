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

#ifndef SYMPL_KERNELS_HPP
#define SYMPL_KERNELS_HPP

#include <cstddef>

// Vector kernels used by the eigensolvers and the matrix products built on
// top of them. Each operation has a scalar reference implementation and may
// have SIMD variants; the active variant is chosen once per process, either
// automatically from CPU features or forced through the SYMPL_KERNELS
// environment variable ("scalar", "avx2", "neon").
//
// The SIMD variants of axpy / rot / scale perform exactly the same
// multiply-then-add per element as the scalar code (no fused multiply-add),
// so their results are bit-identical to the reference. dot and asum
// accumulate in lanes and differ from the reference only by summation order.

namespace sympl::kernels {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*asum)(const double* x, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*scale)(double a, double* x, std::size_t n);
  // Plane rotation of two rows: (x, y) <- (c*x - s*y, s*x + c*y).
  void (*rot)(double* x, double* y, double c, double s, std::size_t n);
};

// Table for a specific implementation. Asking for an ISA that was not
// compiled in (or that the CPU lacks) returns the scalar table.
const KernelTable& table(Isa isa);

// The table selected for this process.
const KernelTable& active_table();
Isa active_isa();
const char* isa_name(Isa isa);

// True if the given ISA is compiled in and usable on this CPU.
bool isa_available(Isa isa);

inline double dot(const double* x, const double* y, std::size_t n) {
  return active_table().dot(x, y, n);
}
inline double asum(const double* x, std::size_t n) {
  return active_table().asum(x, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active_table().axpy(a, x, y, n);
}
inline void scale(double a, double* x, std::size_t n) {
  active_table().scale(a, x, n);
}
inline void rot(double* x, double* y, double c, double s, std::size_t n) {
  active_table().rot(x, y, c, s, n);
}

}  // namespace sympl::kernels

#endif  // SYMPL_KERNELS_HPP
