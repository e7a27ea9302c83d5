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

#include "sympl/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace sympl::kernels {

namespace detail {
const KernelTable& scalar_table();
#if defined(SYMPL_WITH_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(SYMPL_WITH_NEON)
const KernelTable& neon_table();
#endif
}  // namespace detail

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SYMPL_WITH_AVX2)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Isa::neon:
#if defined(SYMPL_WITH_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      break;
    case Isa::avx2:
#if defined(SYMPL_WITH_AVX2)
      if (isa_available(Isa::avx2)) return detail::avx2_table();
#endif
      break;
    case Isa::neon:
#if defined(SYMPL_WITH_NEON)
      return detail::neon_table();
#endif
      break;
  }
  return detail::scalar_table();
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "scalar";
}

namespace {

Isa pick_isa() {
  if (const char* env = std::getenv("SYMPL_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0)
      return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    if (std::strcmp(env, "neon") == 0)
      return isa_available(Isa::neon) ? Isa::neon : Isa::scalar;
    return Isa::scalar;
  }
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = pick_isa();
  return isa;
}

const KernelTable& active_table() {
  static const KernelTable& t = table(active_isa());
  return t;
}

}  // namespace sympl::kernels
