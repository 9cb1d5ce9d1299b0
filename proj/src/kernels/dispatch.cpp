// Copyright 2026 The emojipred Authors.
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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "emojipred/kernels.hpp"

namespace emojipred::kernels {

#if defined(EMOJIPRED_HAVE_AVX2)
const KernelTable* avx2_table_impl();
#endif

namespace {

const KernelTable* initial_table() {
  if (const char* env = std::getenv("EMOJIPRED_SIMD")) {
    if (std::string_view(env) == "scalar") return &scalar_table();
  }
  if (const KernelTable* t = avx2_table(); t && cpu_supports_avx2()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

bool cpu_supports_avx2() {
#if defined(EMOJIPRED_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* avx2_table() {
#if defined(EMOJIPRED_HAVE_AVX2)
  return avx2_table_impl();
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  return *current().load(std::memory_order_acquire);
}

Isa active_isa() { return active().isa; }

bool select(Isa isa) {
  if (isa == Isa::kScalar) {
    current().store(&scalar_table(), std::memory_order_release);
    return true;
  }
  const KernelTable* t = avx2_table();
  if (!t || !cpu_supports_avx2()) return false;
  current().store(t, std::memory_order_release);
  return true;
}

}  // namespace emojipred::kernels
