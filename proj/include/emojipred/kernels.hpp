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

#ifndef EMOJIPRED_KERNELS_HPP_
#define EMOJIPRED_KERNELS_HPP_

// Dense and sparse-dense arithmetic used by the softmax trainer. Each kernel
// has a scalar reference implementation and, on x86-64 builds, an AVX2
// variant. The variant is chosen once at runtime from CPUID; setting
// EMOJIPRED_SIMD=scalar in the environment (or calling select()) forces the
// reference path.
//
// Elementwise kernels (axpy, scale, sparse_axpy) give bit-identical results
// on every path. Reductions (dot, sparse_dot, sum_squares) reassociate on the
// AVX2 path and agree with the reference to rounding.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace emojipred::kernels {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_k values[k] * dense[indices[k]]
  double (*sparse_dot)(const std::uint32_t* indices, const double* values,
                       std::size_t nnz, const double* dense);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y *= alpha
  void (*scale)(double alpha, double* y, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  // y[indices[k]] += alpha * values[k]
  void (*sparse_axpy)(double alpha, const std::uint32_t* indices,
                      const double* values, std::size_t nnz, double* y);
};

const KernelTable& scalar_table();
// nullptr when the build has no AVX2 variant.
const KernelTable* avx2_table();
bool cpu_supports_avx2();

const KernelTable& active();
Isa active_isa();
// Returns false (and leaves the selection unchanged) if `isa` is unavailable.
bool select(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double sparse_dot(std::span<const std::uint32_t> indices,
                         std::span<const double> values,
                         std::span<const double> dense) {
  return active().sparse_dot(indices.data(), values.data(), indices.size(),
                             dense.data());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), y.size());
}

inline void scale(double alpha, std::span<double> y) {
  active().scale(alpha, y.data(), y.size());
}

inline double sum_squares(std::span<const double> x) {
  return active().sum_squares(x.data(), x.size());
}

inline void sparse_axpy(double alpha, std::span<const std::uint32_t> indices,
                        std::span<const double> values, std::span<double> y) {
  active().sparse_axpy(alpha, indices.data(), values.data(), indices.size(),
                       y.data());
}

}  // namespace emojipred::kernels

#endif  // EMOJIPRED_KERNELS_HPP_
