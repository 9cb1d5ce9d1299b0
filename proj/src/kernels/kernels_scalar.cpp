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

#include "emojipred/kernels.hpp"

namespace emojipred::kernels {

namespace {

double dot_ref(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sparse_dot_ref(const std::uint32_t* idx, const double* val,
                      std::size_t nnz, const double* dense) {
  double s = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) s += val[k] * dense[idx[k]];
  return s;
}

void axpy_ref(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_ref(double alpha, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= alpha;
}

double sum_squares_ref(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

void sparse_axpy_ref(double alpha, const std::uint32_t* idx, const double* val,
                     std::size_t nnz, double* y) {
  for (std::size_t k = 0; k < nnz; ++k) y[idx[k]] += alpha * val[k];
}

constexpr KernelTable kScalar = {
    Isa::kScalar,    "scalar",        dot_ref,        sparse_dot_ref,
    axpy_ref,        scale_ref,       sum_squares_ref, sparse_axpy_ref,
};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace emojipred::kernels
