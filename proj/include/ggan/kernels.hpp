/* Copyright 2026 The ggan Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

// Data-parallel inner loops behind the numeric layer. Each instruction set gets
// its own translation unit; the table for the running CPU is picked once at
// startup and can be overridden with GGAN_ISA=scalar|avx2 or select_isa().
//
// All pointers are row-major and may not alias unless stated otherwise.
namespace ggan::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out = x * y (elementwise); out may alias x or y
  void (*mul)(const double* x, const double* y, double* out, std::size_t n);
  // out += x * y (elementwise)
  void (*mul_acc)(const double* x, const double* y, double* out, std::size_t n);
  // out = x + y; out may alias x or y
  void (*add)(const double* x, const double* y, double* out, std::size_t n);
  // out = a * x; out may alias x
  void (*scale)(double a, const double* x, double* out, std::size_t n);

  // c[m x n] += a[m x k] * b[k x n]
  void (*gemm_nn)(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                  std::size_t n);
  // c[k x n] += a[m x k]^T * b[m x n]
  void (*gemm_tn)(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                  std::size_t n);
  // c[m x k] += a[m x n] * b[k x n]^T
  void (*gemm_nt)(const double* a, const double* b, double* c, std::size_t m, std::size_t n,
                  std::size_t k);
};

const KernelTable& scalar_table() noexcept;
#if defined(GGAN_HAVE_AVX2) || defined(GGAN_KERNELS_INTERNAL)
const KernelTable& avx2_table() noexcept;
#endif

// True when the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa) noexcept;
std::vector<Isa> available_isas();

// Table for a specific instruction set; throws std::invalid_argument if unavailable.
const KernelTable& table_for(Isa isa);

// Table used by the numeric layer.
const KernelTable& active() noexcept;
void select_isa(Isa isa);

std::string_view isa_name(Isa isa) noexcept;
Isa parse_isa(std::string_view name);

}  // namespace ggan::kernels
