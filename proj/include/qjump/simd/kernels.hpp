// Copyright 2026 The qjump Authors
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

#pragma once

// Inner-loop kernels with a scalar reference and vector variants chosen at
// run time.
//
// Element-wise kernels (caxpy, cmatmul_acc, welford_*) perform the same
// operations per element in every variant and are bit-identical across
// variants. Reductions (cmatvec, cnorm2, dot) reassociate sums and agree with
// the scalar reference to rounding only.

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace qjump::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

struct KernelTable {
  Isa isa;

  /// y = A x, A row-major n x n. y must not alias x.
  void (*cmatvec)(const cplx* a, const cplx* x, cplx* y, std::size_t n);
  /// sum |x_i|^2
  double (*cnorm2)(const cplx* x, std::size_t n);
  /// y += alpha x
  void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  /// C += A B, all row-major n x n, C aliasing neither input.
  void (*cmatmul_acc)(const cplx* a, const cplx* b, cplx* c, std::size_t n);
  /// sum a_i b_i
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// One Welford step for count k: d = x - mean; mean += d * inv_k;
  /// m2 += d * (x - mean).
  void (*welford_update)(const double* x, double* mean, double* m2, double inv_k,
                         std::size_t n);
  /// Chan et al. merge of (mean_b, m2_b) with weight wb = nb / (na + nb) and
  /// cross term cross = na * nb / (na + nb) into (mean_a, m2_a).
  void (*welford_merge)(double* mean_a, double* m2_a, const double* mean_b,
                        const double* m2_b, double wb, double cross, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Table for the given ISA, or nullptr when it was not compiled in or the
/// CPU does not support it.
const KernelTable* kernels_for(Isa isa);

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

/// Active table. Chosen once from CPU features, overridable by the
/// QJUMP_ISA environment variable (scalar | avx2 | neon) or select_isa().
const KernelTable& kernels();

/// Switch the active table. Throws std::invalid_argument if unavailable.
/// Not safe to call while other threads are running kernels.
void select_isa(Isa isa);

}  // namespace qjump::simd
