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

#include "qjump/simd/kernels.hpp"

namespace qjump::simd {

#define QJUMP_DECLARE_KERNELS                                                               \
  void cmatvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);                       \
  double cnorm2(const cplx* x, std::size_t n);                                              \
  void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);                            \
  void cmatmul_acc(const cplx* a, const cplx* b, cplx* c, std::size_t n);                   \
  double dot(const double* a, const double* b, std::size_t n);                              \
  void welford_update(const double* x, double* mean, double* m2, double inv_k,              \
                      std::size_t n);                                                       \
  void welford_merge(double* mean_a, double* m2_a, const double* mean_b, const double* m2_b, \
                     double wb, double cross, std::size_t n);

namespace scalar {
QJUMP_DECLARE_KERNELS
}
namespace avx2 {
QJUMP_DECLARE_KERNELS
}
namespace neon {
QJUMP_DECLARE_KERNELS
}

#undef QJUMP_DECLARE_KERNELS

}  // namespace qjump::simd
