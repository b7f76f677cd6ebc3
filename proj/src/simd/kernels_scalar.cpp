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

#include "kernels_impl.hpp"

namespace qjump::simd::scalar {

// Complex products are spelled out so the vector variants can reproduce the
// exact operation order of the element-wise kernels.
namespace {
inline void cmul_add(const cplx& a, const cplx& x, double& re, double& im) {
  re += a.real() * x.real() - a.imag() * x.imag();
  im += a.real() * x.imag() + a.imag() * x.real();
}
}  // namespace

void cmatvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double re = 0.0, im = 0.0;
    const cplx* row = a + i * n;
    for (std::size_t k = 0; k < n; ++k) cmul_add(row[k], x[k], re, im);
    y[i] = {re, im};
  }
}

double cnorm2(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double re = y[i].real(), im = y[i].imag();
    re += alpha.real() * x[i].real() - alpha.imag() * x[i].imag();
    im += alpha.real() * x[i].imag() + alpha.imag() * x[i].real();
    y[i] = {re, im};
  }
}

void cmatmul_acc(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) caxpy(a[i * n + k], b + k * n, c + i * n, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void welford_update(const double* x, double* mean, double* m2, double inv_k, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - mean[i];
    mean[i] += d * inv_k;
    m2[i] += d * (x[i] - mean[i]);
  }
}

void welford_merge(double* mean_a, double* m2_a, const double* mean_b, const double* m2_b,
                   double wb, double cross, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = mean_b[i] - mean_a[i];
    mean_a[i] += d * wb;
    m2_a[i] += m2_b[i] + d * d * cross;
  }
}

}  // namespace qjump::simd::scalar
