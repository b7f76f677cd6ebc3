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

// AArch64 Advanced SIMD variants. One complex number per 128-bit register.
// Only separate multiply and add are used (no vfmaq) to match the scalar
// rounding of the element-wise kernels.

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace qjump::simd::neon {

namespace {

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

const float64x2_t kFlipLow = {-1.0, 1.0};

// (ar xr - ai xi, ar xi + ai xr)
inline float64x2_t cmul(float64x2_t a, float64x2_t x) {
  const float64x2_t p1 = vmulq_laneq_f64(x, a, 0);
  const float64x2_t xs = vextq_f64(x, x, 1);
  const float64x2_t p2 = vmulq_f64(vmulq_laneq_f64(xs, a, 1), kFlipLow);
  return vaddq_f64(p1, p2);
}

}  // namespace

void cmatvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* row = a + i * n;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < n; ++k)
      acc = vaddq_f64(acc, cmul(vld1q_f64(dp(row + k)), vld1q_f64(dp(x + k))));
    vst1q_f64(dp(y + i), acc);
  }
}

double cnorm2(const cplx* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(dp(x + i));
    acc = vaddq_f64(acc, vmulq_f64(v, v));
  }
  return vaddvq_f64(acc);
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const float64x2_t a = {alpha.real(), alpha.imag()};
  for (std::size_t i = 0; i < n; ++i)
    vst1q_f64(dp(y + i), vaddq_f64(vld1q_f64(dp(y + i)), cmul(a, vld1q_f64(dp(x + i)))));
}

void cmatmul_acc(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) caxpy(a[i * n + k], b + k * n, c + i * n, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void welford_update(const double* x, double* mean, double* m2, double inv_k, std::size_t n) {
  const float64x2_t ik = vdupq_n_f64(inv_k);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xv = vld1q_f64(x + i);
    float64x2_t mv = vld1q_f64(mean + i);
    const float64x2_t d = vsubq_f64(xv, mv);
    mv = vaddq_f64(mv, vmulq_f64(d, ik));
    vst1q_f64(mean + i, mv);
    vst1q_f64(m2 + i, vaddq_f64(vld1q_f64(m2 + i), vmulq_f64(d, vsubq_f64(xv, mv))));
  }
  for (; i < n; ++i) {
    const double d = x[i] - mean[i];
    mean[i] += d * inv_k;
    m2[i] += d * (x[i] - mean[i]);
  }
}

void welford_merge(double* mean_a, double* m2_a, const double* mean_b, const double* m2_b,
                   double wb, double cross, std::size_t n) {
  const float64x2_t w = vdupq_n_f64(wb);
  const float64x2_t c = vdupq_n_f64(cross);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t ma = vld1q_f64(mean_a + i);
    const float64x2_t d = vsubq_f64(vld1q_f64(mean_b + i), ma);
    vst1q_f64(mean_a + i, vaddq_f64(ma, vmulq_f64(d, w)));
    const float64x2_t t = vaddq_f64(vld1q_f64(m2_b + i), vmulq_f64(vmulq_f64(d, d), c));
    vst1q_f64(m2_a + i, vaddq_f64(vld1q_f64(m2_a + i), t));
  }
  for (; i < n; ++i) {
    const double d = mean_b[i] - mean_a[i];
    mean_a[i] += d * wb;
    m2_a[i] += m2_b[i] + d * d * cross;
  }
}

}  // namespace qjump::simd::neon
