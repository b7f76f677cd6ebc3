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

// Compiled with -mavx2 only (no -mfma) so element-wise kernels round exactly
// like the scalar reference.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace qjump::simd::avx2 {

namespace {

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

// Two complex products at once: (ar xr - ai xi, ar xi + ai xr).
inline __m256d cmul(__m256d a, __m256d x) {
  const __m256d are = _mm256_movedup_pd(a);
  const __m256d aim = _mm256_permute_pd(a, 0b1111);
  const __m256d xs = _mm256_permute_pd(x, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(are, x), _mm256_mul_pd(aim, xs));
}

inline __m128d cmul128(__m128d a, __m128d x) {
  const __m128d are = _mm_movedup_pd(a);
  const __m128d aim = _mm_permute_pd(a, 0b11);
  const __m128d xs = _mm_permute_pd(x, 0b01);
  return _mm_addsub_pd(_mm_mul_pd(are, x), _mm_mul_pd(aim, xs));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void cmatvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* row = a + i * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2)
      acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(dp(row + k)), _mm256_loadu_pd(dp(x + k))));
    __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    if (k < n) s = _mm_add_pd(s, cmul128(_mm_loadu_pd(dp(row + k)), _mm_loadu_pd(dp(x + k))));
    _mm_storeu_pd(dp(y + i), s);
  }
}

double cnorm2(const cplx* x, std::size_t n) {
  const double* p = dp(x);
  const std::size_t m = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d v = _mm256_loadu_pd(p + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double s = hsum(acc);
  for (; i < m; ++i) s += p[i] * p[i];
  return s;
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(ar, xv), _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(dp(y + i), _mm256_add_pd(_mm256_loadu_pd(dp(y + i)), prod));
  }
  if (i < n) {
    const __m128d xv = _mm_loadu_pd(dp(x + i));
    const __m128d xs = _mm_permute_pd(xv, 0b01);
    const __m128d prod = _mm_addsub_pd(_mm_mul_pd(_mm256_castpd256_pd128(ar), xv),
                                       _mm_mul_pd(_mm256_castpd256_pd128(ai), xs));
    _mm_storeu_pd(dp(y + i), _mm_add_pd(_mm_loadu_pd(dp(y + i)), prod));
  }
}

void cmatmul_acc(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) caxpy(a[i * n + k], b + k * n, c + i * n, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void welford_update(const double* x, double* mean, double* m2, double inv_k, std::size_t n) {
  const __m256d ik = _mm256_set1_pd(inv_k);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    __m256d mv = _mm256_loadu_pd(mean + i);
    const __m256d d = _mm256_sub_pd(xv, mv);
    mv = _mm256_add_pd(mv, _mm256_mul_pd(d, ik));
    _mm256_storeu_pd(mean + i, mv);
    const __m256d m2v = _mm256_loadu_pd(m2 + i);
    _mm256_storeu_pd(m2 + i, _mm256_add_pd(m2v, _mm256_mul_pd(d, _mm256_sub_pd(xv, mv))));
  }
  for (; i < n; ++i) {
    const double d = x[i] - mean[i];
    mean[i] += d * inv_k;
    m2[i] += d * (x[i] - mean[i]);
  }
}

void welford_merge(double* mean_a, double* m2_a, const double* mean_b, const double* m2_b,
                   double wb, double cross, std::size_t n) {
  const __m256d w = _mm256_set1_pd(wb);
  const __m256d c = _mm256_set1_pd(cross);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ma = _mm256_loadu_pd(mean_a + i);
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(mean_b + i), ma);
    _mm256_storeu_pd(mean_a + i, _mm256_add_pd(ma, _mm256_mul_pd(d, w)));
    const __m256d t = _mm256_add_pd(_mm256_loadu_pd(m2_b + i), _mm256_mul_pd(_mm256_mul_pd(d, d), c));
    _mm256_storeu_pd(m2_a + i, _mm256_add_pd(_mm256_loadu_pd(m2_a + i), t));
  }
  for (; i < n; ++i) {
    const double d = mean_b[i] - mean_a[i];
    mean_a[i] += d * wb;
    m2_a[i] += m2_b[i] + d * d * cross;
  }
}

}  // namespace qjump::simd::avx2
