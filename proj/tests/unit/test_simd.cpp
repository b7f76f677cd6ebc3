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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "qjump/simd/kernels.hpp"

using namespace qjump::simd;

namespace {

std::vector<cplx> random_cplx(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {d(gen), d(gen)};
  return v;
}

std::vector<double> random_real(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(gen);
  return v;
}

template <class T>
bool bit_equal(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("isa names round-trip") {
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) CHECK(parse_isa(to_string(isa)) == isa);
    CHECK_FALSE(parse_isa("sse9").has_value());
    CHECK(available_isas().front() == Isa::scalar);
    CHECK(kernels_for(Isa::scalar) == &scalar_kernels());
  }

  TEST_CASE("vector variants match the scalar reference") {
    const KernelTable& ref = scalar_kernels();
    std::mt19937_64 gen(11);
    for (Isa isa : available_isas()) {
      const KernelTable* k = kernels_for(isa);
      REQUIRE(k != nullptr);
      CAPTURE(to_string(isa));
      for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 8u, 17u}) {
        CAPTURE(n);
        const auto a = random_cplx(n * n, gen);
        const auto b = random_cplx(n * n, gen);
        const auto x = random_cplx(n, gen);

        // element-wise: bit-identical
        auto y_ref = random_cplx(n, gen);
        auto y = y_ref;
        ref.caxpy({0.3, -1.7}, x.data(), y_ref.data(), n);
        k->caxpy({0.3, -1.7}, x.data(), y.data(), n);
        CHECK(bit_equal(y, y_ref));

        auto c_ref = random_cplx(n * n, gen);
        auto c = c_ref;
        ref.cmatmul_acc(a.data(), b.data(), c_ref.data(), n);
        k->cmatmul_acc(a.data(), b.data(), c.data(), n);
        CHECK(bit_equal(c, c_ref));

        const std::size_t m = 4 * n + 3;
        const auto v = random_real(m, gen);
        auto mean_ref = random_real(m, gen), m2_ref = random_real(m, gen);
        auto mean = mean_ref, m2 = m2_ref;
        ref.welford_update(v.data(), mean_ref.data(), m2_ref.data(), 1.0 / 7.0, m);
        k->welford_update(v.data(), mean.data(), m2.data(), 1.0 / 7.0, m);
        CHECK(bit_equal(mean, mean_ref));
        CHECK(bit_equal(m2, m2_ref));

        const auto mb = random_real(m, gen), m2b = random_real(m, gen);
        ref.welford_merge(mean_ref.data(), m2_ref.data(), mb.data(), m2b.data(), 0.25, 3.0, m);
        k->welford_merge(mean.data(), m2.data(), mb.data(), m2b.data(), 0.25, 3.0, m);
        CHECK(bit_equal(mean, mean_ref));
        CHECK(bit_equal(m2, m2_ref));

        // reductions: rounding-level agreement
        std::vector<cplx> mv_ref(n), mv(n);
        ref.cmatvec(a.data(), x.data(), mv_ref.data(), n);
        k->cmatvec(a.data(), x.data(), mv.data(), n);
        for (std::size_t i = 0; i < n; ++i)
          CHECK(std::abs(mv[i] - mv_ref[i]) <= 1e-13 * (1.0 + std::abs(mv_ref[i])));
        const double nr = ref.cnorm2(x.data(), n);
        CHECK(std::abs(k->cnorm2(x.data(), n) - nr) <= 1e-14 * nr);
        const double dr = ref.dot(v.data(), mean.data(), m);
        CHECK(std::abs(k->dot(v.data(), mean.data(), m) - dr) <= 1e-13 * (1.0 + std::abs(dr)));
      }
    }
  }

  TEST_CASE("scalar kernels compute the documented operations") {
    const KernelTable& k = scalar_kernels();
    const std::vector<cplx> a{{1, 1}, {2, 0}, {0, -1}, {3, 2}};
    const std::vector<cplx> x{{1, 0}, {0, 1}};
    std::vector<cplx> y(2);
    k.cmatvec(a.data(), x.data(), y.data(), 2);
    CHECK(y[0] == cplx(1, 3));
    CHECK(y[1] == cplx(-2, 2));
    CHECK(k.cnorm2(a.data(), 4) == doctest::Approx(1 + 1 + 4 + 1 + 9 + 4));

    std::vector<cplx> c(4);
    k.cmatmul_acc(a.data(), a.data(), c.data(), 2);
    // [[1+i,2],[-i,3+2i]]^2
    CHECK(c[0] == cplx(0, 0));
    CHECK(c[1] == cplx(8, 6));
    CHECK(c[2] == cplx(3, -4));
    CHECK(c[3] == cplx(5, 10));
  }

  TEST_CASE("select_isa switches the active table") {
    const Isa before = kernels().isa;
    select_isa(Isa::scalar);
    CHECK(kernels().isa == Isa::scalar);
    select_isa(before);
    CHECK(kernels().isa == before);
  }
}
