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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace qjump::simd {

namespace {

#define QJUMP_TABLE(ns, tag)                                                                  \
  KernelTable {                                                                               \
    Isa::tag, &ns::cmatvec, &ns::cnorm2, &ns::caxpy, &ns::cmatmul_acc, &ns::dot,              \
        &ns::welford_update, &ns::welford_merge                                               \
  }

const KernelTable kScalar = QJUMP_TABLE(scalar, scalar);
#if defined(QJUMP_HAVE_AVX2)
const KernelTable kAvx2 = QJUMP_TABLE(avx2, avx2);
#endif
#if defined(QJUMP_HAVE_NEON)
const KernelTable kNeon = QJUMP_TABLE(neon, neon);
#endif

#undef QJUMP_TABLE

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(QJUMP_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(QJUMP_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("QJUMP_ISA")) {
    const auto isa = parse_isa(env);
    if (isa && kernels_for(*isa)) return kernels_for(*isa);
  }
  for (Isa isa : {Isa::avx2, Isa::neon})
    if (const KernelTable* t = kernels_for(isa)) return t;
  return &kScalar;
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
    if (name == to_string(isa)) return isa;
  return std::nullopt;
}

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* kernels_for(Isa isa) {
  if (!cpu_supports(isa)) return nullptr;
  switch (isa) {
    case Isa::scalar:
      return &kScalar;
    case Isa::avx2:
#if defined(QJUMP_HAVE_AVX2)
      return &kAvx2;
#else
      return nullptr;
#endif
    case Isa::neon:
#if defined(QJUMP_HAVE_NEON)
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
    if (kernels_for(isa)) out.push_back(isa);
  return out;
}

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

void select_isa(Isa isa) {
  const KernelTable* t = kernels_for(isa);
  if (!t) throw std::invalid_argument("kernel ISA not available: " + std::string(to_string(isa)));
  active().store(t, std::memory_order_release);
}

}  // namespace qjump::simd
