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

// Dense complex linear algebra for small Hilbert spaces.
//
// Two-level convention used throughout: index 0 is the excited state |1>,
// index 1 the ground state |0>. sigma_minus() maps index 0 to index 1.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qjump {

using cplx = std::complex<double>;

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim) : amp_(dim) {}
  StateVector(std::initializer_list<cplx> amps) : amp_(amps) {}
  explicit StateVector(std::vector<cplx> amps) : amp_(std::move(amps)) {}

  std::size_t dim() const { return amp_.size(); }
  cplx& operator[](std::size_t i) { return amp_[i]; }
  const cplx& operator[](std::size_t i) const { return amp_[i]; }
  cplx* data() { return amp_.data(); }
  const cplx* data() const { return amp_.data(); }
  std::span<cplx> span() { return amp_; }
  std::span<const cplx> span() const { return amp_; }

  StateVector& operator+=(const StateVector& o);
  StateVector& operator-=(const StateVector& o);
  StateVector& operator*=(cplx a);

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<cplx> amp_;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(cplx a, StateVector v);

/// Element of H (+) H. The pair is not normalized in general.
struct PairState {
  StateVector phi;
  StateVector psi;

  PairState() = default;
  PairState(StateVector phi_, StateVector psi_);

  std::size_t dim() const { return phi.dim(); }
  double norm2() const;
  friend bool operator==(const PairState&, const PairState&) = default;
};

namespace detail {
struct OperatorTag {};
struct DensityTag {};
}  // namespace detail

/// Row-major dense square matrix. The tag keeps operators and density
/// matrices from being mixed up by accident; the two are bridged only by the
/// products that the master equation needs.
template <class Tag>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim) : dim_(dim), e_(dim * dim) {}
  SquareMatrix(std::size_t dim, std::vector<cplx> row_major);

  static SquareMatrix identity(std::size_t dim);
  static SquareMatrix zero(std::size_t dim) { return SquareMatrix(dim); }

  std::size_t dim() const { return dim_; }
  cplx& operator()(std::size_t r, std::size_t c) { return e_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return e_[r * dim_ + c]; }
  cplx* data() { return e_.data(); }
  const cplx* data() const { return e_.data(); }
  std::span<const cplx> entries() const { return e_; }

  SquareMatrix adjoint() const;
  cplx trace() const;
  /// Frobenius norm.
  double norm() const;

  SquareMatrix& operator+=(const SquareMatrix& o);
  SquareMatrix& operator-=(const SquareMatrix& o);
  SquareMatrix& operator*=(cplx a);

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> e_;
};

using Operator = SquareMatrix<detail::OperatorTag>;
using DensityMatrix = SquareMatrix<detail::DensityTag>;

extern template class SquareMatrix<detail::OperatorTag>;
extern template class SquareMatrix<detail::DensityTag>;

template <class Tag>
SquareMatrix<Tag> operator+(SquareMatrix<Tag> a, const SquareMatrix<Tag>& b) {
  a += b;
  return a;
}
template <class Tag>
SquareMatrix<Tag> operator-(SquareMatrix<Tag> a, const SquareMatrix<Tag>& b) {
  a -= b;
  return a;
}
template <class Tag>
SquareMatrix<Tag> operator*(cplx s, SquareMatrix<Tag> a) {
  a *= s;
  return a;
}

Operator operator*(const Operator& a, const Operator& b);
DensityMatrix operator*(const Operator& a, const DensityMatrix& rho);
DensityMatrix operator*(const DensityMatrix& rho, const Operator& a);

/// Matrix-vector product; throws DimensionError on mismatch.
StateVector apply(const Operator& op, const StateVector& v);
/// Writes op*v into out (out.size() == op.dim(), no aliasing with v).
void apply_into(const Operator& op, std::span<const cplx> v, std::span<cplx> out);

/// |phi><psi|, i.e. entries (j,k) = phi[j] * conj(psi[k]).
DensityMatrix outer(const StateVector& phi, const StateVector& psi);

double norm(const StateVector& v);
double norm2(const StateVector& v);
/// <a|b>, antilinear in a.
cplx inner(const StateVector& a, const StateVector& b);

/// Largest entry modulus of a - b.
template <class Tag>
double max_abs_diff(const SquareMatrix<Tag>& a, const SquareMatrix<Tag>& b);
double max_abs_diff(const StateVector& a, const StateVector& b);

namespace two_level {
StateVector excited();
StateVector ground();
Operator sigma_minus();
Operator sigma_plus();
/// sigma_plus * sigma_minus = diag(1, 0).
Operator excited_projector();
}  // namespace two_level

}  // namespace qjump
