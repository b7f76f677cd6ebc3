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

#include "qjump/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qjump/errors.hpp"
#include "qjump/simd/kernels.hpp"

namespace qjump {

namespace {
void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
}
}  // namespace

StateVector& StateVector::operator+=(const StateVector& o) {
  require_same_dim(dim(), o.dim(), "StateVector +=");
  simd::kernels().caxpy(1.0, o.data(), data(), dim());
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
  require_same_dim(dim(), o.dim(), "StateVector -=");
  simd::kernels().caxpy(-1.0, o.data(), data(), dim());
  return *this;
}

StateVector& StateVector::operator*=(cplx a) {
  for (auto& x : amp_) x *= a;
  return *this;
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
StateVector operator*(cplx a, StateVector v) { return v *= a; }

PairState::PairState(StateVector phi_, StateVector psi_) : phi(std::move(phi_)), psi(std::move(psi_)) {
  require_same_dim(phi.dim(), psi.dim(), "PairState");
}

double PairState::norm2() const { return qjump::norm2(phi) + qjump::norm2(psi); }

template <class Tag>
SquareMatrix<Tag>::SquareMatrix(std::size_t dim, std::vector<cplx> row_major)
    : dim_(dim), e_(std::move(row_major)) {
  if (e_.size() != dim * dim)
    throw DimensionError("SquareMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                         std::to_string(e_.size()));
}

template <class Tag>
SquareMatrix<Tag> SquareMatrix<Tag>::identity(std::size_t dim) {
  SquareMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

template <class Tag>
SquareMatrix<Tag> SquareMatrix<Tag>::adjoint() const {
  SquareMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

template <class Tag>
cplx SquareMatrix<Tag>::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

template <class Tag>
double SquareMatrix<Tag>::norm() const {
  return std::sqrt(simd::kernels().cnorm2(e_.data(), e_.size()));
}

template <class Tag>
SquareMatrix<Tag>& SquareMatrix<Tag>::operator+=(const SquareMatrix& o) {
  require_same_dim(dim_, o.dim_, "matrix +=");
  simd::kernels().caxpy(1.0, o.data(), data(), e_.size());
  return *this;
}

template <class Tag>
SquareMatrix<Tag>& SquareMatrix<Tag>::operator-=(const SquareMatrix& o) {
  require_same_dim(dim_, o.dim_, "matrix -=");
  simd::kernels().caxpy(-1.0, o.data(), data(), e_.size());
  return *this;
}

template <class Tag>
SquareMatrix<Tag>& SquareMatrix<Tag>::operator*=(cplx a) {
  for (auto& x : e_) x *= a;
  return *this;
}

template class SquareMatrix<detail::OperatorTag>;
template class SquareMatrix<detail::DensityTag>;

namespace {
template <class Out, class A, class B>
Out matmul(const A& a, const B& b) {
  require_same_dim(a.dim(), b.dim(), "matrix product");
  Out c(a.dim());
  simd::kernels().cmatmul_acc(a.data(), b.data(), c.data(), a.dim());
  return c;
}
}  // namespace

Operator operator*(const Operator& a, const Operator& b) { return matmul<Operator>(a, b); }
DensityMatrix operator*(const Operator& a, const DensityMatrix& rho) {
  return matmul<DensityMatrix>(a, rho);
}
DensityMatrix operator*(const DensityMatrix& rho, const Operator& a) {
  return matmul<DensityMatrix>(rho, a);
}

StateVector apply(const Operator& op, const StateVector& v) {
  require_same_dim(op.dim(), v.dim(), "apply");
  StateVector out(v.dim());
  simd::kernels().cmatvec(op.data(), v.data(), out.data(), v.dim());
  return out;
}

void apply_into(const Operator& op, std::span<const cplx> v, std::span<cplx> out) {
  require_same_dim(op.dim(), v.size(), "apply_into");
  require_same_dim(op.dim(), out.size(), "apply_into");
  simd::kernels().cmatvec(op.data(), v.data(), out.data(), v.size());
}

DensityMatrix outer(const StateVector& phi, const StateVector& psi) {
  require_same_dim(phi.dim(), psi.dim(), "outer");
  DensityMatrix m(phi.dim());
  for (std::size_t j = 0; j < phi.dim(); ++j)
    for (std::size_t k = 0; k < psi.dim(); ++k) m(j, k) = phi[j] * std::conj(psi[k]);
  return m;
}

double norm2(const StateVector& v) { return simd::kernels().cnorm2(v.data(), v.dim()); }
double norm(const StateVector& v) { return std::sqrt(norm2(v)); }

cplx inner(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "inner");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

template <class Tag>
double max_abs_diff(const SquareMatrix<Tag>& a, const SquareMatrix<Tag>& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}
template double max_abs_diff(const Operator&, const Operator&);
template double max_abs_diff(const DensityMatrix&, const DensityMatrix&);

double max_abs_diff(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

namespace two_level {
StateVector excited() { return {1.0, 0.0}; }
StateVector ground() { return {0.0, 1.0}; }
Operator sigma_minus() { return Operator(2, {0.0, 0.0, 1.0, 0.0}); }
Operator sigma_plus() { return Operator(2, {0.0, 1.0, 0.0, 0.0}); }
Operator excited_projector() { return Operator(2, {1.0, 0.0, 0.0, 0.0}); }
}  // namespace two_level

}  // namespace qjump
