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

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace qjump::quad {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// Computed by Newton iteration on P_n; accurate to a few ulp for n <= 64.
GaussLegendreRule gauss_legendre(std::size_t n);

/// Cached 8-point rule, the default panel rule.
const GaussLegendreRule& gl8();

/// Composite rule on [a, b]: `panels` equal panels with `rule` on each.
/// Appends to x and w.
void composite_nodes(double a, double b, std::size_t panels, const GaussLegendreRule& rule,
                     std::vector<double>& x, std::vector<double>& w);

template <class F>
auto integrate(F&& f, double a, double b, std::size_t panels, const GaussLegendreRule& rule = gl8())
    -> decltype(f(a)) {
  using R = decltype(f(a));
  R sum{};
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h, half = 0.5 * h;
    R s{};
    for (std::size_t m = 0; m < rule.size(); ++m) s += rule.weights[m] * f(mid + half * rule.nodes[m]);
    sum += half * s;
  }
  return sum;
}

/// Panel count for an interval of length `length` under a rate scale
/// `lambda`: max(min_panels, ceil(panels_per_unit * lambda * length)),
/// multiplied by `refine` for convergence checks.
struct Resolution {
  std::size_t min_panels = 32;
  double panels_per_unit = 8.0;
  std::size_t refine = 1;

  std::size_t panels(double lambda, double length) const;
  Resolution doubled() const { return {min_panels, panels_per_unit, refine * 2}; }
};

/// First and second antiderivatives of a complex function from 0,
///   first(x)  = int_0^x f(s) ds
///   second(x) = int_0^x first(u) du = int_0^x (x - s) f(s) ds,
/// tabulated at the breakpoints of a uniform panel lattice on [0, horizon]
/// and completed inside a panel with one Gauss-Legendre panel evaluation.
class RepeatedIntegral {
 public:
  RepeatedIntegral(std::function<std::complex<double>(double)> f, double horizon,
                   std::size_t panels, const GaussLegendreRule& rule = gl8());

  std::complex<double> first(double x) const;
  std::complex<double> second(double x) const;
  double horizon() const { return horizon_; }

 private:
  // Integrals over [x_j, x] of f and of (x - s) f(s).
  void partial(std::size_t j, double x, std::complex<double>& g, std::complex<double>& gg) const;
  std::size_t panel_of(double x) const;

  std::function<std::complex<double>(double)> f_;
  const GaussLegendreRule* rule_;
  double horizon_;
  double width_;
  std::vector<std::complex<double>> g_;   // first(x_j)
  std::vector<std::complex<double>> gg_;  // second(x_j)
};

}  // namespace qjump::quad
