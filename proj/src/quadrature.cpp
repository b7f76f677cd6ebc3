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

#include "qjump/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qjump::quad {

GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussLegendreRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi's initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = pk;
    }
    if (n == 1) p0 = 1.0;
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[n - 1 - i] = x;
    r.nodes[i] = -x;
    r.weights[n - 1 - i] = w;
    r.weights[i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

const GaussLegendreRule& gl8() {
  static const GaussLegendreRule rule = gauss_legendre(8);
  return rule;
}

void composite_nodes(double a, double b, std::size_t panels, const GaussLegendreRule& rule,
                     std::vector<double>& x, std::vector<double>& w) {
  const double h = (b - a) / static_cast<double>(panels);
  x.reserve(x.size() + panels * rule.size());
  w.reserve(w.size() + panels * rule.size());
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + h * (static_cast<double>(p) + 0.5);
    for (std::size_t m = 0; m < rule.size(); ++m) {
      x.push_back(mid + 0.5 * h * rule.nodes[m]);
      w.push_back(0.5 * h * rule.weights[m]);
    }
  }
}

std::size_t Resolution::panels(double lambda, double length) const {
  const double want = std::ceil(panels_per_unit * lambda * length);
  const auto base = std::max<std::size_t>(min_panels, want > 0.0 ? static_cast<std::size_t>(want) : 0);
  return base * refine;
}

RepeatedIntegral::RepeatedIntegral(std::function<std::complex<double>(double)> f, double horizon,
                                   std::size_t panels, const GaussLegendreRule& rule)
    : f_(std::move(f)), rule_(&rule), horizon_(horizon) {
  if (!(horizon >= 0.0) || panels == 0)
    throw std::invalid_argument("RepeatedIntegral: need horizon >= 0 and panels > 0");
  width_ = horizon > 0.0 ? horizon / static_cast<double>(panels) : 1.0;
  g_.assign(panels + 1, 0.0);
  gg_.assign(panels + 1, 0.0);
  for (std::size_t j = 0; j < panels; ++j) {
    std::complex<double> g, gg;
    partial(j, width_ * static_cast<double>(j + 1), g, gg);
    g_[j + 1] = g_[j] + g;
    // second(x_{j+1}) = second(x_j) + w * first(x_j) + int (x_{j+1} - s) f(s) ds
    gg_[j + 1] = gg_[j] + width_ * g_[j] + gg;
  }
}

void RepeatedIntegral::partial(std::size_t j, double x, std::complex<double>& g,
                               std::complex<double>& gg) const {
  const double lo = width_ * static_cast<double>(j);
  const double half = 0.5 * (x - lo), mid = lo + half;
  g = gg = 0.0;
  for (std::size_t m = 0; m < rule_->size(); ++m) {
    const double s = mid + half * rule_->nodes[m];
    const std::complex<double> v = rule_->weights[m] * f_(s);
    g += v;
    gg += (x - s) * v;
  }
  g *= half;
  gg *= half;
}

std::size_t RepeatedIntegral::panel_of(double x) const {
  if (x < 0.0 || x > horizon_ * (1.0 + 1e-12))
    throw std::out_of_range("RepeatedIntegral: argument outside [0, horizon]");
  const auto j = static_cast<std::size_t>(x / width_);
  return std::min(j, g_.size() - 1);
}

std::complex<double> RepeatedIntegral::first(double x) const {
  const std::size_t j = panel_of(x);
  std::complex<double> g, gg;
  partial(j, x, g, gg);
  return g_[j] + g;
}

std::complex<double> RepeatedIntegral::second(double x) const {
  const std::size_t j = panel_of(x);
  std::complex<double> g, gg;
  partial(j, x, g, gg);
  const double lo = width_ * static_cast<double>(j);
  return gg_[j] + (x - lo) * g_[j] + gg;
}

}  // namespace qjump::quad
