// Copyright 2026 The flocsteady Authors
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

// Brute-force reference operators for tests: composite trapezoid rules with
// a fixed number of panels per integral and central differences. They take
// the density as a function and touch nothing from the spectral code.

#ifndef FLOC_TESTS_ORACLE_HPP_
#define FLOC_TESTS_ORACLE_HPP_

#include <cmath>
#include <functional>
#include <vector>

#include "floc/rates.hpp"

namespace floc::oracle {

using Density = std::function<double(double)>;

inline constexpr int kPanels = 10000;

template <typename F>
double trapezoid(F&& f, double a, double b, int panels = kPanels) {
  if (b <= a) return 0.0;
  const double h = (b - a) / panels;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < panels; ++i) s += f(a + i * h);
  return s * h;
}

/// 1/2 int_0^x ka(x - y, y) u(x - y) u(y) dy minus
/// u(x) int_0^{xbar - x} ka(x, y) u(y) dy. Inside both integrals the
/// arguments sum to at most xbar, where the kernel takes its interior
/// (left-limit) value.
inline double aggregation(const ModelRates& r, const Density& u, double x) {
  const double gain = 0.5 * trapezoid(
      [&](double y) { return r.ka_raw(x - y, y) * u(x - y) * u(y); }, 0.0, x);
  const double loss = u(x) * trapezoid(
      [&](double y) { return r.ka_raw(x, y) * u(y); }, 0.0, r.xbar - x);
  return gain - loss;
}

/// int_x^xbar Gamma(x; y) kf(y) u(y) dy - kf(x) u(x) / 2.
inline double breakage(const ModelRates& r, const Density& u, double x) {
  const double gain = trapezoid(
      [&](double y) { return r.gamma_density(x, y) * r.kf(y) * u(y); }, x,
      r.xbar);
  return gain - 0.5 * r.kf(x) * u(x);
}

/// -(g u)'(x) - mu(x) u(x), second-order differences (one-sided at the ends).
inline double growth_removal(const ModelRates& r, const Density& u, double x) {
  const double h = r.xbar / kPanels;
  const auto gu = [&](double s) { return r.g(s) * u(s); };
  double d;
  if (x - h < 0.0) {
    d = (-3.0 * gu(x) + 4.0 * gu(x + h) - gu(x + 2 * h)) / (2 * h);
  } else if (x + h > r.xbar) {
    d = (3.0 * gu(x) - 4.0 * gu(x - h) + gu(x - 2 * h)) / (2 * h);
  } else {
    d = (gu(x + h) - gu(x - h)) / (2 * h);
  }
  return -d - r.mu(x) * u(x);
}

inline std::vector<double> on_nodes(const std::vector<double>& nodes,
                                    const std::function<double(double)>& f) {
  std::vector<double> out;
  out.reserve(nodes.size());
  for (double x : nodes) out.push_back(f(x));
  return out;
}

}  // namespace floc::oracle

#endif  // FLOC_TESTS_ORACLE_HPP_
