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

#include "floc/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "floc/error.hpp"

namespace floc {

namespace {

using boost::math::quadrature::gauss_kronrod;

std::vector<double> uniform(double xbar, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = xbar * i / (n - 1);
  x.back() = xbar;
  return x;
}

}  // namespace

TheoremReport check_theorem1(const ModelRates& rates, int n_samples) {
  require(n_samples >= 64, "check_theorem1 needs at least 64 samples");
  TheoremReport rep;
  rep.n_samples = n_samples;

  const auto xs = uniform(rates.xbar, n_samples);
  rep.c1_min_margin = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    const double kf = rates.kf(x);
    const double margin = 0.5 * kf - rates.mu(x);
    rep.c1_min_margin = std::min(rep.c1_min_margin, margin);
    rep.kf_sup = std::max(rep.kf_sup, std::abs(kf));
    rep.half_kf_minus_mu_sup = std::max(rep.half_kf_minus_mu_sup, std::abs(margin));
  }
  rep.c1_holds = rep.c1_min_margin >= 0.0;

  rep.inv_g_l1 = gauss_kronrod<double, 61>::integrate(
      [&](double x) { return 1.0 / std::abs(rates.g(x)); }, 0.0, rates.xbar, 15,
      1e-14);

  rep.ka_samples_per_axis = std::min(n_samples, 1024);
  const auto ys = uniform(rates.xbar, rep.ka_samples_per_axis);
  for (double x : ys) {
    for (double y : ys) rep.ka_sup = std::max(rep.ka_sup, std::abs(rates.ka(x, y)));
  }

  const double sqrt_ka = std::sqrt(rep.ka_sup);
  const double linear_part = rep.kf_sup + rep.half_kf_minus_mu_sup;
  rep.radius_r = rep.ka_sup > 0.0
                     ? 1.0 / (rep.inv_g_l1 * sqrt_ka)
                     : std::numeric_limits<double>::infinity();
  rep.contraction_c = rep.inv_g_l1 * (linear_part + 1.5 * sqrt_ka);
  if (std::isfinite(rep.radius_r)) {
    rep.maps_into_holds =
        1.0 + rep.radius_r * rep.inv_g_l1 * (linear_part + sqrt_ka) <= rep.radius_r;
  } else {
    // Without aggregation any radius is admissible; the bound holds for
    // large r iff the linear part alone is below one.
    rep.maps_into_holds = rep.inv_g_l1 * linear_part < 1.0;
  }
  rep.theorem_applies = rep.c1_holds && rep.maps_into_holds &&
                        rep.contraction_c < 1.0 && rep.radius_r >= 1.0;
  return rep;
}

double linear_exact(const ModelRates& rates, double x) {
  if (!(x >= 0.0 && x <= rates.xbar)) {
    fail(ErrorCode::domain_error, "linear_exact: x outside [0, xbar]");
  }
  if (rates.params) {
    const double cg = rates.params->c_g;
    const double cmu = rates.params->c_mu();
    // int_0^x s/(1+s) ds = x - log(1+x)
    const double expo = -(cmu / cg) * (x - std::log1p(x));
    return std::exp(expo) / (cg * (1.0 + x));
  }
  double integral = 0.0;
  if (x > 0.0) {
    integral = gauss_kronrod<double, 31>::integrate(
        [&](double s) { return rates.mu(s) / rates.g(s); }, 0.0, x, 20, 1e-14);
  }
  return std::exp(-integral) / rates.g(x);
}

}  // namespace floc
