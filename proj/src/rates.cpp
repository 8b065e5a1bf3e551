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

#include "floc/rates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "floc/error.hpp"

namespace floc {

std::string_view to_string(RemovalConvention c) {
  switch (c) {
    case RemovalConvention::exp_decay:
      return "exp_decay";
    case RemovalConvention::reciprocal:
      return "reciprocal";
  }
  return "exp_decay";
}

RemovalConvention removal_convention_from_string(std::string_view s) {
  if (s == "exp_decay") return RemovalConvention::exp_decay;
  if (s == "reciprocal") return RemovalConvention::reciprocal;
  fail(ErrorCode::invalid_argument,
       "unknown removal convention '" + std::string(s) +
           "' (expected exp_decay or reciprocal)");
}

double removal_coefficient(double gamma_dot, RemovalConvention convention) {
  require(gamma_dot >= 0.0 && std::isfinite(gamma_dot),
          "shear rate must be finite and >= 0");
  if (convention == RemovalConvention::reciprocal) {
    require(gamma_dot > 0.0,
            "reciprocal removal convention needs a positive shear rate");
    return 1.0 / gamma_dot;
  }
  return std::exp(-gamma_dot);
}

void ParamSet::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  require(finite(gamma_dot) && gamma_dot >= 0.0, "gamma_dot must be >= 0");
  require(finite(nu) && nu > 0.0, "nu must be > 0");
  require(finite(a) && finite(b), "a and b must be finite");
  require(finite(c_g) && c_g > 0.0, "c_g must be > 0");
  require(finite(xbar) && xbar > 0.0, "xbar must be > 0");
  const double cmu = c_mu();
  require(finite(cmu) && cmu >= 0.0, "c_mu must be >= 0");
}

double ParamSet::c_mu() const {
  if (c_mu_override) return *c_mu_override;
  return removal_coefficient(gamma_dot, c_mu_convention);
}

double ParamSet::c_f() const { return a * std::pow(gamma_dot, b); }

ModelRates ModelRates::linear_part() const {
  ModelRates out = *this;
  out.aggregation = [](double, double) { return 0.0; };
  out.fragmentation = [](double) { return 0.0; };
  return out;
}

ModelRates build_rates(const ParamSet& params) {
  params.validate();
  const double cg = params.c_g;
  const double cmu = params.c_mu();
  const double cf = params.c_f();
  const double ka_scale = 1.3 * params.gamma_dot;

  ModelRates rates;
  rates.xbar = params.xbar;
  rates.params = params;
  rates.growth = [cg](double x) { return cg * (x + 1.0); };
  rates.removal = [cmu](double x) { return cmu * x; };
  rates.aggregation = [ka_scale](double x, double y) {
    const double s = std::cbrt(x) + std::cbrt(y);
    return ka_scale * s * s * s;
  };
  rates.fragmentation = [cf](double x) { return cf * std::cbrt(x); };
  rates.daughter = [](double x, double y) {
    return 6.0 * x * (y - x) / (y * y * y);
  };
  rates.renewal_shape = [](double x) {
    const double c = std::cbrt(x);
    return c * c;
  };
  return rates;
}

namespace {

std::vector<double> sample_points(double xbar, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = xbar * i / (n - 1);
  x.back() = xbar;
  return x;
}

}  // namespace

bool RatesReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AssumptionCheck& c) { return c.passed; });
}

std::string RatesReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-4s worst=% .6e  %s\n",
                  c.id.c_str(), c.passed ? "ok" : "FAIL", c.worst,
                  c.description.c_str());
    out << line;
  }
  out << (passed() ? "all assumptions hold\n" : "assumption violations found\n");
  return out.str();
}

RatesReport validate_rates(const ModelRates& rates, int n_samples,
                           double tol) {
  require(n_samples >= 2, "validate_rates needs at least 2 samples");
  const auto xs = sample_points(rates.xbar, n_samples);
  constexpr double inf = std::numeric_limits<double>::infinity();
  RatesReport report;
  const auto add = [&](std::string id, std::string desc, bool ok,
                       double worst) {
    report.checks.push_back({std::move(id), std::move(desc), ok, worst});
  };

  double g_min = inf;
  double mu_min = inf;
  double q_min = inf;
  double kf_min = inf;
  for (double x : xs) {
    g_min = std::min(g_min, rates.g(x));
    mu_min = std::min(mu_min, rates.mu(x));
    q_min = std::min(q_min, rates.q_shape(x));
    kf_min = std::min(kf_min, rates.kf(x));
  }
  add("A1", "growth strictly positive (worst = min g)",
      std::isfinite(g_min) && g_min > 0.0, g_min);

  double asym = 0.0;
  double trunc = 0.0;
  bool finite = true;
  for (double x : xs) {
    for (double y : xs) {
      const double v = rates.ka(x, y);
      finite = finite && std::isfinite(v);
      asym = std::max(asym, std::abs(v - rates.ka(y, x)));
      if (x + y >= rates.xbar) trunc = std::max(trunc, std::abs(v));
    }
  }
  add("A2", "aggregation kernel bounded and symmetric (worst = max asymmetry)",
      finite && asym <= tol, asym);
  add("A2", "aggregation kernel vanishes for x + y >= xbar (worst = max |ka|)",
      trunc == 0.0, trunc);
  add("A3", "removal non-negative (worst = min mu)",
      std::isfinite(mu_min) && mu_min >= -tol, mu_min);
  add("A4", "renewal shape non-negative (worst = min q)",
      std::isfinite(q_min) && q_min >= -tol, q_min);
  const double kf0 = rates.kf(0.0);
  add("A5", "fragmentation vanishes at zero (worst = |kf(0)|)",
      std::abs(kf0) <= tol, std::abs(kf0));
  add("A5", "fragmentation non-negative (worst = min kf)",
      std::isfinite(kf_min) && kf_min >= -tol, kf_min);

  double gamma_min = inf;
  double norm_err = 0.0;
  for (double y : xs) {
    if (y <= 0.0) continue;
    for (double x : xs) {
      if (x > 0.0 && x <= y) gamma_min = std::min(gamma_min, rates.gamma_density(x, y));
    }
    gamma_min = std::min(gamma_min, rates.gamma_density(y, y));
    const double mass =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double x) { return rates.gamma_density(x, y); }, 0.0, y, 15,
            1e-13);
    norm_err = std::max(norm_err, std::abs(mass - 1.0));
  }
  add("A6", "daughter density non-negative on (0, y] (worst = min Gamma)",
      std::isfinite(gamma_min) && gamma_min >= -tol, gamma_min);
  add("N", "daughter density integrates to one (worst = max |mass - 1|)",
      norm_err <= tol, norm_err);
  return report;
}

}  // namespace floc
