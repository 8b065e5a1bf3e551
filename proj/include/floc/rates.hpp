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

// Rate functions of the flocculation model: growth g, removal mu, aggregation
// kernel k_a, fragmentation kernel k_f, post-fragmentation density Gamma and
// the renewal shape q. The shear-flow family (orthokinetic aggregation,
// power-law fragmentation, Beta(2,2) daughters) is produced by build_rates.

#ifndef FLOC_RATES_HPP_
#define FLOC_RATES_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace floc {

/// How the removal coefficient C_mu depends on the shear rate.
enum class RemovalConvention {
  exp_decay,   // C_mu = exp(-gamma_dot)
  reciprocal,  // C_mu = 1 / gamma_dot
};

std::string_view to_string(RemovalConvention c);
RemovalConvention removal_convention_from_string(std::string_view s);

/// Physical parameters of the shear-flow rate family.
///
/// Sizes are dimensionless volumes; xbar is the largest admissible floc.
/// nu is carried as metadata only: the kernels are written in terms of the
/// shear rate gamma_dot = (eps/nu)^{1/2} directly.
struct ParamSet {
  double gamma_dot = 1.0;
  double nu = 1e-6;
  double a = 7e-4;
  double b = 1.6;
  double c_g = 1.0;
  RemovalConvention c_mu_convention = RemovalConvention::exp_decay;
  /// Explicit removal coefficient; when unset it follows c_mu_convention.
  std::optional<double> c_mu_override;
  double xbar = 1.0;

  /// Throws Error(invalid_argument) when an invariant is violated.
  void validate() const;

  double c_mu() const;
  double c_f() const;
};

double removal_coefficient(double gamma_dot, RemovalConvention convention);

/// Bundle of the model's rate functions on [0, xbar].
///
/// The aggregation kernel and the daughter density are stored "raw"; the
/// accessors ka() and gamma_density() apply the truncation k_a = 0 for
/// x + y >= xbar and the support indicator of Gamma on [0, y]. All callables
/// must be pure.
struct ModelRates {
  using Rate = std::function<double(double)>;
  using Kernel = std::function<double(double, double)>;

  Rate growth;
  Rate removal;
  Kernel aggregation;
  Rate fragmentation;
  Kernel daughter;
  Rate renewal_shape;
  double xbar = 1.0;

  /// Set when growth and removal are the shear-family forms of these
  /// parameters, which enables the closed-form linear steady state. Reset
  /// it whenever growth or removal is replaced.
  std::optional<ParamSet> params;

  double g(double x) const { return growth(x); }
  double mu(double x) const { return removal(x); }
  double kf(double x) const { return fragmentation(x); }
  double q_shape(double x) const { return renewal_shape(x); }

  /// Truncated aggregation kernel.
  double ka(double x, double y) const {
    return x + y >= xbar ? 0.0 : aggregation(x, y);
  }
  /// Kernel without the truncation indicator.
  double ka_raw(double x, double y) const { return aggregation(x, y); }

  /// Gamma(x; y), zero outside 0 <= x <= y and for y <= 0.
  double gamma_density(double x, double y) const {
    if (!(y > 0.0) || x < 0.0 || x > y) return 0.0;
    return daughter(x, y);
  }

  /// Copy with k_a = k_f = 0 (the linear size-structured model).
  ModelRates linear_part() const;
};

ModelRates build_rates(const ParamSet& params);

struct AssumptionCheck {
  std::string id;
  std::string description;
  bool passed = false;
  /// Worst observed value of the checked quantity (sign convention in
  /// description).
  double worst = 0.0;
};

struct RatesReport {
  std::vector<AssumptionCheck> checks;
  bool passed() const;
  std::string to_text() const;
};

/// Samples (A1)-(A6) and the normalization of Gamma. Violations are
/// reported, never thrown.
RatesReport validate_rates(const ModelRates& rates, int n_samples = 257,
                           double tol = 1e-12);

}  // namespace floc

#endif  // FLOC_RATES_HPP_
