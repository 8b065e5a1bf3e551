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

#ifndef FLOC_THEORY_HPP_
#define FLOC_THEORY_HPP_

#include "floc/rates.hpp"

namespace floc {

/// Constants of the contraction argument for the fixed-point map
///
///   Phi[f](x) = 1 + int_0^x (growth-free source terms of f/g).
///
/// Sup norms are maxima over a uniform sample and are therefore lower
/// bounds of the true norms.
struct TheoremReport {
  bool c1_holds = false;       // 0 <= kf/2 - mu on every sample
  double c1_min_margin = 0.0;  // min over samples of kf/2 - mu
  double inv_g_l1 = 0.0;       // ||1/g||_1 on [0, xbar]
  double ka_sup = 0.0;         // ||k_a||_inf over the truncated domain
  double kf_sup = 0.0;
  double half_kf_minus_mu_sup = 0.0;
  double radius_r = 0.0;       // ||1/g||_1^{-1} ||k_a||_inf^{-1/2}
  double contraction_c = 0.0;
  bool maps_into_holds = false;
  bool theorem_applies = false;
  int n_samples = 0;
  int ka_samples_per_axis = 0;
};

/// n_samples >= 64. The kernel sup uses a tensor grid of
/// min(n_samples, 1024) points per axis.
TheoremReport check_theorem1(const ModelRates& rates, int n_samples = 4096);

/// Steady state of the linear model (k_a = k_f = 0) normalized by
/// g(0) u(0) = 1:  u(x) = exp(-int_0^x mu/g) / g(x).
///
/// Uses the closed form when rates.params describes g and mu, adaptive
/// Gauss-Kronrod quadrature otherwise.
double linear_exact(const ModelRates& rates, double x);

}  // namespace floc

#endif  // FLOC_THEORY_HPP_
