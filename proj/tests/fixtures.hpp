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

#ifndef FLOC_TESTS_FIXTURES_HPP_
#define FLOC_TESTS_FIXTURES_HPP_

#include <cmath>

#include "floc/rates.hpp"

namespace floc::fixtures {

/// Hand-built rates: constant growth g0, constant removal mu0, kf(x) = kf1 x,
/// constant truncated aggregation ka0, Beta(2,2) daughters, q = x^(2/3).
inline ModelRates simple_rates(double g0, double mu0, double kf1, double ka0,
                               double xbar = 1.0) {
  ModelRates r;
  r.xbar = xbar;
  r.growth = [g0](double) { return g0; };
  r.removal = [mu0](double) { return mu0; };
  r.fragmentation = [kf1](double x) { return kf1 * x; };
  r.aggregation = [ka0](double, double) { return ka0; };
  r.daughter = [](double x, double y) { return 6.0 * x * (y - x) / (y * y * y); };
  r.renewal_shape = [](double x) { return std::pow(x, 2.0 / 3.0); };
  return r;
}

}  // namespace floc::fixtures

#endif  // FLOC_TESTS_FIXTURES_HPP_
