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

// JSON encodings. Doubles are written with 17 significant digits.

#ifndef FLOC_IO_HPP_
#define FLOC_IO_HPP_

#include <string>
#include <string_view>

#include "floc/rates.hpp"
#include "floc/solver.hpp"
#include "floc/theory.hpp"

namespace floc {

/// Keys: gamma_dot, c_g (required), nu, a, b, xbar, c_mu_convention
/// (optional). Unknown keys are rejected.
ParamSet params_from_json(std::string_view text);
ParamSet load_params(const std::string& path);
std::string to_json(const ParamSet& params);

/// {n, xbar, nodes, u, c_q, residual_norm, iterations, method, converged};
/// c_q is null for unconverged states.
std::string to_json(const SteadyState& state);

std::string to_json(const TheoremReport& report);

}  // namespace floc

#endif  // FLOC_IO_HPP_
