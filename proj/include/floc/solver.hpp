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

#ifndef FLOC_SOLVER_HPP_
#define FLOC_SOLVER_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "floc/assembly.hpp"

namespace floc {

enum class Method { newton, picard };
enum class JacobianKind { analytic, finite_difference };

enum class SolveStatus {
  converged,
  max_iterations,
  singular_jacobian,
  line_search_failed,
  negative_density,
  non_finite,
};

std::string_view to_string(Method m);
std::string_view to_string(SolveStatus s);

struct SolverConfig {
  double tol = 1e-12;
  /// Defaults to 100 for Newton and 10000 for Picard.
  std::optional<int> max_iter;
  /// Initial Newton step factor in (0, 1]; halved until the residual drops.
  double damping = 1.0;
  JacobianKind jacobian = JacobianKind::analytic;
  Boundary boundary = Boundary::ivp();
  /// On Newton failure (ivp only): run picard_warm_start Picard sweeps from
  /// f = 1 and restart Newton from there.
  bool picard_fallback = true;
  int picard_warm_start = 50;

  void validate() const;
};

struct SteadyState {
  Grid grid;
  Eigen::VectorXd u;
  double c_q = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
  Method method = Method::newton;
  bool converged = false;
  SolveStatus status = SolveStatus::max_iterations;
  Boundary boundary;
  /// Residual sup norms (Newton) or step sizes (Picard) per iteration.
  std::vector<double> history;
};

/// Nodal values of the linear steady state (see linear_exact).
Eigen::VectorXd linear_initial_guess(const DiscreteModel& model);

/// Damped Newton on residual(); init defaults to linear_initial_guess.
SteadyState solve_newton(const DiscreteModel& model,
                         const SolverConfig& config = {},
                         const std::optional<Eigen::VectorXd>& init = {});

/// Fixed-point iteration f <- Phi[f] from f = 1 with u = f / g, where
/// Phi[f] = 1 + int_0^x (source terms of f/g). The integral is the exact
/// antiderivative of the degree-(n-1) interpolant of the source on nodes
/// 1..n, so fixed points coincide with the collocation solution of
/// solve_newton. Always uses the ivp normalization f(0) = 1.
SteadyState solve_picard(const DiscreteModel& model,
                         const SolverConfig& config = {});

/// Integration operator K with (K s)(x_k) = int_0^{x_k} p, p the degree-(n-1)
/// interpolant of s on nodes 1..n; column 0 is zero. Satisfies
/// D K s = s on rows 1..n and (K s)_0 = 0.
Eigen::MatrixXd collocation_integrator(const SpectralOperators& ops);

/// C_q = g(0) u_0 / sum_j w_j q(x_j) u_j. Throws for unconverged states or a
/// vanishing renewal integral.
double compute_cq(const SteadyState& state, const DiscreteModel& model);

/// Classical RK4 on du/dt = F(u) over [0, t_end] in uniform steps no larger
/// than dt; the boundary row is imposed algebraically after every stage.
/// Throws Error(non_finite) on blow-up.
Eigen::VectorXd evolve(const DiscreteModel& model, const Eigen::VectorXd& u0,
                       double t_end, double dt,
                       const Boundary& boundary = Boundary::ivp());

}  // namespace floc

#endif  // FLOC_SOLVER_HPP_
