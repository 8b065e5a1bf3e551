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

// Collocation of the steady-state flocculation operator
//
//   F(u) = -(g u)' - mu u + A(u) + B(u)
//
// at the Chebyshev-Lobatto nodes, with row 0 replaced by the boundary
// (renewal) condition.
//
// Two quadrature schemes are available for the integral terms:
//
//   Scheme::subinterval (default). Every integral is taken over its own
//   interval, [0, x_k] for the aggregation gain, [0, xbar - x_k] for the
//   aggregation loss and [x_k, xbar] for fragmentation gain, with a mapped
//   Clenshaw-Curtis rule. u is evaluated off-grid through its degree-n
//   interpolant. The integrands are smooth on these intervals, so the
//   scheme keeps spectral accuracy. At x = xbar the aggregation gain is
//   taken as its limit from the left.
//
//   Scheme::nodal. Node-only formulas: the gain uses the cumulative matrix
//   and the interpolation tensor T[k,i,j] = phi_j(x_k - x_i), the loss uses
//   the full weights with the truncated kernel, fragmentation gain uses
//   w - Q[k,.]. The truncated integrands are discontinuous at the cut, so
//   this scheme converges only algebraically. Kept for comparison.

#ifndef FLOC_ASSEMBLY_HPP_
#define FLOC_ASSEMBLY_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "floc/rates.hpp"
#include "floc/spectral.hpp"

namespace floc {

enum class Scheme { subinterval, nodal };

enum class BoundaryMode { ivp, bvp };

/// Boundary row: ivp pins u_0 = 1/g(0); bvp imposes the renewal condition
/// g(0) u_0 = c_q * sum_j w_j q(x_j) u_j.
struct Boundary {
  BoundaryMode mode = BoundaryMode::ivp;
  double c_q = 0.0;

  static Boundary ivp() { return {}; }
  static Boundary bvp(double c_q) { return {BoundaryMode::bvp, c_q}; }
};

/// Grid-dependent (rate-independent) data shared between models.
/// Sub-interval integrals use y = c s^3 on a Clenshaw-Curtis rule in s,
/// which turns the cube-root endpoint behaviour of the kernels into smooth
/// integrands.
struct GridOperators {
  Grid grid;
  SpectralOperators ops;
  QuadratureRule unit_rule;  // Clenshaw-Curtis on [0, 1]
  /// With y_m = (x_k / 2) s_m^3: gain_near[k](m, j) = phi_j(y_m) and
  /// gain_far[k](m, j) = phi_j(x_k - y_m).
  std::vector<Eigen::MatrixXd> gain_near;
  std::vector<Eigen::MatrixXd> gain_far;

  int subquad_degree() const {
    return static_cast<int>(unit_rule.nodes.size()) - 1;
  }
};

/// subquad_degree <= 0 selects max(n, 64).
std::shared_ptr<const GridOperators> make_grid_operators(
    int n, double xbar, int subquad_degree = 0);

/// Thread-safe memo of make_grid_operators keyed by (n, xbar, degree).
class OperatorCache {
 public:
  std::shared_ptr<const GridOperators> get(int n, double xbar,
                                           int subquad_degree = 0);

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, double, int>, std::shared_ptr<const GridOperators>>
      entries_;
};

/// Rates tabulated on a grid. Immutable after construction.
class DiscreteModel {
 public:
  DiscreteModel(int n, ModelRates rates, Scheme scheme = Scheme::subinterval,
                int subquad_degree = 0);
  DiscreteModel(std::shared_ptr<const GridOperators> geometry,
                ModelRates rates, Scheme scheme = Scheme::subinterval);

  const Grid& grid() const { return geometry_->grid; }
  const SpectralOperators& ops() const { return geometry_->ops; }
  const GridOperators& geometry() const { return *geometry_; }
  const ModelRates& rates() const { return rates_; }
  Scheme scheme() const { return scheme_; }
  std::size_t size() const { return grid().size(); }

  const Eigen::VectorXd& g_nodes() const { return g_; }
  const Eigen::VectorXd& mu_nodes() const { return mu_; }
  const Eigen::VectorXd& kf_nodes() const { return kf_; }
  const Eigen::VectorXd& q_nodes() const { return q_; }

  /// Linear fragmentation operator (gain minus half k_f loss).
  const Eigen::MatrixXd& breakage_matrix() const { return breakage_; }
  /// Aggregation loss is u_k * (loss_matrix() u)_k.
  const Eigen::MatrixXd& loss_matrix() const { return loss_; }

  Eigen::VectorXd aggregation_gain(const Eigen::VectorXd& u) const;
  Eigen::MatrixXd aggregation_gain_jacobian(const Eigen::VectorXd& u) const;

 private:
  void tabulate();

  std::shared_ptr<const GridOperators> geometry_;
  ModelRates rates_;
  Scheme scheme_;

  Eigen::VectorXd g_, mu_, kf_, q_;
  Eigen::MatrixXd breakage_;
  Eigen::MatrixXd loss_;
  // subinterval: gain_coef_(k, m) multiplies (gain_near[k] u)_m (gain_far[k] u)_m
  // nodal: gain_coef_(k, i) multiplies u_i (T[k,i,.] . u)
  Eigen::MatrixXd gain_coef_;
  InterpTensor tensor_;  // nodal scheme only
};

Eigen::VectorXd apply_aggregation(const DiscreteModel& model,
                                  const Eigen::VectorXd& u);
Eigen::VectorXd apply_breakage(const DiscreteModel& model,
                               const Eigen::VectorXd& u);
Eigen::VectorXd apply_growth_removal(const DiscreteModel& model,
                                     const Eigen::VectorXd& u);

/// A(u) + B(u) - mu u, the right-hand side of (g u)' = ... at every node.
Eigen::VectorXd source_terms(const DiscreteModel& model,
                             const Eigen::VectorXd& u);

/// Throws Error(non_finite) when u has NaN/Inf entries.
Eigen::VectorXd residual(const DiscreteModel& model, const Eigen::VectorXd& u,
                         const Boundary& boundary = Boundary::ivp());

Eigen::MatrixXd jacobian(const DiscreteModel& model, const Eigen::VectorXd& u,
                         const Boundary& boundary = Boundary::ivp());

/// Forward differences with h_j = 1e-7 (1 + |u_j|).
Eigen::MatrixXd jacobian_fd(const DiscreteModel& model,
                            const Eigen::VectorXd& u,
                            const Boundary& boundary = Boundary::ivp());

}  // namespace floc

#endif  // FLOC_ASSEMBLY_HPP_
