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

#include "floc/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "floc/error.hpp"

namespace floc {

namespace {

constexpr int kMinSubquadDegree = 64;

void check_length(const DiscreteModel& model, const Eigen::VectorXd& u) {
  require(static_cast<std::size_t>(u.size()) == model.size(),
          "nodal vector has wrong length");
}

}  // namespace

std::shared_ptr<const GridOperators> make_grid_operators(int n, double xbar,
                                                         int subquad_degree) {
  auto geo = std::make_shared<GridOperators>();
  geo->grid = build_grid(n, xbar);
  geo->ops = build_operators(geo->grid);
  const int m = subquad_degree > 0 ? subquad_degree
                                   : std::max(n, kMinSubquadDegree);
  geo->unit_rule = clenshaw_curtis(m, 0.0, 1.0);

  const auto& nodes = geo->grid.nodes;
  const auto bary = barycentric_weights(geo->grid);
  const auto& s = geo->unit_rule.nodes;
  geo->gain_near.resize(nodes.size());
  geo->gain_far.resize(nodes.size());
  std::vector<double> row(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double half = 0.5 * nodes[k];
    Eigen::MatrixXd near(m + 1, nodes.size());
    Eigen::MatrixXd far(m + 1, nodes.size());
    for (int p = 0; p <= m; ++p) {
      const double y = half * s[p] * s[p] * s[p];
      cardinal_row(geo->grid, bary, y, row);
      for (std::size_t j = 0; j < nodes.size(); ++j) near(p, j) = row[j];
      cardinal_row(geo->grid, bary, nodes[k] - y, row);
      for (std::size_t j = 0; j < nodes.size(); ++j) far(p, j) = row[j];
    }
    geo->gain_near[k] = std::move(near);
    geo->gain_far[k] = std::move(far);
  }
  return geo;
}

std::shared_ptr<const GridOperators> OperatorCache::get(int n, double xbar,
                                                        int subquad_degree) {
  const auto key = std::make_tuple(n, xbar, subquad_degree);
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto built = make_grid_operators(n, xbar, subquad_degree);
  std::lock_guard lock(mutex_);
  return entries_.try_emplace(key, std::move(built)).first->second;
}

DiscreteModel::DiscreteModel(int n, ModelRates rates, Scheme scheme,
                             int subquad_degree)
    : DiscreteModel(make_grid_operators(n, rates.xbar, subquad_degree),
                    std::move(rates), scheme) {}

DiscreteModel::DiscreteModel(std::shared_ptr<const GridOperators> geometry,
                             ModelRates rates, Scheme scheme)
    : geometry_(std::move(geometry)), rates_(std::move(rates)), scheme_(scheme) {
  require(geometry_ != nullptr, "missing grid operators");
  require(geometry_->grid.xbar == rates_.xbar,
          "grid and rates disagree on xbar");
  tabulate();
}

void DiscreteModel::tabulate() {
  const Grid& grid = geometry_->grid;
  const auto& x = grid.nodes;
  const int n = grid.n;
  const std::size_t size = grid.size();
  const auto& w = geometry_->ops.weights;
  const auto& q_mat = geometry_->ops.cumulative;

  g_.resize(size);
  mu_.resize(size);
  kf_.resize(size);
  q_.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    g_[k] = rates_.g(x[k]);
    mu_[k] = rates_.mu(x[k]);
    kf_[k] = rates_.kf(x[k]);
    q_[k] = rates_.q_shape(x[k]);
  }
  require((g_.array() > 0.0).all(), "growth rate must be positive at nodes");

  breakage_ = Eigen::MatrixXd::Zero(size, size);
  loss_ = Eigen::MatrixXd::Zero(size, size);

  if (scheme_ == Scheme::nodal) {
    tensor_ = interp_tensor(grid);
    gain_coef_ = Eigen::MatrixXd::Zero(size, size);
    for (std::size_t k = 0; k < size; ++k) {
      for (std::size_t i = 0; i <= k; ++i) {
        gain_coef_(k, i) =
            0.5 * q_mat(k, i) * rates_.ka(x[k] - x[i], x[i]);
      }
      for (std::size_t j = 0; j < size; ++j) {
        loss_(k, j) = w[j] * rates_.ka(x[k], x[j]);
        breakage_(k, j) =
            (w[j] - q_mat(k, j)) * rates_.gamma_density(x[k], x[j]) * kf_[j];
      }
    }
  } else {
    const auto& rule = geometry_->unit_rule;
    const int m = geometry_->subquad_degree();
    const auto& s = rule.nodes;
    const auto& ws = rule.weights;
    const auto bary = barycentric_weights(grid);
    std::vector<double> row(size);

    gain_coef_ = Eigen::MatrixXd::Zero(size, m + 1);
    for (int k = 0; k <= n; ++k) {
      const double xk = x[k];
      // Gain: 1/2 int_0^{x_k} = int_0^{x_k/2} of the symmetrized integrand,
      // with y = (x_k/2) s^3. At the last node the kernel is taken without
      // its truncation (limit from the left).
      const double half = 0.5 * xk;
      for (int p = 0; p <= m; ++p) {
        const double y = half * s[p] * s[p] * s[p];
        const double z = xk - y;
        const double kern =
            (k == n) ? 0.5 * (rates_.ka_raw(z, y) + rates_.ka_raw(y, z))
                     : 0.5 * (rates_.ka(z, y) + rates_.ka(y, z));
        gain_coef_(k, p) = 3.0 * half * s[p] * s[p] * ws[p] * kern;
      }

      // Loss: integral over [0, xbar - x_k] = [0, x_{n-k}] with
      // y = x_{n-k} s^3; the truncation line is the right endpoint,
      // evaluated as a limit.
      const double span = x[n - k];
      if (span > 0.0) {
        for (int p = 0; p <= m; ++p) {
          const double s3 = s[p] * s[p] * s[p];
          const double y = span * s3;
          const double c =
              3.0 * span * s[p] * s[p] * ws[p] * rates_.ka_raw(xk, y);
          if (c == 0.0) continue;
          cardinal_row(grid, bary, y, row);
          for (std::size_t j = 0; j < size; ++j) loss_(k, j) += c * row[j];
        }
        // Fragmentation gain over [x_k, xbar]. Gamma(x_k; .) varies on the
        // scale x_k, so for x_k > 0 use y = x_k (xbar / x_k)^s.
        const double log_ratio = xk > 0.0 ? std::log(grid.xbar / xk) : 0.0;
        for (int p = 0; p <= m; ++p) {
          double y;
          double jac;
          if (xk > 0.0) {
            y = (p == m) ? grid.xbar : xk * std::exp(log_ratio * s[p]);
            jac = log_ratio * y;
          } else {
            y = (p == m) ? grid.xbar : span * s[p];
            jac = span;
          }
          const double c =
              jac * ws[p] * rates_.gamma_density(xk, y) * rates_.kf(y);
          if (c == 0.0) continue;
          cardinal_row(grid, bary, y, row);
          for (std::size_t j = 0; j < size; ++j) breakage_(k, j) += c * row[j];
        }
      }
    }
  }
  for (std::size_t k = 0; k < size; ++k) breakage_(k, k) -= 0.5 * kf_[k];
}

Eigen::VectorXd DiscreteModel::aggregation_gain(const Eigen::VectorXd& u) const {
  const std::size_t size = this->size();
  Eigen::VectorXd gain = Eigen::VectorXd::Zero(size);
  if (scheme_ == Scheme::nodal) {
    for (std::size_t k = 0; k < size; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i <= k; ++i) {
        const double c = gain_coef_(k, i);
        if (c == 0.0) continue;
        const auto t = tensor_.row(k, i);
        double interp = 0.0;
        for (std::size_t j = 0; j < size; ++j) interp += t[j] * u[j];
        acc += c * u[i] * interp;
      }
      gain[k] = acc;
    }
    return gain;
  }
  for (std::size_t k = 0; k < size; ++k) {
    const Eigen::VectorXd near = geometry_->gain_near[k] * u;
    const Eigen::VectorXd far = geometry_->gain_far[k] * u;
    gain[k] = gain_coef_.row(k).dot(near.cwiseProduct(far));
  }
  return gain;
}

Eigen::MatrixXd DiscreteModel::aggregation_gain_jacobian(
    const Eigen::VectorXd& u) const {
  const std::size_t size = this->size();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(size, size);
  if (scheme_ == Scheme::nodal) {
    for (std::size_t k = 0; k < size; ++k) {
      for (std::size_t i = 0; i <= k; ++i) {
        const double c = gain_coef_(k, i);
        if (c == 0.0) continue;
        const auto t = tensor_.row(k, i);
        double interp = 0.0;
        for (std::size_t j = 0; j < size; ++j) {
          interp += t[j] * u[j];
          jac(k, j) += c * u[i] * t[j];
        }
        jac(k, i) += c * interp;
      }
    }
    return jac;
  }
  // d/du of sum_p c_p a_p b_p with a = N u, b = F u.
  for (std::size_t k = 0; k < size; ++k) {
    const Eigen::MatrixXd& near = geometry_->gain_near[k];
    const Eigen::MatrixXd& far = geometry_->gain_far[k];
    const Eigen::VectorXd c = gain_coef_.row(k).transpose();
    const Eigen::VectorXd a = near * u;
    const Eigen::VectorXd b = far * u;
    jac.row(k) = c.cwiseProduct(b).transpose() * near +
                 c.cwiseProduct(a).transpose() * far;
  }
  return jac;
}

Eigen::VectorXd apply_aggregation(const DiscreteModel& model,
                                  const Eigen::VectorXd& u) {
  check_length(model, u);
  const Eigen::VectorXd loss = u.cwiseProduct(model.loss_matrix() * u);
  return model.aggregation_gain(u) - loss;
}

Eigen::VectorXd apply_breakage(const DiscreteModel& model,
                               const Eigen::VectorXd& u) {
  check_length(model, u);
  return model.breakage_matrix() * u;
}

Eigen::VectorXd apply_growth_removal(const DiscreteModel& model,
                                     const Eigen::VectorXd& u) {
  check_length(model, u);
  return -(model.ops().d_matrix * model.g_nodes().cwiseProduct(u)) -
         model.mu_nodes().cwiseProduct(u);
}

Eigen::VectorXd source_terms(const DiscreteModel& model,
                             const Eigen::VectorXd& u) {
  check_length(model, u);
  return apply_aggregation(model, u) + apply_breakage(model, u) -
         model.mu_nodes().cwiseProduct(u);
}

namespace {

double boundary_row(const DiscreteModel& model, const Eigen::VectorXd& u,
                    const Boundary& boundary) {
  const double g0 = model.g_nodes()[0];
  if (boundary.mode == BoundaryMode::ivp) return u[0] - 1.0 / g0;
  const double renewal =
      (model.ops().weights.cwiseProduct(model.q_nodes())).dot(u);
  return g0 * u[0] - boundary.c_q * renewal;
}

}  // namespace

Eigen::VectorXd residual(const DiscreteModel& model, const Eigen::VectorXd& u,
                         const Boundary& boundary) {
  check_length(model, u);
  if (!u.allFinite()) fail(ErrorCode::non_finite, "non-finite nodal values");
  Eigen::VectorXd r = apply_growth_removal(model, u) +
                      apply_aggregation(model, u) + apply_breakage(model, u);
  r[0] = boundary_row(model, u, boundary);
  return r;
}

Eigen::MatrixXd jacobian(const DiscreteModel& model, const Eigen::VectorXd& u,
                         const Boundary& boundary) {
  check_length(model, u);
  const auto& d = model.ops().d_matrix;
  Eigen::MatrixXd jac = -(d * model.g_nodes().asDiagonal());
  jac.diagonal() -= model.mu_nodes();
  jac += model.breakage_matrix();
  jac += model.aggregation_gain_jacobian(u);
  const Eigen::VectorXd loss_rate = model.loss_matrix() * u;
  jac.diagonal() -= loss_rate;
  jac -= u.asDiagonal() * model.loss_matrix();

  jac.row(0).setZero();
  if (boundary.mode == BoundaryMode::ivp) {
    jac(0, 0) = 1.0;
  } else {
    jac.row(0) = -boundary.c_q *
                 model.ops().weights.cwiseProduct(model.q_nodes()).transpose();
    jac(0, 0) += model.g_nodes()[0];
  }
  return jac;
}

Eigen::MatrixXd jacobian_fd(const DiscreteModel& model,
                            const Eigen::VectorXd& u,
                            const Boundary& boundary) {
  const Eigen::VectorXd r0 = residual(model, u, boundary);
  Eigen::MatrixXd jac(u.size(), u.size());
  Eigen::VectorXd up = u;
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    const double h = 1e-7 * (1.0 + std::abs(u[j]));
    up[j] = u[j] + h;
    jac.col(j) = (residual(model, up, boundary) - r0) / h;
    up[j] = u[j];
  }
  return jac;
}

}  // namespace floc
