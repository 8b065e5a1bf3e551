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

#include "floc/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "floc/error.hpp"
#include "floc/theory.hpp"

namespace floc {

namespace {

constexpr double kNegativeTolerance = -1e-10;
constexpr double kMinStep = 1e-8;

double sup_norm(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

double residual_norm_or_inf(const DiscreteModel& model,
                            const Eigen::VectorXd& u,
                            const Boundary& boundary) {
  if (!u.allFinite()) return std::numeric_limits<double>::infinity();
  const double r = sup_norm(residual(model, u, boundary));
  return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

void finish(SteadyState& state, const DiscreteModel& model) {
  if (state.converged && state.u.minCoeff() < kNegativeTolerance) {
    state.converged = false;
    state.status = SolveStatus::negative_density;
  }
  if (!state.converged) return;
  state.c_q = state.boundary.mode == BoundaryMode::bvp
                  ? state.boundary.c_q
                  : compute_cq(state, model);
}

struct NewtonRun {
  Eigen::VectorXd u;
  SolveStatus status = SolveStatus::max_iterations;
  int iterations = 0;
  std::vector<double> history;
};

NewtonRun newton_iterate(const DiscreteModel& model, const SolverConfig& cfg,
                         Eigen::VectorXd u, int max_iter) {
  NewtonRun run;
  const auto& bc = cfg.boundary;
  for (int it = 0;; ++it) {
    if (!u.allFinite()) {
      run.status = SolveStatus::non_finite;
      break;
    }
    const Eigen::VectorXd r = residual(model, u, bc);
    const double norm = sup_norm(r);
    run.history.push_back(norm);
    if (norm <= cfg.tol) {
      run.status = SolveStatus::converged;
      break;
    }
    if (it == max_iter) break;

    const Eigen::MatrixXd jac = cfg.jacobian == JacobianKind::analytic
                                    ? jacobian(model, u, bc)
                                    : jacobian_fd(model, u, bc);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    const Eigen::VectorXd delta = lu.solve(r);
    if (!(lu.rcond() > std::numeric_limits<double>::epsilon()) ||
        !delta.allFinite()) {
      run.status = SolveStatus::singular_jacobian;
      break;
    }

    double step = cfg.damping;
    Eigen::VectorXd trial = u - step * delta;
    while (residual_norm_or_inf(model, trial, bc) >= norm) {
      step *= 0.5;
      if (step < kMinStep) break;
      trial = u - step * delta;
    }
    if (step < kMinStep) {
      run.status = SolveStatus::line_search_failed;
      break;
    }
    u = std::move(trial);
    ++run.iterations;
  }
  run.u = std::move(u);
  return run;
}

}  // namespace

std::string_view to_string(Method m) {
  return m == Method::newton ? "newton" : "picard";
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iterations:
      return "max_iterations";
    case SolveStatus::singular_jacobian:
      return "singular_jacobian";
    case SolveStatus::line_search_failed:
      return "line_search_failed";
    case SolveStatus::negative_density:
      return "negative_density";
    case SolveStatus::non_finite:
      return "non_finite";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  require(tol > 0.0, "solver tolerance must be positive");
  require(!max_iter || *max_iter >= 1, "max_iter must be >= 1");
  require(damping > 0.0 && damping <= 1.0, "damping must lie in (0, 1]");
  require(boundary.mode == BoundaryMode::ivp || boundary.c_q > 0.0,
          "bvp mode needs a positive C_q");
  require(picard_warm_start >= 0, "picard_warm_start must be >= 0");
}

Eigen::VectorXd linear_initial_guess(const DiscreteModel& model) {
  const auto& x = model.grid().nodes;
  Eigen::VectorXd u(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    u[k] = linear_exact(model.rates(), x[k]);
  }
  return u;
}

SteadyState solve_newton(const DiscreteModel& model, const SolverConfig& config,
                         const std::optional<Eigen::VectorXd>& init) {
  config.validate();
  const int max_iter = config.max_iter.value_or(100);
  Eigen::VectorXd u0 = init ? *init : linear_initial_guess(model);
  require(static_cast<std::size_t>(u0.size()) == model.size(),
          "initial guess has wrong length");

  NewtonRun run = newton_iterate(model, config, u0, max_iter);
  int iterations = run.iterations;
  std::vector<double> history = run.history;

  if (run.status != SolveStatus::converged && config.picard_fallback &&
      config.boundary.mode == BoundaryMode::ivp &&
      config.picard_warm_start > 0) {
    SolverConfig warm = config;
    warm.max_iter = config.picard_warm_start;
    const SteadyState pre = solve_picard(model, warm);
    if (pre.u.allFinite()) {
      NewtonRun retry = newton_iterate(model, config, pre.u, max_iter);
      iterations += pre.iterations + retry.iterations;
      history.insert(history.end(), retry.history.begin(), retry.history.end());
      if (retry.status == SolveStatus::converged ||
          retry.history.back() < run.history.back()) {
        run = std::move(retry);
      }
    }
  }

  SteadyState state;
  state.grid = model.grid();
  state.method = Method::newton;
  state.boundary = config.boundary;
  state.iterations = iterations;
  state.history = std::move(history);
  state.status = run.status;
  state.converged = run.status == SolveStatus::converged;
  state.u = std::move(run.u);
  state.residual_norm = residual_norm_or_inf(model, state.u, config.boundary);
  finish(state, model);
  return state;
}

Eigen::MatrixXd collocation_integrator(const SpectralOperators& ops) {
  // Solve [e_0^T; D(1:n, :)] f = [0; s(1:n)] for every unit source.
  Eigen::MatrixXd dhat = ops.d_matrix;
  const Eigen::Index m = dhat.rows();
  dhat.row(0).setZero();
  dhat(0, 0) = 1.0;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Identity(m, m);
  rhs(0, 0) = 0.0;
  return dhat.partialPivLu().solve(rhs);
}

SteadyState solve_picard(const DiscreteModel& model,
                         const SolverConfig& config) {
  config.validate();
  const int max_iter = config.max_iter.value_or(10000);
  const Eigen::MatrixXd integrator = collocation_integrator(model.ops());
  const Eigen::VectorXd& g = model.g_nodes();
  const Boundary ivp = Boundary::ivp();

  SteadyState state;
  state.grid = model.grid();
  state.method = Method::picard;
  state.boundary = ivp;

  Eigen::VectorXd f = Eigen::VectorXd::Ones(model.size());
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::VectorXd u = f.cwiseQuotient(g);
    Eigen::VectorXd next = integrator * source_terms(model, u);
    next.array() += 1.0;
    state.iterations = it;
    if (!next.allFinite()) {
      state.status = SolveStatus::non_finite;
      break;
    }
    const double step = sup_norm(next - f);
    state.history.push_back(step);
    f = std::move(next);
    if (step <= config.tol &&
        residual_norm_or_inf(model, f.cwiseQuotient(g), ivp) <= config.tol) {
      state.status = SolveStatus::converged;
      state.converged = true;
      break;
    }
  }
  state.u = f.cwiseQuotient(g);
  state.residual_norm = residual_norm_or_inf(model, state.u, ivp);
  finish(state, model);
  return state;
}

double compute_cq(const SteadyState& state, const DiscreteModel& model) {
  require(state.converged, "C_q requires a converged steady state");
  require(static_cast<std::size_t>(state.u.size()) == model.size(),
          "state and model grids differ");
  const double renewal =
      model.ops().weights.cwiseProduct(model.q_nodes()).dot(state.u);
  if (!(renewal != 0.0) || !std::isfinite(renewal)) {
    fail(ErrorCode::domain_error, "renewal integral of q_shape * u vanishes");
  }
  return model.g_nodes()[0] * state.u[0] / renewal;
}

Eigen::VectorXd evolve(const DiscreteModel& model, const Eigen::VectorXd& u0,
                       double t_end, double dt, const Boundary& boundary) {
  require(static_cast<std::size_t>(u0.size()) == model.size(),
          "initial state has wrong length");
  require(dt > 0.0 && std::isfinite(dt), "time step must be positive");
  require(t_end >= dt, "t_end must be at least one time step");

  const double g0 = model.g_nodes()[0];
  const Eigen::VectorXd renewal_w =
      model.ops().weights.cwiseProduct(model.q_nodes());
  const auto impose = [&](Eigen::VectorXd& u) {
    if (boundary.mode == BoundaryMode::ivp) {
      u[0] = 1.0 / g0;
    } else {
      const double rest = renewal_w.dot(u) - renewal_w[0] * u[0];
      u[0] = boundary.c_q * rest / (g0 - boundary.c_q * renewal_w[0]);
    }
  };
  const auto rhs = [&](const Eigen::VectorXd& u) {
    Eigen::VectorXd du = apply_growth_removal(model, u) +
                         apply_aggregation(model, u) +
                         apply_breakage(model, u);
    du[0] = 0.0;
    return du;
  };

  const long steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / steps;
  Eigen::VectorXd u = u0;
  impose(u);
  for (long s = 0; s < steps; ++s) {
    const Eigen::VectorXd k1 = rhs(u);
    Eigen::VectorXd stage = u + 0.5 * h * k1;
    impose(stage);
    const Eigen::VectorXd k2 = rhs(stage);
    stage = u + 0.5 * h * k2;
    impose(stage);
    const Eigen::VectorXd k3 = rhs(stage);
    stage = u + h * k3;
    impose(stage);
    const Eigen::VectorXd k4 = rhs(stage);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    impose(u);
    if (!u.allFinite()) {
      fail(ErrorCode::non_finite,
           "time integration blew up at t = " + std::to_string((s + 1) * h));
    }
  }
  return u;
}

}  // namespace floc
