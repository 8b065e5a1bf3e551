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

#include "floc/floc.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "floc/error.hpp"
#include "floc/io.hpp"
#include "floc/rates.hpp"
#include "floc/solver.hpp"
#include "floc/study.hpp"
#include "floc/theory.hpp"

struct floc_params {
  floc::ParamSet p;
};

struct floc_state {
  floc::SteadyState s;
};

namespace {

thread_local std::string g_last_error;

floc_status map_code(floc::ErrorCode c) {
  switch (c) {
    case floc::ErrorCode::invalid_argument:
      return FLOC_ERR_INVALID_ARGUMENT;
    case floc::ErrorCode::domain_error:
      return FLOC_ERR_DOMAIN;
    case floc::ErrorCode::singular_matrix:
      return FLOC_ERR_SINGULAR;
    case floc::ErrorCode::non_finite:
      return FLOC_ERR_NON_FINITE;
    case floc::ErrorCode::not_converged:
      return FLOC_ERR_NOT_CONVERGED;
    case floc::ErrorCode::io_error:
      return FLOC_ERR_IO;
  }
  return FLOC_ERR_INTERNAL;
}

template <typename F>
floc_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return FLOC_OK;
  } catch (const floc::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FLOC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FLOC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return FLOC_ERR_INTERNAL;
  }
}

void check_ptr(const void* p, const char* what) {
  floc::require(p != nullptr, std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

floc::SolverConfig to_config(const floc_solve_options* o) {
  floc_solve_options opts;
  floc_solve_options_init(&opts);
  if (o) opts = *o;
  floc::SolverConfig cfg;
  cfg.tol = opts.tol;
  if (opts.max_iter > 0) cfg.max_iter = opts.max_iter;
  floc::require(opts.max_iter >= 0, "max_iter must be >= 0");
  cfg.jacobian = opts.fd_jacobian ? floc::JacobianKind::finite_difference
                                  : floc::JacobianKind::analytic;
  floc::require(opts.boundary == FLOC_IVP || opts.boundary == FLOC_BVP,
                "unknown boundary mode");
  if (opts.boundary == FLOC_BVP) cfg.boundary = floc::Boundary::bvp(opts.c_q);
  cfg.validate();
  return cfg;
}

floc::Method to_method(const floc_solve_options* o) {
  if (!o) return floc::Method::newton;
  floc::require(o->method == FLOC_NEWTON || o->method == FLOC_PICARD,
                "unknown solve method");
  floc::require(o->method == FLOC_NEWTON || o->boundary == FLOC_IVP,
                "picard supports the ivp normalization only");
  return o->method == FLOC_NEWTON ? floc::Method::newton
                                  : floc::Method::picard;
}

}  // namespace

extern "C" {

const char* floc_version(void) { return "0.1.0"; }

const char* floc_last_error(void) { return g_last_error.c_str(); }

void floc_string_free(char* s) { std::free(s); }

floc_status floc_params_create(floc_params** out) {
  return guarded([&] {
    check_ptr(out, "out");
    *out = new floc_params{};
  });
}

floc_status floc_params_from_json(const char* text, floc_params** out) {
  return guarded([&] {
    check_ptr(text, "text");
    check_ptr(out, "out");
    *out = new floc_params{floc::params_from_json(text)};
  });
}

floc_status floc_params_load(const char* path, floc_params** out) {
  return guarded([&] {
    check_ptr(path, "path");
    check_ptr(out, "out");
    *out = new floc_params{floc::load_params(path)};
  });
}

void floc_params_destroy(floc_params* params) { delete params; }

floc_status floc_params_set(floc_params* params, const char* key,
                            double value) {
  return guarded([&] {
    check_ptr(params, "params");
    check_ptr(key, "key");
    floc::ParamSet p = params->p;
    const std::string k = key;
    if (k == "gamma_dot") {
      p.gamma_dot = value;
    } else if (k == "nu") {
      p.nu = value;
    } else if (k == "a") {
      p.a = value;
    } else if (k == "b") {
      p.b = value;
    } else if (k == "c_g") {
      p.c_g = value;
    } else if (k == "xbar") {
      p.xbar = value;
    } else if (k == "c_mu") {
      p.c_mu_override = value;
    } else {
      floc::fail(floc::ErrorCode::invalid_argument,
                 "unknown parameter '" + k + "'");
    }
    p.validate();
    params->p = p;
  });
}

floc_status floc_params_get(const floc_params* params, const char* key,
                            double* value) {
  return guarded([&] {
    check_ptr(params, "params");
    check_ptr(key, "key");
    check_ptr(value, "value");
    const auto& p = params->p;
    const std::string k = key;
    if (k == "gamma_dot") {
      *value = p.gamma_dot;
    } else if (k == "nu") {
      *value = p.nu;
    } else if (k == "a") {
      *value = p.a;
    } else if (k == "b") {
      *value = p.b;
    } else if (k == "c_g") {
      *value = p.c_g;
    } else if (k == "xbar") {
      *value = p.xbar;
    } else if (k == "c_mu") {
      *value = p.c_mu();
    } else {
      floc::fail(floc::ErrorCode::invalid_argument,
                 "unknown parameter '" + k + "'");
    }
  });
}

floc_status floc_params_set_convention(floc_params* params, const char* name) {
  return guarded([&] {
    check_ptr(params, "params");
    check_ptr(name, "name");
    floc::ParamSet p = params->p;
    p.c_mu_convention = floc::removal_convention_from_string(name);
    p.c_mu_override.reset();
    p.validate();
    params->p = p;
  });
}

floc_status floc_params_to_json(const floc_params* params, char** out) {
  return guarded([&] {
    check_ptr(params, "params");
    check_ptr(out, "out");
    *out = dup_string(floc::to_json(params->p));
  });
}

void floc_solve_options_init(floc_solve_options* options) {
  if (!options) return;
  options->method = FLOC_NEWTON;
  options->boundary = FLOC_IVP;
  options->c_q = 0.0;
  options->tol = 1e-12;
  options->max_iter = 0;
  options->fd_jacobian = 0;
}

floc_status floc_solve(const floc_params* params, int n,
                       const floc_solve_options* options, floc_state** out) {
  return guarded([&] {
    check_ptr(params, "params");
    check_ptr(out, "out");
    const floc::SolverConfig cfg = to_config(options);
    const floc::Method method = to_method(options);
    const floc::DiscreteModel model(n, floc::build_rates(params->p));
    auto* st = new floc_state{};
    try {
      st->s = method == floc::Method::newton ? floc::solve_newton(model, cfg)
                                             : floc::solve_picard(model, cfg);
    } catch (...) {
      delete st;
      throw;
    }
    *out = st;
  });
}

void floc_state_destroy(floc_state* state) { delete state; }

size_t floc_state_size(const floc_state* state) {
  return state ? state->s.grid.size() : 0;
}

floc_status floc_state_nodes(const floc_state* state, double* out,
                             size_t len) {
  return guarded([&] {
    check_ptr(state, "state");
    check_ptr(out, "out");
    floc::require(len == state->s.grid.size(), "buffer length mismatch");
    std::copy(state->s.grid.nodes.begin(), state->s.grid.nodes.end(), out);
  });
}

floc_status floc_state_values(const floc_state* state, double* out,
                              size_t len) {
  return guarded([&] {
    check_ptr(state, "state");
    check_ptr(out, "out");
    floc::require(len == static_cast<size_t>(state->s.u.size()),
                  "buffer length mismatch");
    std::copy(state->s.u.data(), state->s.u.data() + len, out);
  });
}

int floc_state_converged(const floc_state* state) {
  return state && state->s.converged ? 1 : 0;
}

int floc_state_iterations(const floc_state* state) {
  return state ? state->s.iterations : 0;
}

double floc_state_residual_norm(const floc_state* state) {
  return state ? state->s.residual_norm : 0.0;
}

double floc_state_c_q(const floc_state* state) {
  return state ? state->s.c_q : 0.0;
}

const char* floc_state_status(const floc_state* state) {
  return state ? floc::to_string(state->s.status).data() : "";
}

floc_status floc_state_average_size(const floc_state* state, int mass_weighted,
                                    double* out) {
  return guarded([&] {
    check_ptr(state, "state");
    check_ptr(out, "out");
    floc::require(state->s.converged, "state is not converged");
    *out = floc::average_floc_size(state->s,
                                   mass_weighted ? floc::SizeWeighting::mass
                                                 : floc::SizeWeighting::number);
  });
}

floc_status floc_state_to_json(const floc_state* state, char** out) {
  return guarded([&] {
    check_ptr(state, "state");
    check_ptr(out, "out");
    *out = dup_string(floc::to_json(state->s));
  });
}

floc_status floc_check_theorem(const floc_params* params, int n_samples,
                               char** json, int* applies) {
  return guarded([&] {
    check_ptr(params, "params");
    check_ptr(json, "json");
    const auto rep =
        floc::check_theorem1(floc::build_rates(params->p), n_samples);
    *json = dup_string(floc::to_json(rep));
    if (applies) *applies = rep.theorem_applies ? 1 : 0;
  });
}

floc_status floc_validate_rates(const floc_params* params, char** text,
                                int* passed) {
  return guarded([&] {
    check_ptr(params, "params");
    check_ptr(text, "text");
    const auto rep = floc::validate_rates(floc::build_rates(params->p));
    *text = dup_string(rep.to_text());
    if (passed) *passed = rep.passed() ? 1 : 0;
  });
}

floc_status floc_convergence_csv(const floc_params* params, const char* mode,
                                 const int* n_values, size_t count,
                                 int reference_n, char** csv,
                                 int* all_converged) {
  return guarded([&] {
    check_ptr(params, "params");
    check_ptr(mode, "mode");
    check_ptr(n_values, "n_values");
    check_ptr(csv, "csv");
    floc::ConvergenceOptions opts;
    if (reference_n > 0) opts.reference_n = reference_n;
    const auto rows = floc::run_convergence_study(
        floc::study_mode_from_string(mode),
        std::vector<int>(n_values, n_values + count), params->p, opts);
    *csv = dup_string(floc::convergence_csv(rows));
    if (all_converged) {
      *all_converged = 1;
      for (const auto& r : rows) {
        if (!r.converged) *all_converged = 0;
      }
    }
  });
}

floc_status floc_sweep_csv(const floc_params* base,
                           const double* gamma_dot_values, size_t gamma_count,
                           const double* c_g_values, size_t c_g_count, int n,
                           const floc_solve_options* options, int parallel,
                           char** csv, int* all_converged, int* trends_ok) {
  return guarded([&] {
    check_ptr(base, "base");
    check_ptr(gamma_dot_values, "gamma_dot_values");
    check_ptr(c_g_values, "c_g_values");
    check_ptr(csv, "csv");
    floc::require(!options || options->method == FLOC_NEWTON,
                  "sweeps use the Newton solver");
    floc::SweepSpec spec;
    spec.gamma_dot_values.assign(gamma_dot_values,
                                 gamma_dot_values + gamma_count);
    spec.c_g_values.assign(c_g_values, c_g_values + c_g_count);
    spec.base = base->p;
    spec.n = n;
    spec.solver = to_config(options);
    spec.parallel = parallel;
    const auto rows = floc::run_sweep(spec);
    *csv = dup_string(floc::sweep_csv(rows));
    if (all_converged) {
      *all_converged = 1;
      for (const auto& r : rows) {
        if (!r.converged) *all_converged = 0;
      }
    }
    if (trends_ok) *trends_ok = floc::check_trends(spec, rows).passed() ? 1 : 0;
  });
}

}  // extern "C"
