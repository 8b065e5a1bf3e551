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

// floc: command-line driver over the C interface.
//
// Exit codes: 0 success, 1 solver non-convergence, 2 invalid input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "floc/floc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitInvalid = 2;

struct CommonOptions {
  std::string config;
  std::optional<double> gamma_dot;
  std::optional<double> c_g;
  std::string cmu_convention;
  std::string output;
};

// Owns a heap string from the library.
struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { floc_string_free(p); }
};

struct ParamsHandle {
  floc_params* p = nullptr;
  ~ParamsHandle() { floc_params_destroy(p); }
};

struct StateHandle {
  floc_state* p = nullptr;
  ~StateHandle() { floc_state_destroy(p); }
};

int report(floc_status st) {
  std::fprintf(stderr, "floc: %s\n", floc_last_error());
  return st == FLOC_ERR_NOT_CONVERGED ? kExitNotConverged : kExitInvalid;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "JSON parameter file");
  cmd->add_option("--gamma-dot", o.gamma_dot, "Shear rate (overrides config)");
  cmd->add_option("--c-g", o.c_g, "Growth coefficient (overrides config)");
  cmd->add_option("--cmu-convention", o.cmu_convention,
                  "Removal coefficient convention")
      ->check(CLI::IsMember({"exp_decay", "reciprocal"}));
  cmd->add_option("--output", o.output, "Write to this file instead of stdout");
}

floc_status load(const CommonOptions& o, ParamsHandle& params) {
  floc_status st = o.config.empty() ? floc_params_create(&params.p)
                                    : floc_params_load(o.config.c_str(), &params.p);
  if (st != FLOC_OK) return st;
  if (!o.cmu_convention.empty()) {
    st = floc_params_set_convention(params.p, o.cmu_convention.c_str());
    if (st != FLOC_OK) return st;
  }
  if (o.gamma_dot) {
    st = floc_params_set(params.p, "gamma_dot", *o.gamma_dot);
    if (st != FLOC_OK) return st;
  }
  if (o.c_g) st = floc_params_set(params.p, "c_g", *o.c_g);
  return st;
}

int emit(const CommonOptions& o, const char* text) {
  if (o.output.empty()) {
    std::fputs(text, stdout);
    return kExitOk;
  }
  std::ofstream out(o.output, std::ios::binary);
  out << text;
  if (!out) {
    std::fprintf(stderr, "floc: cannot write '%s'\n", o.output.c_str());
    return kExitInvalid;
  }
  return kExitOk;
}

struct SolveFlags {
  int n = 50;
  std::string mode = "ivp";
  double cq = 0.0;
  std::string method = "newton";
  double tol = 1e-12;
  int max_iter = 0;
  bool fd_jacobian = false;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f, bool with_method) {
  cmd->add_option("--n", f.n, "Polynomial degree")->check(CLI::Range(2, 4096));
  cmd->add_option("--mode", f.mode, "Boundary row")
      ->check(CLI::IsMember({"ivp", "bvp"}));
  cmd->add_option("--cq", f.cq, "Renewal constant for --mode bvp");
  cmd->add_option("--tol", f.tol, "Residual tolerance");
  cmd->add_option("--max-iter", f.max_iter, "Iteration cap (0: default)");
  cmd->add_flag("--fd-jacobian", f.fd_jacobian,
                "Finite-difference Jacobian");
  if (with_method) {
    cmd->add_option("--method", f.method, "Iteration")
        ->check(CLI::IsMember({"newton", "picard"}));
  }
}

floc_solve_options to_options(const SolveFlags& f) {
  floc_solve_options o;
  floc_solve_options_init(&o);
  o.method = f.method == "picard" ? FLOC_PICARD : FLOC_NEWTON;
  o.boundary = f.mode == "bvp" ? FLOC_BVP : FLOC_IVP;
  o.c_q = f.cq;
  o.tol = f.tol;
  o.max_iter = f.max_iter;
  o.fd_jacobian = f.fd_jacobian ? 1 : 0;
  return o;
}

int run_solve(const CommonOptions& co, const SolveFlags& sf) {
  ParamsHandle params;
  if (floc_status st = load(co, params); st != FLOC_OK) return report(st);
  const floc_solve_options opts = to_options(sf);
  StateHandle state;
  if (floc_status st = floc_solve(params.p, sf.n, &opts, &state.p);
      st != FLOC_OK) {
    return report(st);
  }
  OwnedString json;
  if (floc_status st = floc_state_to_json(state.p, &json.p); st != FLOC_OK) {
    return report(st);
  }
  std::string text = json.p;
  text += '\n';
  if (int rc = emit(co, text.c_str()); rc != kExitOk) return rc;
  if (!floc_state_converged(state.p)) {
    std::fprintf(stderr, "floc: solver did not converge (%s, residual %.3g)\n",
                 floc_state_status(state.p),
                 floc_state_residual_norm(state.p));
    return kExitNotConverged;
  }
  return kExitOk;
}

int run_theorem(const CommonOptions& co, int samples) {
  ParamsHandle params;
  if (floc_status st = load(co, params); st != FLOC_OK) return report(st);
  OwnedString json;
  int applies = 0;
  if (floc_status st = floc_check_theorem(params.p, samples, &json.p, &applies);
      st != FLOC_OK) {
    return report(st);
  }
  std::string text = json.p;
  text += '\n';
  return emit(co, text.c_str());
}

int run_convergence(const CommonOptions& co, const std::string& study,
                    std::vector<int> n_values, int reference_n) {
  ParamsHandle params;
  if (floc_status st = load(co, params); st != FLOC_OK) return report(st);
  if (n_values.empty()) {
    if (study == "linear") {
      n_values = {4, 8, 12, 16, 20, 24, 28, 32};
    } else {
      n_values = {8, 16, 24, 32, 40, 48, 56, 64};
    }
  }
  OwnedString csv;
  int all = 0;
  if (floc_status st = floc_convergence_csv(
          params.p, study.c_str(), n_values.data(), n_values.size(),
          reference_n, &csv.p, &all);
      st != FLOC_OK) {
    return report(st);
  }
  if (int rc = emit(co, csv.p); rc != kExitOk) return rc;
  return all ? kExitOk : kExitNotConverged;
}

int run_sweep(const CommonOptions& co, const SolveFlags& sf,
              const std::vector<double>& gammas, const std::vector<double>& cgs,
              int parallel, bool check_trends) {
  ParamsHandle params;
  if (floc_status st = load(co, params); st != FLOC_OK) return report(st);
  const floc_solve_options opts = to_options(sf);
  OwnedString csv;
  int all = 0;
  int trends = 0;
  if (floc_status st = floc_sweep_csv(params.p, gammas.data(), gammas.size(),
                                      cgs.data(), cgs.size(), sf.n, &opts,
                                      parallel, &csv.p, &all, &trends);
      st != FLOC_OK) {
    return report(st);
  }
  if (int rc = emit(co, csv.p); rc != kExitOk) return rc;
  if (check_trends) {
    std::fprintf(stderr, "floc: trends %s\n", trends ? "hold" : "violated");
  }
  if (!all) {
    std::fprintf(stderr, "floc: some sweep rows did not converge\n");
    return kExitNotConverged;
  }
  return kExitOk;
}

int run_validate(const CommonOptions& co) {
  ParamsHandle params;
  if (floc_status st = load(co, params); st != FLOC_OK) return report(st);
  OwnedString text;
  int passed = 0;
  if (floc_status st = floc_validate_rates(params.p, &text.p, &passed);
      st != FLOC_OK) {
    return report(st);
  }
  if (int rc = emit(co, text.p); rc != kExitOk) return rc;
  return passed ? kExitOk : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady states of the flocculation equation by spectral collocation"};
  app.set_version_flag("--version", std::string(floc_version()));
  app.require_subcommand(1);

  CommonOptions co;
  SolveFlags sf;

  auto* solve = app.add_subcommand("solve", "Single steady state as JSON");
  add_common(solve, co);
  add_solve_flags(solve, sf, true);

  int samples = 4096;
  auto* theorem = app.add_subcommand("check-theorem",
                                     "Contraction hypotheses as JSON");
  add_common(theorem, co);
  theorem->add_option("--samples", samples, "Sample count on [0, xbar]")
      ->check(CLI::Range(64, 1 << 20));

  std::string study = "linear";
  std::vector<int> n_values;
  int reference_n = 200;
  auto* conv = app.add_subcommand("convergence", "Error table (n, error) as CSV");
  add_common(conv, co);
  conv->add_option("--study", study, "linear or nonlinear")
      ->check(CLI::IsMember({"linear", "nonlinear"}));
  conv->add_option("--n-values", n_values, "Ascending degrees")->delimiter(',');
  conv->add_option("--reference-n", reference_n, "Reference degree")
      ->check(CLI::Range(2, 4096));

  std::vector<double> gammas = {1.0, 5.0, 10.0, 20.0};
  std::vector<double> cgs = {1.0};
  int parallel = 1;
  bool check_trends = false;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep as CSV");
  add_common(sweep, co);
  add_solve_flags(sweep, sf, false);
  sweep->add_option("--gamma-dot-values", gammas, "Shear rates")
      ->delimiter(',');
  sweep->add_option("--c-g-values", cgs, "Growth coefficients")
      ->delimiter(',');
  sweep->add_option("--parallel", parallel, "Worker threads")
      ->check(CLI::Range(1, 256));
  sweep->add_flag("--check-trends", check_trends,
                  "Report the monotonicity post-check on stderr");

  auto* validate = app.add_subcommand("validate-rates",
                                      "Check the rate assumptions");
  add_common(validate, co);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  if (solve->parsed()) return run_solve(co, sf);
  if (theorem->parsed()) return run_theorem(co, samples);
  if (conv->parsed()) return run_convergence(co, study, n_values, reference_n);
  if (sweep->parsed()) {
    return run_sweep(co, sf, gammas, cgs, parallel, check_trends);
  }
  return run_validate(co);
}
