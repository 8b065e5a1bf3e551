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

// Convergence studies, parameter sweeps and their CSV encodings.

#ifndef FLOC_STUDY_HPP_
#define FLOC_STUDY_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "floc/rates.hpp"
#include "floc/solver.hpp"

namespace floc {

enum class SizeWeighting { number, mass };

/// Number weighting: sum w x u / sum w u. Mass weighting uses x u in place
/// of u. Throws Error(domain_error) when the denominator is not positive.
double average_floc_size(const SteadyState& state,
                         SizeWeighting weighting = SizeWeighting::number);

enum class StudyMode { linear, nonlinear };

std::string_view to_string(StudyMode mode);
StudyMode study_mode_from_string(std::string_view s);

struct ConvergenceOptions {
  int reference_n = 200;
  SolverConfig solver;
  /// The n = 200 Newton iteration stalls a little above 1e-12.
  double reference_tol = 1e-10;
};

struct ConvergenceRow {
  int n = 0;
  double error = 0.0;  // NaN when the solve failed
  bool converged = false;
  int iterations = 0;
};

/// linear: sup error against linear_exact with k_a = k_f = 0.
/// nonlinear: relative sup error against the reference_n solution, coarse
/// solutions evaluated on the reference nodes.
std::vector<ConvergenceRow> run_convergence_study(
    StudyMode mode, const std::vector<int>& n_values, const ParamSet& params,
    const ConvergenceOptions& options = {});

/// Header "n,error,converged,iterations".
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

struct SweepSpec {
  std::vector<double> gamma_dot_values;
  std::vector<double> c_g_values;
  ParamSet base;  // gamma_dot and c_g are overwritten per row
  int n = 50;
  SolverConfig solver;
  int parallel = 1;

  void validate() const;
};

struct SweepRow {
  double gamma_dot = 0.0;
  double c_g = 0.0;
  bool converged = false;
  double avg_size = 0.0;
  double c_q = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
  /// Sup distance to the linear steady state; not part of the CSV.
  double linear_distance = 0.0;
};

/// Rows ordered outer c_g, inner gamma_dot, whatever the thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

struct TrendReport {
  bool size_nonincreasing_in_gamma = true;
  bool distance_nonincreasing_in_cg = true;
  std::vector<std::string> violations;

  bool passed() const {
    return size_nonincreasing_in_gamma && distance_nonincreasing_in_cg;
  }
};

/// Checks over converged rows only. gamma_dot_values and c_g_values are
/// taken in the order given.
TrendReport check_trends(const SweepSpec& spec,
                         const std::vector<SweepRow>& rows);

}  // namespace floc

#endif  // FLOC_STUDY_HPP_
