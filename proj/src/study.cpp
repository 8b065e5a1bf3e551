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

#include "floc/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "floc/error.hpp"
#include "floc/theory.hpp"

namespace floc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    fail(ErrorCode::invalid_argument, "bad number '" + s + "' in CSV");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

const char* const kSweepHeader =
    "gamma_dot,c_g,converged,avg_size,c_q,residual_norm,iterations";

SweepRow solve_row(const SweepSpec& spec, OperatorCache& cache, double c_g,
                   double gamma_dot) {
  SweepRow row;
  row.gamma_dot = gamma_dot;
  row.c_g = c_g;
  row.avg_size = row.c_q = row.residual_norm = row.linear_distance = kNaN;

  ParamSet p = spec.base;
  p.gamma_dot = gamma_dot;
  p.c_g = c_g;
  try {
    const DiscreteModel model(cache.get(spec.n, p.xbar), build_rates(p));
    const SteadyState s = solve_newton(model, spec.solver);
    row.converged = s.converged;
    row.residual_norm = s.residual_norm;
    row.iterations = s.iterations;
    if (s.converged) {
      row.avg_size = average_floc_size(s);
      row.c_q = s.c_q;
      row.linear_distance =
          (s.u - linear_initial_guess(model)).cwiseAbs().maxCoeff();
    }
  } catch (const Error&) {
    row.converged = false;
  }
  return row;
}

}  // namespace

double average_floc_size(const SteadyState& state, SizeWeighting weighting) {
  require(static_cast<std::size_t>(state.u.size()) == state.grid.size(),
          "state values do not match its grid");
  const Eigen::VectorXd w = quad_weights(state.grid);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < state.grid.size(); ++j) {
    const double x = state.grid.nodes[j];
    const double density =
        weighting == SizeWeighting::number ? state.u[j] : x * state.u[j];
    num += w[j] * x * density;
    den += w[j] * density;
  }
  if (!(den > 0.0)) {
    fail(ErrorCode::domain_error, "average floc size of a zero density");
  }
  return num / den;
}

std::string_view to_string(StudyMode mode) {
  return mode == StudyMode::linear ? "linear" : "nonlinear";
}

StudyMode study_mode_from_string(std::string_view s) {
  if (s == "linear") return StudyMode::linear;
  if (s == "nonlinear") return StudyMode::nonlinear;
  fail(ErrorCode::invalid_argument,
       "unknown study mode '" + std::string(s) + "'");
}

std::vector<ConvergenceRow> run_convergence_study(
    StudyMode mode, const std::vector<int>& n_values, const ParamSet& params,
    const ConvergenceOptions& options) {
  require(!n_values.empty(), "n_values must not be empty");
  require(std::is_sorted(n_values.begin(), n_values.end()),
          "n_values must be ascending");
  require(n_values.front() >= 1, "n_values must be >= 1");
  ModelRates rates = build_rates(params);
  if (mode == StudyMode::linear) rates = rates.linear_part();

  std::optional<SteadyState> reference;
  if (mode == StudyMode::nonlinear) {
    require(options.reference_n >= 1, "reference_n must be >= 1");
    SolverConfig cfg = options.solver;
    cfg.tol = options.reference_tol;
    const DiscreteModel ref_model(options.reference_n, rates);
    reference = solve_newton(ref_model, cfg);
  }

  std::vector<ConvergenceRow> rows;
  for (int n : n_values) {
    ConvergenceRow row;
    row.n = n;
    row.error = kNaN;
    try {
      const DiscreteModel model(n, rates);
      // The default initial guess is linear_exact itself; start the linear
      // study elsewhere so the error reflects an actual solve.
      std::optional<Eigen::VectorXd> init;
      if (mode == StudyMode::linear) init = model.g_nodes().cwiseInverse();
      const SteadyState s = solve_newton(model, options.solver, init);
      row.iterations = s.iterations;
      row.converged = s.converged && (!reference || reference->converged);
      if (row.converged) {
        double err = 0.0;
        if (mode == StudyMode::linear) {
          for (std::size_t k = 0; k < s.grid.size(); ++k) {
            err = std::max(err, std::abs(s.u[k] -
                                         linear_exact(rates, s.grid.nodes[k])));
          }
        } else {
          const auto& ref = *reference;
          const double scale = ref.u.cwiseAbs().maxCoeff();
          for (std::size_t k = 0; k < ref.grid.size(); ++k) {
            const double v = interpolate(s.grid, s.u, ref.grid.nodes[k]);
            err = std::max(err, std::abs(v - ref.u[k]));
          }
          err /= scale;
        }
        row.error = err;
      }
    } catch (const Error&) {
      row.converged = false;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "n,error,converged,iterations\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + fmt(r.error) + "," +
           (r.converged ? "1" : "0") + "," + std::to_string(r.iterations) +
           "\n";
  }
  return out;
}

void SweepSpec::validate() const {
  require(!gamma_dot_values.empty(), "gamma_dot_values must not be empty");
  require(!c_g_values.empty(), "c_g_values must not be empty");
  for (double v : gamma_dot_values) {
    require(std::isfinite(v) && v >= 0.0 && v <= 100.0,
            "gamma_dot values must lie in [0, 100]");
  }
  for (double v : c_g_values) {
    require(std::isfinite(v) && v > 0.0 && v <= 10.0,
            "c_g values must lie in (0, 10]");
  }
  require(n >= 2, "sweep grid degree must be >= 2");
  require(parallel >= 1, "parallel must be >= 1");
  solver.validate();
  ParamSet probe = base;
  probe.gamma_dot = gamma_dot_values.front();
  probe.c_g = c_g_values.front();
  probe.validate();
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  struct Point {
    double c_g, gamma_dot;
  };
  std::vector<Point> points;
  for (double cg : spec.c_g_values) {
    for (double gd : spec.gamma_dot_values) points.push_back({cg, gd});
  }
  std::vector<SweepRow> rows(points.size());
  OperatorCache cache;
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      rows[i] = solve_row(spec, cache, points[i].c_g, points[i].gamma_dot);
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(spec.parallel),
                            points.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << fmt(r.gamma_dot) << ',' << fmt(r.c_g) << ','
        << (r.converged ? 1 : 0) << ',' << fmt(r.avg_size) << ','
        << fmt(r.c_q) << ',' << fmt(r.residual_norm) << ',' << r.iterations
        << '\n';
  }
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_sweep_csv(out, rows);
  return out.str();
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) {
    fail(ErrorCode::invalid_argument, "sweep CSV header mismatch");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 7) {
      fail(ErrorCode::invalid_argument, "sweep CSV row needs 7 fields");
    }
    SweepRow r;
    r.gamma_dot = parse_double(cells[0]);
    r.c_g = parse_double(cells[1]);
    if (cells[2] != "0" && cells[2] != "1") {
      fail(ErrorCode::invalid_argument, "converged must be 0 or 1");
    }
    r.converged = cells[2] == "1";
    r.avg_size = parse_double(cells[3]);
    r.c_q = parse_double(cells[4]);
    r.residual_norm = parse_double(cells[5]);
    r.iterations = static_cast<int>(parse_double(cells[6]));
    r.linear_distance = kNaN;
    rows.push_back(r);
  }
  return rows;
}

TrendReport check_trends(const SweepSpec& spec,
                         const std::vector<SweepRow>& rows) {
  const std::size_t ng = spec.gamma_dot_values.size();
  const std::size_t nc = spec.c_g_values.size();
  require(rows.size() == ng * nc, "row count does not match the sweep spec");
  TrendReport rep;
  const auto at = [&](std::size_t ic, std::size_t ig) -> const SweepRow& {
    return rows[ic * ng + ig];
  };

  for (std::size_t ic = 0; ic < nc; ++ic) {
    const SweepRow* prev = nullptr;
    for (std::size_t ig = 0; ig < ng; ++ig) {
      const SweepRow& r = at(ic, ig);
      if (!r.converged) continue;
      if (prev && r.avg_size > prev->avg_size) {
        rep.size_nonincreasing_in_gamma = false;
        rep.violations.push_back("avg_size rises from gamma_dot=" +
                                 fmt(prev->gamma_dot) + " to " +
                                 fmt(r.gamma_dot) + " at c_g=" + fmt(r.c_g));
      }
      prev = &r;
    }
  }
  for (std::size_t ig = 0; ig < ng; ++ig) {
    const SweepRow* prev = nullptr;
    for (std::size_t ic = 0; ic < nc; ++ic) {
      const SweepRow& r = at(ic, ig);
      if (!r.converged || std::isnan(r.linear_distance)) continue;
      if (prev && r.linear_distance > prev->linear_distance) {
        rep.distance_nonincreasing_in_cg = false;
        rep.violations.push_back("linear distance rises from c_g=" +
                                 fmt(prev->c_g) + " to " + fmt(r.c_g) +
                                 " at gamma_dot=" + fmt(r.gamma_dot));
      }
      prev = &r;
    }
  }
  return rep;
}

}  // namespace floc
