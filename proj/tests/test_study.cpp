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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "floc/error.hpp"
#include "floc/study.hpp"
#include "floc/theory.hpp"

using namespace floc;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

SteadyState state_from(const Grid& g, Eigen::VectorXd u) {
  SteadyState s;
  s.grid = g;
  s.u = std::move(u);
  s.converged = true;
  return s;
}

}  // namespace

TEST_CASE("average floc size") {
  const Grid g = build_grid(16);
  CHECK(average_floc_size(state_from(g, Eigen::VectorXd::Constant(17, 2.0))) ==
        doctest::Approx(0.5).epsilon(1e-14));

  std::size_t nearest = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (std::abs(g.nodes[k] - 0.25) < std::abs(g.nodes[nearest] - 0.25)) nearest = k;
  }
  Eigen::VectorXd spike = Eigen::VectorXd::Zero(17);
  spike[nearest] = 1.0;
  CHECK(average_floc_size(state_from(g, spike)) ==
        doctest::Approx(g.nodes[nearest]).epsilon(1e-14));

  CHECK_THROWS_AS(average_floc_size(state_from(g, Eigen::VectorXd::Zero(17))), Error);

  SUBCASE("linear steady state against quadrature") {
    ParamSet p;
    p.c_mu_override = 1.0;
    const auto rates = build_rates(p).linear_part();
    const DiscreteModel model(30, rates);
    const auto s = solve_newton(model);
    REQUIRE(s.converged);
    using boost::math::quadrature::gauss_kronrod;
    const auto u = [&](double x) { return linear_exact(rates, x); };
    const double num = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return x * u(x); }, 0.0, 1.0, 10, 1e-14);
    const double den = gauss_kronrod<double, 61>::integrate(u, 0.0, 1.0, 10, 1e-14);
    CHECK(std::abs(average_floc_size(s) - num / den) <= 1e-8);
    // Here u = exp(-x) in closed form.
    const double e = std::exp(1.0);
    CHECK(std::abs(num / den - (1.0 - 2.0 / e) / (1.0 - 1.0 / e)) <= 1e-12);
    const double mass_num = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return x * x * u(x); }, 0.0, 1.0, 10, 1e-14);
    CHECK(std::abs(average_floc_size(s, SizeWeighting::mass) - mass_num / num) <= 1e-8);
  }
}

TEST_CASE("linear convergence study") {
  const std::vector<int> ns = {4, 8, 12, 16, 20, 24, 28, 32};
  const auto rows = run_convergence_study(StudyMode::linear, ns, ParamSet{});
  REQUIRE(rows.size() == ns.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == ns[i]);
    CHECK(rows[i].converged);
    CHECK(rows[i].iterations >= 1);
  }
  CHECK(rows[4].error <= 1e-10);
  // Non-increasing up to a factor 10 until the round-off plateau.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i - 1].error > 1e-13) CHECK(rows[i].error <= 10.0 * rows[i - 1].error);
  }
  const std::string csv = convergence_csv(rows);
  CHECK(csv.rfind("n,error,converged,iterations\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  CHECK_THROWS_AS(run_convergence_study(StudyMode::linear, {8, 4}, ParamSet{}), Error);
  CHECK_THROWS_AS(run_convergence_study(StudyMode::linear, {}, ParamSet{}), Error);
}

TEST_CASE("nonlinear convergence study against a small reference") {
  ConvergenceOptions opts;
  opts.reference_n = 96;
  const auto rows = run_convergence_study(StudyMode::nonlinear, {8, 16, 32, 48},
                                          ParamSet{}, opts);
  for (const auto& r : rows) CHECK(r.converged);
  CHECK(rows[3].error <= 1e-4);
  CHECK(rows[3].error < rows[0].error);
  CHECK(study_mode_from_string("nonlinear") == StudyMode::nonlinear);
  CHECK_THROWS_AS(study_mode_from_string("quadratic"), Error);
}

TEST_CASE("sweeps") {
  SweepSpec spec;
  spec.gamma_dot_values = {1.0, 5.0, 10.0, 20.0};
  spec.c_g_values = {1.0, 2.0};
  spec.n = 32;

  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].c_g == 1.0);
  CHECK(rows[3].gamma_dot == 20.0);
  CHECK(rows[4].c_g == 2.0);
  CHECK(rows[4].gamma_dot == 1.0);
  for (const auto& r : rows) {
    CHECK(r.converged);
    CHECK(r.avg_size > 0.0);
    CHECK(r.avg_size < 1.0);
    CHECK(r.c_q > 0.0);
  }
  for (std::size_t i = 1; i < 4; ++i) CHECK(rows[i].avg_size < rows[i - 1].avg_size);
  const auto trends = check_trends(spec, rows);
  CHECK(trends.passed());
  CHECK(trends.violations.empty());

  SUBCASE("parallel execution is byte-identical") {
    SweepSpec par = spec;
    par.parallel = 4;
    CHECK(sweep_csv(run_sweep(par)) == sweep_csv(rows));
    CHECK(sweep_csv(run_sweep(spec)) == sweep_csv(rows));
  }
  SUBCASE("CSV round trip is bit-exact") {
    std::vector<SweepRow> with_failure = rows;
    with_failure[2].converged = false;
    with_failure[2].avg_size = std::nan("");
    std::stringstream buf;
    write_sweep_csv(buf, with_failure);
    const std::string text = buf.str();
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.rfind("gamma_dot,c_g,converged,avg_size,c_q,residual_norm,iterations\n", 0) == 0);
    const auto back = read_sweep_csv(buf);
    REQUIRE(back.size() == with_failure.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      const auto& a = with_failure[i];
      const auto& b = back[i];
      CHECK(same_bits(a.gamma_dot, b.gamma_dot));
      CHECK(same_bits(a.c_g, b.c_g));
      CHECK(a.converged == b.converged);
      CHECK((same_bits(a.avg_size, b.avg_size) ||
             (std::isnan(a.avg_size) && std::isnan(b.avg_size))));
      CHECK(same_bits(a.c_q, b.c_q));
      CHECK(same_bits(a.residual_norm, b.residual_norm));
      CHECK(a.iterations == b.iterations);
    }
  }
  SUBCASE("trend violations are reported") {
    auto bad = rows;
    bad[1].avg_size = 0.9;
    const auto rep = check_trends(spec, bad);
    CHECK_FALSE(rep.size_nonincreasing_in_gamma);
    CHECK_FALSE(rep.violations.empty());
  }
}

TEST_CASE("nonlinear state approaches the linear one") {
  SUBCASE("as growth increases") {
    SweepSpec spec;
    spec.gamma_dot_values = {1.0};
    spec.c_g_values = {1.0, 2.0, 5.0, 10.0};
    spec.n = 32;
    const auto rows = run_sweep(spec);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].linear_distance < rows[i - 1].linear_distance);
    }
  }
  SUBCASE("as shear vanishes") {
    SweepSpec spec;
    spec.gamma_dot_values = {1.0, 0.5, 0.1, 0.01};
    spec.c_g_values = {1.0};
    spec.n = 32;
    const auto rows = run_sweep(spec);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].linear_distance < rows[i - 1].linear_distance);
    }
  }
}

TEST_CASE("renewal constant varies smoothly across a sweep") {
  SweepSpec spec;
  for (int i = 0; i <= 20; ++i) spec.gamma_dot_values.push_back(0.5 * i);
  spec.c_g_values = {1.0};
  spec.n = 24;
  const auto rows = run_sweep(spec);
  // Second differences stay small compared with the values themselves.
  for (std::size_t i = 2; i < rows.size(); ++i) {
    REQUIRE(rows[i].converged);
    const double d2 = rows[i].c_q - 2 * rows[i - 1].c_q + rows[i - 2].c_q;
    CHECK(std::abs(d2) <= 0.05 * rows[i].c_q);
  }
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  spec.gamma_dot_values = {1.0};
  spec.c_g_values = {1.0};
  CHECK_NOTHROW(spec.validate());
  spec.gamma_dot_values = {};
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.gamma_dot_values = {150.0};
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.gamma_dot_values = {1.0};
  spec.c_g_values = {11.0};
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.c_g_values = {1.0};
  spec.parallel = 0;
  CHECK_THROWS_AS(run_sweep(spec), Error);
  std::stringstream bad("gamma,c_g\n1,2\n");
  CHECK_THROWS_AS(read_sweep_csv(bad), Error);
  std::stringstream short_row(
      "gamma_dot,c_g,converged,avg_size,c_q,residual_norm,iterations\n1,2,1\n");
  CHECK_THROWS_AS(read_sweep_csv(short_row), Error);
}
