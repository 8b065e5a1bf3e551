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

#include "floc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "floc/error.hpp"

namespace floc {

namespace {

constexpr double kPi = std::numbers::pi;

// cos(p pi / n) for p = 0..2n-1; indexing with (p mod 2n) avoids large
// arguments.
std::vector<double> cosine_table(int n) {
  std::vector<double> table(2 * static_cast<std::size_t>(n));
  for (int p = 0; p < 2 * n; ++p) table[p] = std::cos(p * kPi / n);
  return table;
}

}  // namespace

Grid build_grid(int n, double xbar) {
  require(n >= 1, "grid degree must be >= 1, got " + std::to_string(n));
  require(xbar > 0.0 && std::isfinite(xbar), "xbar must be positive");

  Grid grid;
  grid.n = n;
  grid.xbar = xbar;
  grid.nodes.resize(n + 1);
  // 1 - cos(t) = 2 sin^2(t/2): no cancellation near x = 0. With b = xbar - a
  // rounded, xbar - b is exact (Sterbenz), so the pair sums to xbar exactly.
  for (int j = 0; 2 * j < n; ++j) {
    const double s = std::sin(j * kPi / (2.0 * n));
    const double upper = xbar - xbar * s * s;
    grid.nodes[n - j] = upper;
    grid.nodes[j] = xbar - upper;
  }
  if (n % 2 == 0) grid.nodes[n / 2] = 0.5 * xbar;
  return grid;
}

std::vector<double> barycentric_weights(const Grid& grid) {
  std::vector<double> w(grid.size());
  for (int j = 0; j <= grid.n; ++j) w[j] = (j % 2 == 0) ? 1.0 : -1.0;
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

Eigen::MatrixXd diff_matrix(const Grid& grid) {
  const int n = grid.n;
  const auto bary = barycentric_weights(grid);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    const double ti = i * kPi / n;
    double diag = 0.0;
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double tj = j * kPi / n;
      // x_i - x_j from the product form of cos(tj) - cos(ti).
      const double dx =
          grid.xbar * std::sin(0.5 * (ti + tj)) * std::sin(0.5 * (ti - tj));
      d(i, j) = (bary[j] / bary[i]) / dx;
      diag -= d(i, j);
    }
    d(i, i) = diag;
  }
  return d;
}

Eigen::VectorXd quad_weights(const Grid& grid) {
  const int n = grid.n;
  const auto ctab = cosine_table(n);
  Eigen::VectorXd w(n + 1);
  for (int j = 0; j <= n; ++j) {
    double sum = 1.0;
    for (int k = 1; 2 * k <= n; ++k) {
      const double b = (2 * k == n) ? 1.0 : 2.0;
      sum -= b / (4.0 * k * k - 1.0) * ctab[(2 * k * j) % (2 * n)];
    }
    const double c = (j == 0 || j == n) ? 1.0 : 2.0;
    w[j] = 0.5 * grid.xbar * c * sum / n;
  }
  return w;
}

Eigen::MatrixXd cumulative_matrix(const Grid& grid) {
  // Each cardinal function is expanded in Chebyshev polynomials of the
  // reference variable t = 1 - 2x/xbar and integrated term by term. x = 0
  // corresponds to t = 1, so int_0^{x_k} phi dx = xbar/2 int_{t_k}^1 phi dt.
  const int n = grid.n;
  const auto ctab = cosine_table(n);
  const auto cheb = [&](int p, int k) {
    return ctab[(static_cast<long>(p) * k) % (2 * n)];
  };
  const auto antiderivative = [&](int m, int k) {
    // Integral of T_m evaluated at t_k = cos(k pi / n).
    if (m == 0) return cheb(1, k);
    if (m == 1) return 0.5 * cheb(1, k) * cheb(1, k);
    return cheb(m + 1, k) / (2.0 * (m + 1)) - cheb(m - 1, k) / (2.0 * (m - 1));
  };

  // span[m][k] = I_m(1) - I_m(t_k)
  Eigen::MatrixXd span(n + 1, n + 1);
  for (int m = 0; m <= n; ++m) {
    const double top = antiderivative(m, 0);
    for (int k = 0; k <= n; ++k) span(m, k) = top - antiderivative(m, k);
  }

  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n + 1, n + 1);
  Eigen::VectorXd coef(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double cj = (j == 0 || j == n) ? 2.0 : 1.0;
    for (int m = 0; m <= n; ++m) {
      const double cm = (m == 0 || m == n) ? 2.0 : 1.0;
      coef[m] = 2.0 / (n * cm * cj) * cheb(m, j);
    }
    for (int k = 1; k <= n; ++k) {
      q(k, j) = 0.5 * grid.xbar * coef.dot(span.col(k));
    }
  }
  return q;
}

void cardinal_row(const Grid& grid, std::span<const double> bary, double x,
                  std::span<double> out) {
  const std::size_t m = grid.size();
  for (std::size_t j = 0; j < m; ++j) {
    if (x == grid.nodes[j]) {
      std::fill(out.begin(), out.end(), 0.0);
      out[j] = 1.0;
      return;
    }
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    out[j] = bary[j] / (x - grid.nodes[j]);
    sum += out[j];
  }
  for (std::size_t j = 0; j < m; ++j) out[j] /= sum;
}

double interpolate(const Grid& grid, std::span<const double> values,
                   double x) {
  require(values.size() == grid.size(), "nodal vector has wrong length");
  if (!(x >= 0.0 && x <= grid.xbar)) {
    fail(ErrorCode::domain_error,
         "interpolation point " + std::to_string(x) + " outside [0, xbar]");
  }
  const auto bary = barycentric_weights(grid);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double dx = x - grid.nodes[j];
    if (dx == 0.0) return values[j];
    const double t = bary[j] / dx;
    num += t * values[j];
    den += t;
  }
  return num / den;
}

InterpTensor interp_tensor(const Grid& grid) {
  const std::size_t m = grid.size();
  const auto bary = barycentric_weights(grid);
  InterpTensor tensor(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i <= k; ++i) {
      cardinal_row(grid, bary, grid.nodes[k] - grid.nodes[i], tensor.row(k, i));
    }
  }
  return tensor;
}

SpectralOperators build_operators(const Grid& grid) {
  SpectralOperators ops;
  ops.d_matrix = diff_matrix(grid);
  ops.weights = quad_weights(grid);
  ops.cumulative = cumulative_matrix(grid);
  return ops;
}

QuadratureRule clenshaw_curtis(int m, double a, double b) {
  require(b > a, "quadrature interval must have positive length");
  const Grid ref = build_grid(m, 1.0);
  const Eigen::VectorXd w = quad_weights(ref);
  QuadratureRule rule;
  rule.nodes.resize(ref.size());
  rule.weights.resize(ref.size());
  for (std::size_t j = 0; j < ref.size(); ++j) {
    rule.nodes[j] = a + (b - a) * ref.nodes[j];
    rule.weights[j] = (b - a) * w[j];
  }
  rule.nodes.back() = b;
  return rule;
}

}  // namespace floc
