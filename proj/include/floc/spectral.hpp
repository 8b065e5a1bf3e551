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

// Chebyshev-Gauss-Lobatto collocation on [0, xbar].
//
// Nodes x_j = (1 - cos(j pi / n)) xbar / 2. The cardinal functions phi_j are
// evaluated in barycentric form with the closed-form Lobatto weights
// (-1)^j, halved at both ends. Every operator here is exact on polynomials
// of degree <= n up to rounding.

#ifndef FLOC_SPECTRAL_HPP_
#define FLOC_SPECTRAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace floc {

struct Grid {
  int n = 0;
  double xbar = 1.0;
  std::vector<double> nodes;

  std::size_t size() const { return nodes.size(); }
};

/// Rejects n < 1 and xbar <= 0. nodes[j] + nodes[n-j] == xbar exactly.
Grid build_grid(int n, double xbar = 1.0);

std::vector<double> barycentric_weights(const Grid& grid);

/// D[i,j] = phi_j'(x_i).
Eigen::MatrixXd diff_matrix(const Grid& grid);

/// w_i = integral of phi_i over [0, xbar] (Clenshaw-Curtis weights).
Eigen::VectorXd quad_weights(const Grid& grid);

/// Q[k,j] = integral of phi_j over [0, x_k].
Eigen::MatrixXd cumulative_matrix(const Grid& grid);

/// Values phi_j(x), j = 0..n, written to out. x may lie anywhere; at a node
/// the row is the exact unit vector.
void cardinal_row(const Grid& grid, std::span<const double> bary, double x,
                  std::span<double> out);

/// Degree-n interpolant of values evaluated at x in [0, xbar].
double interpolate(const Grid& grid, std::span<const double> values,
                   double x);

inline double interpolate(const Grid& grid, const Eigen::VectorXd& values,
                          double x) {
  return interpolate(grid, std::span<const double>(values.data(),
                                                   values.size()),
                     x);
}

/// Rank-3 array T[k,i,j] = phi_j(x_k - x_i) for k >= i, zero otherwise.
class InterpTensor {
 public:
  InterpTensor() = default;
  explicit InterpTensor(std::size_t m) : m_(m), data_(m * m * m, 0.0) {}

  std::size_t extent() const { return m_; }
  double operator()(std::size_t k, std::size_t i, std::size_t j) const {
    return data_[(k * m_ + i) * m_ + j];
  }
  std::span<const double> row(std::size_t k, std::size_t i) const {
    return {data_.data() + (k * m_ + i) * m_, m_};
  }
  std::span<double> row(std::size_t k, std::size_t i) {
    return {data_.data() + (k * m_ + i) * m_, m_};
  }

 private:
  std::size_t m_ = 0;
  std::vector<double> data_;
};

InterpTensor interp_tensor(const Grid& grid);

struct SpectralOperators {
  Eigen::MatrixXd d_matrix;
  Eigen::VectorXd weights;
  Eigen::MatrixXd cumulative;
};

SpectralOperators build_operators(const Grid& grid);

/// Clenshaw-Curtis rule with m+1 Lobatto points mapped onto [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule clenshaw_curtis(int m, double a = 0.0, double b = 1.0);

}  // namespace floc

#endif  // FLOC_SPECTRAL_HPP_
