// SPDX-License-Identifier: Apache-2.0
//
// nfsas: sparse MIMO array synthesis for wideband near-field imaging
// Copyright (C) 2026 The nfsas authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace nfsas {

struct SolverTolerances {
  double feasibility_slack = 1e-6;  // accept residual <= eps * (1 + slack)
  double primal = 1e-4;             // stop once residual >= eps * (1 - primal)
  double dual = 1e-10;              // coordinate-descent step tolerance, relative to |y|
  std::size_t max_iterations = 200; // outer penalty updates
  std::size_t max_sweeps = 20000;   // inner sweeps per penalty value
};

struct BpdnSolution {
  Eigen::VectorXcd w;
  double residual = 0.0;     // |y - B w|^2
  double l1_norm = 0.0;      // sum |w_n|
  double weighted_l1 = 0.0;  // sum u_n |w_n|
  double lambda = 0.0;       // penalty of the returned iterate
  std::size_t iterations = 0;
  std::size_t sweeps = 0;
  bool converged = false;
  std::vector<double> objective_history; // l1 of successive feasible iterates
};

/// min sum u_n |w_n|  s.t.  |y - B w|^2 <= eps, for complex B, y, w.
///
/// Solved on the penalized form 1/2 |y - B w|^2 + lambda sum u_n |w_n| by
/// coordinate descent on the Gram matrix, with lambda driven to the value at
/// which the constraint is active.
class BpdnProblem {
public:
  BpdnProblem(Eigen::MatrixXcd B, Eigen::VectorXcd y);

  Eigen::Index rows() const noexcept { return B_.rows(); }
  Eigen::Index cols() const noexcept { return B_.cols(); }
  const Eigen::MatrixXcd& matrix() const noexcept { return B_; }
  const Eigen::VectorXcd& target() const noexcept { return y_; }

  double target_norm2() const noexcept { return y_norm2_; }
  /// Squared distance from y to range(B).
  double least_squares_residual() const noexcept { return ls_residual_; }
  double residual(const Eigen::VectorXcd& w) const;

  /// Throws Errc::infeasible when eps is below the least-squares residual.
  BpdnSolution solve(double epsilon, const Eigen::VectorXd& u, const SolverTolerances& tol = {}) const;
  BpdnSolution solve(double epsilon, const SolverTolerances& tol = {}) const;

  /// Least-squares weights restricted to the columns in `support`.
  Eigen::VectorXcd refit(const std::vector<std::size_t>& support) const;

private:
  struct Inner {
    std::size_t sweeps = 0;
    bool converged = false;
  };
  Inner descend(double lambda, const Eigen::VectorXd& u, Eigen::VectorXcd& w, Eigen::VectorXcd& grad,
                const SolverTolerances& tol) const;

  Eigen::MatrixXcd B_;
  Eigen::VectorXcd y_;
  Eigen::MatrixXcd gram_;
  Eigen::VectorXcd corr_; // B^H y
  double y_norm2_ = 0.0;
  double ls_residual_ = 0.0;
};

} // namespace nfsas
