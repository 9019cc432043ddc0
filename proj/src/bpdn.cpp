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

#include "nfsas/bpdn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nfsas/error.hpp"
#include "nfsas/subset_residual.hpp"

namespace nfsas {

namespace {

double weighted_l1(const Eigen::VectorXcd& w, const Eigen::VectorXd& u) {
  double s = 0.0;
  for (Eigen::Index n = 0; n < w.size(); ++n) {
    s += u[n] * std::abs(w[n]);
  }
  return s;
}

double plain_l1(const Eigen::VectorXcd& w) {
  double s = 0.0;
  for (Eigen::Index n = 0; n < w.size(); ++n) {
    s += std::abs(w[n]);
  }
  return s;
}

} // namespace

BpdnProblem::BpdnProblem(Eigen::MatrixXcd B, Eigen::VectorXcd y) : B_(std::move(B)), y_(std::move(y)) {
  if (B_.rows() != y_.size()) {
    std::ostringstream msg;
    msg << "sensing matrix has " << B_.rows() << " rows but the target has " << y_.size() << " entries";
    throw Error(Errc::dimension_mismatch, msg.str());
  }
  if (B_.cols() == 0 || B_.rows() == 0) {
    throw Error(Errc::empty_input, "sensing matrix is empty");
  }
  if (!B_.allFinite() || !y_.allFinite()) {
    throw Error(Errc::invalid_argument, "sensing matrix or target contains non-finite values");
  }
  gram_ = B_.adjoint() * B_;
  corr_ = B_.adjoint() * y_;
  y_norm2_ = y_.squaredNorm();

  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(B_);
  const Eigen::VectorXcd w_ls = cod.solve(y_);
  ls_residual_ = (y_ - B_ * w_ls).squaredNorm();
}

double BpdnProblem::residual(const Eigen::VectorXcd& w) const { return constraint_residual(B_, y_, w); }

BpdnProblem::Inner BpdnProblem::descend(double lambda, const Eigen::VectorXd& u, Eigen::VectorXcd& w,
                                        Eigen::VectorXcd& grad, const SolverTolerances& tol) const {
  const Eigen::Index n_cols = B_.cols();
  const double step_tol = tol.dual * std::sqrt(y_norm2_);
  std::vector<Eigen::Index> active;
  bool full_pass = true;
  Inner out;

  while (out.sweeps < tol.max_sweeps) {
    if (full_pass) {
      active.clear();
    }
    double max_step = 0.0;
    const Eigen::Index count = full_pass ? n_cols : static_cast<Eigen::Index>(active.size());
    for (Eigen::Index a = 0; a < count; ++a) {
      const Eigen::Index n = full_pass ? a : active[static_cast<std::size_t>(a)];
      const double d = gram_(n, n).real();
      if (d <= 0.0) {
        continue;
      }
      const std::complex<double> z = w[n] - grad[n] / d;
      const double thr = lambda * u[n] / d;
      const double mag = std::abs(z);
      const std::complex<double> next = mag > thr ? z * (1.0 - thr / mag) : std::complex<double>{};
      const std::complex<double> delta = next - w[n];
      if (delta != std::complex<double>{}) {
        grad.noalias() += gram_.col(n) * delta;
        w[n] = next;
        max_step = std::max(max_step, std::abs(delta) * std::sqrt(d));
      }
      if (full_pass && next != std::complex<double>{}) {
        active.push_back(n);
      }
    }
    ++out.sweeps;
    if (max_step <= step_tol) {
      if (full_pass) {
        out.converged = true;
        break;
      }
      full_pass = true;
    } else {
      full_pass = false;
    }
  }
  // limit drift from the incremental updates
  grad = gram_ * w - corr_;
  return out;
}

BpdnSolution BpdnProblem::solve(double epsilon, const SolverTolerances& tol) const {
  return solve(epsilon, Eigen::VectorXd::Ones(B_.cols()), tol);
}

BpdnSolution BpdnProblem::solve(double epsilon, const Eigen::VectorXd& u, const SolverTolerances& tol) const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(Errc::invalid_argument, "residual bound epsilon must be positive and finite");
  }
  if (u.size() != B_.cols()) {
    throw Error(Errc::dimension_mismatch, "l1 weight vector length differs from the number of candidates");
  }
  for (Eigen::Index n = 0; n < u.size(); ++n) {
    if (!(u[n] > 0.0) || !std::isfinite(u[n])) {
      throw Error(Errc::invalid_argument, "l1 weights must be positive and finite");
    }
  }
  if (epsilon < ls_residual_) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "epsilon " << epsilon << " is below the least-squares residual " << ls_residual_;
    throw Error(Errc::infeasible, msg.str());
  }

  const Eigen::Index n_cols = B_.cols();
  BpdnSolution best;
  best.w = Eigen::VectorXcd::Zero(n_cols);
  best.residual = y_norm2_;

  if (epsilon >= y_norm2_) {
    best.converged = true;
    best.objective_history.push_back(0.0);
    return best;
  }

  double lambda_max = 0.0;
  for (Eigen::Index n = 0; n < n_cols; ++n) {
    lambda_max = std::max(lambda_max, std::abs(corr_[n]) / u[n]);
  }

  const double accept = epsilon * (1.0 + tol.feasibility_slack);
  const double target_lo = epsilon * (1.0 - tol.primal);

  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n_cols);
  Eigen::VectorXcd grad = -corr_;

  // Bracket in x = log(lambda) on f(x) = residual - eps, which is nondecreasing in x.
  double x_hi = std::log(lambda_max);
  double f_hi = y_norm2_ - epsilon;
  double x_lo = -std::numeric_limits<double>::infinity();
  double f_lo = 0.0;
  bool have_lo = false;
  int stuck = 0; // Illinois bookkeeping: +n when the hi side repeated, -n for lo
  double x = x_hi + std::log(0.5);
  const double x_floor = x_hi + std::log(1e-14);

  best.lambda = lambda_max;
  bool found = false;
  bool inner_ok = true;
  std::size_t total_sweeps = 0;
  std::size_t it = 0;
  for (; it < tol.max_iterations; ++it) {
    const double lambda = std::exp(x);
    const Inner inner = descend(lambda, u, w, grad, tol);
    total_sweeps += inner.sweeps;
    const double rho = residual(w);
    const double f = rho - epsilon;

    if (rho <= accept) {
      if (!found || x > std::log(best.lambda)) {
        best.w = w;
        best.residual = rho;
        best.lambda = lambda;
        inner_ok = inner.converged;
        best.objective_history.push_back(weighted_l1(w, u));
      }
      found = true;
      if (rho >= target_lo) {
        best.converged = inner.converged;
        ++it;
        break;
      }
      x_lo = x;
      f_lo = f;
      have_lo = true;
      if (stuck < 0) {
        f_hi *= 0.5;
      }
      stuck = stuck < 0 ? stuck - 1 : -1;
    } else {
      x_hi = x;
      f_hi = f;
      if (have_lo && stuck > 0) {
        f_lo *= 0.5;
      }
      stuck = stuck > 0 ? stuck + 1 : 1;
    }

    if (!have_lo) {
      x = x_hi + std::log(0.25);
      if (x < x_floor) {
        break;
      }
      continue;
    }
    if (x_hi - x_lo < 1e-13) {
      best.converged = inner_ok;
      ++it;
      break;
    }
    double next = x_lo - f_lo * (x_hi - x_lo) / (f_hi - f_lo);
    const double margin = 1e-3 * (x_hi - x_lo);
    if (!(next > x_lo + margin && next < x_hi - margin)) {
      next = 0.5 * (x_lo + x_hi);
    }
    x = next;
  }

  if (!found) {
    best.w = w;
    best.residual = residual(w);
    best.lambda = std::exp(x);
    best.converged = false;
  }
  best.iterations = it;
  best.sweeps = total_sweeps;
  best.l1_norm = plain_l1(best.w);
  best.weighted_l1 = weighted_l1(best.w, u);
  return best;
}

Eigen::VectorXcd BpdnProblem::refit(const std::vector<std::size_t>& support) const {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(B_.cols());
  if (support.empty()) {
    return w;
  }
  Eigen::MatrixXcd sub(B_.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t j = 0; j < support.size(); ++j) {
    if (support[j] >= static_cast<std::size_t>(B_.cols())) {
      throw Error(Errc::invalid_argument, "refit support index out of range");
    }
    sub.col(static_cast<Eigen::Index>(j)) = B_.col(static_cast<Eigen::Index>(support[j]));
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(sub);
  const Eigen::VectorXcd ws = cod.solve(y_);
  for (std::size_t j = 0; j < support.size(); ++j) {
    w[static_cast<Eigen::Index>(support[j])] = ws[static_cast<Eigen::Index>(j)];
  }
  return w;
}

} // namespace nfsas
