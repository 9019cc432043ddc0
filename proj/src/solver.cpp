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

#include "nfsas/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nfsas/error.hpp"

namespace nfsas {

double SynthesisConfig::bound(double target_norm2) const {
  validate();
  return epsilon ? *epsilon : relative_epsilon * target_norm2;
}

void SynthesisConfig::validate() const {
  if (epsilon && !(*epsilon > 0.0 && std::isfinite(*epsilon))) {
    throw Error(Errc::invalid_argument, "epsilon must be positive and finite");
  }
  if (!(relative_epsilon > 0.0 && std::isfinite(relative_epsilon))) {
    throw Error(Errc::invalid_argument, "relative_epsilon must be positive and finite");
  }
  if (reweight_delta && !(*reweight_delta > 0.0 && std::isfinite(*reweight_delta))) {
    throw Error(Errc::invalid_argument, "reweight_delta must be positive and finite");
  }
  if (!(selection.threshold > 0.0 && selection.threshold <= 1.0)) {
    throw Error(Errc::invalid_argument, "selection threshold must lie in (0, 1]");
  }
  if (selection.top_n && *selection.top_n == 0) {
    throw Error(Errc::invalid_argument, "top_n must be at least 1");
  }
}

std::size_t support_size(const Eigen::VectorXcd& w, double rel) {
  const double peak = w.size() ? w.cwiseAbs().maxCoeff() : 0.0;
  if (peak == 0.0) {
    return 0;
  }
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    n += std::abs(w[i]) > rel * peak ? 1 : 0;
  }
  return n;
}

namespace {

SynthesisResult from_solution(BpdnSolution&& sol, double eps, const Selection& sel) {
  SynthesisResult r;
  r.w = std::move(sol.w);
  r.residual = sol.residual;
  r.l1_norm = sol.l1_norm;
  r.epsilon = eps;
  r.iterations = sol.iterations;
  r.converged = sol.converged;
  r.objective_history = std::move(sol.objective_history);
  if (support_size(r.w, 0.0) > 0) {
    apply_selection(r, sel);
  }
  return r;
}

ReweightStep step_of(const BpdnSolution& s) {
  return {s.l1_norm, s.residual, s.lambda, support_size(s.w), s.converged};
}

} // namespace

SynthesisResult solve_l1(const BpdnProblem& problem, const SynthesisConfig& cfg) {
  const double eps = cfg.bound(problem.target_norm2());
  BpdnSolution sol = problem.solve(eps, cfg.tolerances);
  const ReweightStep step = step_of(sol);
  SynthesisResult r = from_solution(std::move(sol), eps, cfg.selection);
  r.reweighting.push_back(step);
  return r;
}

SynthesisResult reweighted_l1(const BpdnProblem& problem, const SynthesisConfig& cfg) {
  const double eps = cfg.bound(problem.target_norm2());
  const std::size_t solves = std::max<std::size_t>(1, cfg.reweight_iterations);

  Eigen::VectorXd u = Eigen::VectorXd::Ones(problem.cols());
  BpdnSolution sol = problem.solve(eps, u, cfg.tolerances);
  std::vector<ReweightStep> steps{step_of(sol)};
  std::size_t iterations = sol.iterations;

  const double peak0 = sol.w.cwiseAbs().maxCoeff();
  const double delta = cfg.reweight_delta ? *cfg.reweight_delta : 1e-3 * peak0;
  for (std::size_t i = 1; i < solves && peak0 > 0.0; ++i) {
    for (Eigen::Index n = 0; n < u.size(); ++n) {
      u[n] = 1.0 / (std::abs(sol.w[n]) + delta);
    }
    sol = problem.solve(eps, u, cfg.tolerances);
    steps.push_back(step_of(sol));
    iterations += sol.iterations;
  }

  SynthesisResult r = from_solution(std::move(sol), eps, cfg.selection);
  r.iterations = iterations;
  r.reweighting = std::move(steps);
  return r;
}

namespace {

BpdnProblem problem_of(const SensingMatrix& B, const ReferencePattern& pattern) {
  if (B.rows() != pattern.values.size()) {
    throw Error(Errc::dimension_mismatch, "sensing matrix rows differ from the reference pattern length");
  }
  return BpdnProblem(B.entries, pattern.values);
}

} // namespace

SynthesisResult solve_l1(const SensingMatrix& B, const ReferencePattern& pattern, const SynthesisConfig& cfg) {
  return solve_l1(problem_of(B, pattern), cfg);
}

SynthesisResult reweighted_l1(const SensingMatrix& B, const ReferencePattern& pattern, const SynthesisConfig& cfg) {
  return reweighted_l1(problem_of(B, pattern), cfg);
}

std::vector<std::size_t> select_indices(const Eigen::VectorXcd& w, const Selection& sel) {
  std::vector<std::size_t> keep;
  const double peak = w.size() ? w.cwiseAbs().maxCoeff() : 0.0;
  if (peak > 0.0) {
    if (sel.top_n) {
      std::vector<std::size_t> order(static_cast<std::size_t>(w.size()));
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(w[static_cast<Eigen::Index>(a)]) > std::abs(w[static_cast<Eigen::Index>(b)]);
      });
      for (std::size_t i = 0; i < order.size() && keep.size() < *sel.top_n; ++i) {
        if (std::abs(w[static_cast<Eigen::Index>(order[i])]) > 0.0) {
          keep.push_back(order[i]);
        }
      }
      std::sort(keep.begin(), keep.end());
    } else {
      for (Eigen::Index n = 0; n < w.size(); ++n) {
        if (std::abs(w[n]) >= sel.threshold * peak) {
          keep.push_back(static_cast<std::size_t>(n));
        }
      }
    }
  }
  if (keep.empty()) {
    throw Error(Errc::empty_selection, "no candidate element survives selection");
  }
  return keep;
}

void apply_selection(SynthesisResult& result, const Selection& sel) {
  result.selected = select_indices(result.w, sel);
  result.selected_weights.clear();
  for (std::size_t n : result.selected) {
    result.selected_weights.push_back(result.w[static_cast<Eigen::Index>(n)]);
  }
}

ArrayTopology select_elements(const SynthesisResult& result, const Selection& sel, const ArrayTopology& topology,
                              Side optimized) {
  const auto& candidates = topology.side(optimized);
  if (static_cast<std::size_t>(result.w.size()) != candidates.size()) {
    throw Error(Errc::dimension_mismatch, "weight vector length differs from the candidate count");
  }
  std::vector<Element> kept;
  for (std::size_t n : select_indices(result.w, sel)) {
    kept.push_back({candidates[n].position, result.w[static_cast<Eigen::Index>(n)]});
  }
  return topology.with_side(optimized, std::move(kept));
}

} // namespace nfsas
