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
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nfsas/backprojection.hpp"
#include "nfsas/bpdn.hpp"
#include "nfsas/geometry.hpp"
#include "nfsas/reference.hpp"

namespace nfsas {

struct Selection {
  double threshold = 0.01;          // keep |w_n| >= threshold * max|w|
  std::optional<std::size_t> top_n; // when set, keep the top_n largest instead
};

struct SynthesisConfig {
  std::optional<double> epsilon;   // absolute bound; overrides relative_epsilon
  double relative_epsilon = 1e-2;  // eps = relative_epsilon * |E_ref|^2
  std::size_t reweight_iterations = 3; // weighted solves in total; 0 and 1 both mean plain l1
  std::optional<double> reweight_delta; // default 1e-3 * max|w| of the first solve
  Selection selection;
  SolverTolerances tolerances;

  /// Resolved absolute bound for a target of squared norm `target_norm2`.
  double bound(double target_norm2) const;
  void validate() const;
};

struct ReweightStep {
  double l1_norm = 0.0;
  double residual = 0.0;
  double lambda = 0.0;
  std::size_t support = 0; // entries with |w_n| > 1e-6 max|w|
  bool converged = false;
};

struct SynthesisResult {
  Eigen::VectorXcd w;
  std::vector<std::size_t> selected; // sorted, unique
  std::vector<std::complex<double>> selected_weights;
  double residual = 0.0;
  double l1_norm = 0.0;
  double epsilon = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> objective_history;
  std::vector<ReweightStep> reweighting;
};

/// Count of entries with |w_n| > rel * max|w|.
std::size_t support_size(const Eigen::VectorXcd& w, double rel = 1e-6);

SynthesisResult solve_l1(const BpdnProblem& problem, const SynthesisConfig& cfg);
SynthesisResult reweighted_l1(const BpdnProblem& problem, const SynthesisConfig& cfg);

SynthesisResult solve_l1(const SensingMatrix& B, const ReferencePattern& pattern, const SynthesisConfig& cfg);
SynthesisResult reweighted_l1(const SensingMatrix& B, const ReferencePattern& pattern, const SynthesisConfig& cfg);

/// Indices kept by `sel`, sorted ascending. Throws Errc::empty_selection.
std::vector<std::size_t> select_indices(const Eigen::VectorXcd& w, const Selection& sel);

/// Fills result.selected / selected_weights from result.w.
void apply_selection(SynthesisResult& result, const Selection& sel);

/// Replaces side `optimized` of `topology` with the selected candidates and
/// their retained weights.
ArrayTopology select_elements(const SynthesisResult& result, const Selection& sel, const ArrayTopology& topology,
                              Side optimized);

} // namespace nfsas
