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
#include <string>
#include <string_view>
#include <vector>

#include "nfsas/backprojection.hpp"
#include "nfsas/bpdn.hpp"
#include "nfsas/reference.hpp"
#include "nfsas/resolution.hpp"
#include "nfsas/solver.hpp"

namespace nfsas {

enum class Order { rx_first, tx_first };

/// Weights carried by the selected elements.
enum class WeightMode {
  synthesized, // solver weights of the selected entries
  uniform,     // unit weights
  refit,       // least-squares fit of E_ref on the selected columns
};

std::string_view order_name(Order o) noexcept;
Order parse_order(std::string_view name);
std::string_view weight_mode_name(WeightMode m) noexcept;
WeightMode parse_weight_mode(std::string_view name);

struct SideSpec {
  bool enabled = true;
  std::optional<std::size_t> top_n;
};

struct SequentialConfig {
  SynthesisConfig synthesis;
  Window apodization = Window::hamming;
  Order order = Order::rx_first;
  std::size_t rounds = 1;
  SideSpec tx;
  SideSpec rx;
  WeightMode weights = WeightMode::synthesized;
  /// With a top_n target: move relative_epsilon to the smallest value whose
  /// thresholded reweighted support fits the budget.
  bool budget_search = false;
  double budget_eta_min = 1e-6;
  double budget_eta_max = 0.5;
  std::size_t budget_steps = 14;

  const SideSpec& side(Side s) const noexcept { return s == Side::tx ? tx : rx; }
};

struct SceneSpec {
  FrequencyGrid freqs;
  SamplingGrid sampling;
};

/// Smallest eps = eta |y|^2 whose reweighted solution keeps at most `budget`
/// entries under the threshold rule; selection is then top_n. The search
/// starts at cfg's eta and bisects on log eta, upward to eta_max when that
/// support is too large, downward to eta_min (kept above the least-squares
/// residual) when it is smaller than the budget.
SynthesisResult solve_for_budget(const BpdnProblem& problem, const SynthesisConfig& cfg, std::size_t budget,
                                 double eta_max = 0.5, std::size_t steps = 14, double eta_min = 1e-6);

/// One optimization of a single side against a given referenced topology.
struct SideSynthesis {
  Side optimized = Side::rx;
  ReferencePattern pattern;
  SensingMatrix sensing;
  SynthesisResult result;
  ArrayTopology topology;      // referenced with the optimized side replaced
  double final_residual = 0.0; // |E_ref - B w|^2 with the carried weights
};

SideSynthesis synthesize_side(const ArrayTopology& referenced, Side optimized, ApodizedSides apodized,
                              const SceneSpec& scene, const SequentialConfig& cfg);

struct HalfRound {
  std::size_t round = 0;
  Side side = Side::rx;
  std::size_t candidates = 0;
  std::size_t selected = 0;
  std::size_t sampling_points = 0;
  double epsilon = 0.0;
  double relative_epsilon = 0.0;
  double residual = 0.0;
  double final_residual = 0.0;
  double l1_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<ReweightStep> reweighting;
  std::vector<std::string> warnings;
  SynthesisResult result;
};

struct SequentialResult {
  ArrayTopology topology;
  std::vector<HalfRound> steps;
};

SequentialResult synthesize_sequential(const ArrayTopology& full, const SceneSpec& scene,
                                       const SequentialConfig& cfg);

} // namespace nfsas
