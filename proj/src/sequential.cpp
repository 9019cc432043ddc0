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

#include "nfsas/sequential.hpp"

#include <cmath>

#include "nfsas/error.hpp"

namespace nfsas {

std::string_view order_name(Order o) noexcept { return o == Order::rx_first ? "rx_first" : "tx_first"; }

Order parse_order(std::string_view name) {
  if (name == "rx_first") {
    return Order::rx_first;
  }
  if (name == "tx_first") {
    return Order::tx_first;
  }
  throw Error(Errc::invalid_argument, "unknown order '" + std::string(name) + "'");
}

std::string_view weight_mode_name(WeightMode m) noexcept {
  switch (m) {
  case WeightMode::synthesized: return "synthesized";
  case WeightMode::uniform: return "uniform";
  case WeightMode::refit: return "refit";
  }
  return "synthesized";
}

WeightMode parse_weight_mode(std::string_view name) {
  for (WeightMode m : {WeightMode::synthesized, WeightMode::uniform, WeightMode::refit}) {
    if (weight_mode_name(m) == name) {
      return m;
    }
  }
  throw Error(Errc::invalid_argument, "unknown weight mode '" + std::string(name) + "'");
}

SynthesisResult solve_for_budget(const BpdnProblem& problem, const SynthesisConfig& cfg, std::size_t budget,
                                 double eta_max, std::size_t steps, double eta_min) {
  if (budget == 0) {
    throw Error(Errc::invalid_argument, "element budget must be at least 1");
  }
  if (!(eta_min > 0.0) || !(eta_min < eta_max)) {
    throw Error(Errc::invalid_argument, "budget search needs 0 < eta_min < eta_max");
  }
  Selection threshold = cfg.selection;
  threshold.top_n.reset();
  Selection top = cfg.selection;
  top.top_n = budget;

  const double y2 = problem.target_norm2();
  auto attempt = [&](double eta) {
    SynthesisConfig c = cfg;
    c.epsilon.reset();
    c.relative_epsilon = eta;
    c.selection = threshold;
    return reweighted_l1(problem, c);
  };
  auto count = [&](const SynthesisResult& r) {
    return r.w.cwiseAbs().maxCoeff() > 0.0 ? select_indices(r.w, threshold).size() : std::size_t{0};
  };
  auto fits = [&](const SynthesisResult& r) {
    const auto n = count(r);
    return n > 0 && n <= budget;
  };
  // lo never fits, hi always does; best holds the solution at hi
  auto bisect = [&](double lo, double hi, SynthesisResult& best) {
    for (std::size_t i = 0; i < steps; ++i) {
      const double mid = 0.5 * (lo + hi);
      SynthesisResult r = attempt(std::exp(mid));
      if (fits(r)) {
        hi = mid;
        best = std::move(r);
      } else {
        lo = mid;
      }
    }
  };

  const double eta0 = cfg.epsilon ? *cfg.epsilon / y2 : cfg.relative_epsilon;
  SynthesisResult best = attempt(eta0);
  if (!fits(best)) {
    SynthesisResult at_hi = attempt(eta_max);
    const bool reachable = fits(at_hi);
    best = std::move(at_hi); // unreachable below eta_max: top_n truncates
    if (reachable) {
      bisect(std::log(eta0), std::log(eta_max), best);
    }
  } else if (count(best) < budget) {
    const double floor = std::max(eta_min, problem.least_squares_residual() / y2 * (1.0 + 1e-3));
    if (floor < eta0) {
      SynthesisResult at_lo = attempt(floor);
      if (fits(at_lo)) {
        best = std::move(at_lo);
      } else {
        bisect(std::log(floor), std::log(eta0), best);
      }
    }
  }
  if (best.w.cwiseAbs().maxCoeff() > 0.0) {
    apply_selection(best, top);
  }
  return best;
}

SideSynthesis synthesize_side(const ArrayTopology& referenced, Side optimized, ApodizedSides apodized,
                              const SceneSpec& scene, const SequentialConfig& cfg) {
  ReferencePattern pattern = reference_pattern(referenced, cfg.apodization, scene.sampling, scene.freqs, apodized);
  SensingMatrix sensing = build_sensing_matrix(pattern.field, optimized, pattern.referenced, pattern.grid);
  const BpdnProblem problem(sensing.entries, pattern.values);

  const SideSpec& spec = cfg.side(optimized);
  SynthesisConfig sc = cfg.synthesis;
  if (spec.top_n) {
    sc.selection.top_n = spec.top_n;
  }
  SynthesisResult result = cfg.budget_search && spec.top_n
                               ? solve_for_budget(problem, sc, *spec.top_n, cfg.budget_eta_max, cfg.budget_steps,
                                                  cfg.budget_eta_min)
                               : reweighted_l1(problem, sc);
  if (result.selected.empty()) {
    throw Error(Errc::empty_selection, std::string("no ") + side_name(optimized) + " element survives selection");
  }

  Eigen::VectorXcd carried = Eigen::VectorXcd::Zero(result.w.size());
  switch (cfg.weights) {
  case WeightMode::synthesized:
    for (std::size_t n : result.selected) {
      carried[static_cast<Eigen::Index>(n)] = result.w[static_cast<Eigen::Index>(n)];
    }
    break;
  case WeightMode::uniform:
    for (std::size_t n : result.selected) {
      carried[static_cast<Eigen::Index>(n)] = 1.0;
    }
    break;
  case WeightMode::refit:
    carried = problem.refit(result.selected);
    break;
  }

  const auto& candidates = pattern.referenced.side(optimized);
  std::vector<Element> kept;
  result.selected_weights.clear();
  for (std::size_t n : result.selected) {
    const auto w = carried[static_cast<Eigen::Index>(n)];
    kept.push_back({candidates[n].position, w});
    result.selected_weights.push_back(w);
  }
  ArrayTopology topology = pattern.referenced.with_side(optimized, std::move(kept));
  const double final_residual = problem.residual(carried);
  return SideSynthesis{optimized,       std::move(pattern),  std::move(sensing), std::move(result),
                       std::move(topology), final_residual};
}

SequentialResult synthesize_sequential(const ArrayTopology& full, const SceneSpec& scene,
                                       const SequentialConfig& cfg) {
  if (cfg.rounds == 0) {
    throw Error(Errc::invalid_argument, "rounds must be at least 1");
  }
  cfg.synthesis.validate();

  ArrayTopology current = full;
  bool synthesized_tx = false;
  bool synthesized_rx = false;
  SequentialResult out{full, {}};
  const Side first = cfg.order == Order::rx_first ? Side::rx : Side::tx;

  for (std::size_t round = 0; round < cfg.rounds; ++round) {
    for (Side side : {first, other(first)}) {
      const SideSpec& spec = cfg.side(side);
      if (!spec.enabled || (spec.top_n && round == 0 && full.side(side).size() <= *spec.top_n)) {
        continue;
      }
      // candidates: the full side; fixed side: as synthesized so far
      const ArrayTopology referenced = current.with_side(side, full.side(side));
      const ApodizedSides apodized{side == Side::tx || !synthesized_tx, side == Side::rx || !synthesized_rx};
      SideSynthesis s = synthesize_side(referenced, side, apodized, scene, cfg);

      HalfRound h;
      h.round = round;
      h.side = side;
      h.candidates = full.side(side).size();
      h.selected = s.result.selected.size();
      h.sampling_points = s.pattern.values.size();
      h.epsilon = s.result.epsilon;
      h.relative_epsilon = s.result.epsilon / s.pattern.squared_norm();
      h.residual = s.result.residual;
      h.final_residual = s.final_residual;
      h.l1_norm = s.result.l1_norm;
      h.iterations = s.result.iterations;
      h.converged = s.result.converged;
      h.reweighting = s.result.reweighting;
      h.warnings = s.pattern.warnings;

      // the fixed side keeps the weights it was synthesized with, not its apodization
      current = current.with_side(side, s.topology.side(side));
      (side == Side::tx ? synthesized_tx : synthesized_rx) = true;
      h.result = std::move(s.result);
      out.steps.push_back(std::move(h));
    }
  }
  out.topology = current;
  return out;
}

} // namespace nfsas
