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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "nfsas/backprojection.hpp"
#include "nfsas/bpdn.hpp"
#include "nfsas/error.hpp"
#include "nfsas/forward.hpp"
#include "nfsas/metrics.hpp"
#include "nfsas/psf.hpp"
#include "nfsas/runner.hpp"
#include "nfsas/scenario.hpp"
#include "nfsas/sequential.hpp"
#include "nfsas/solver.hpp"
#include "nfsas/subset_residual.hpp"
#include "oracle.hpp"

using namespace nfsas;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Scenario scenario(const char* name) {
  return load_scenario(std::string(NFSAS_SOURCE_DIR) + "/scenarios/" + name);
}

PsfReport psf_of(const Scenario& s, const ArrayTopology& t, const std::string& position) {
  const auto grid = display_grid(s);
  for (const auto& p : s.psf) {
    if (p.name == position) {
      return psf_analyze(point_response({p.position, 1.0}, t, s.freqs, grid), p.position);
    }
  }
  throw Error(Errc::invalid_argument, "scenario has no psf position '" + position + "'");
}

double rel_err(const Eigen::VectorXcd& a, const std::vector<cplx>& b) {
  double e = 0, n = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    e += std::norm(a[static_cast<Eigen::Index>(i)] - b[i]);
    n += std::norm(b[i]);
  }
  return std::sqrt(e / n);
}

Outcome b_matrix_identity() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0, worst_oracle = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = oracle::random_instance(rng, 3, 3, 8, 10);
    const Side side = trial % 2 ? Side::tx : Side::rx;
    const ImageGrid grid(inst.pixels);
    const auto field = forward_scatter(inst.scene, inst.topo, inst.freqs);
    const auto B = build_sensing_matrix(field, side, inst.topo, grid);
    const auto& cand = inst.topo.side(side);
    Eigen::VectorXcd w(B.cols());
    std::vector<Element> weighted;
    for (Eigen::Index n = 0; n < w.size(); ++n) {
      w[n] = cplx(u(rng), u(rng));
      weighted.push_back({cand[static_cast<std::size_t>(n)].position, w[n]});
    }
    const auto topo = inst.topo.with_side(side, weighted);
    const Eigen::VectorXcd Bw = B.entries * w;
    worst = std::max(worst, rel_err(Bw, bp_image(field, topo, grid).values));
    const auto k = wavenumbers(inst.freqs);
    const auto ref = oracle::backproject(oracle::forward(inst.scene, inst.topo, k), topo, k, inst.pixels);
    worst_oracle = std::max(worst_oracle, rel_err(Bw, ref));
  }
  return {worst < 1e-10 && worst_oracle < 1e-10,
          fmt("50 instances, max |Bw - bp|/|bp| = %.2e (library), %.2e (direct-sum oracle)", worst, worst_oracle)};
}

Outcome line_array() {
  const auto s = scenario("line.yaml");
  const auto full = generate_topology(s.topology);
  const auto syn = synthesize_sequential(full, scene_spec(s, full), s.synthesis).topology;
  const auto eq = equally_spaced_topology(s, full);

  const auto syn_edge = psf_of(s, syn, "edge");
  const auto eq_edge = psf_of(s, eq, "edge");
  const auto syn_center = psf_of(s, syn, "center");
  const auto full_center = psf_of(s, full, "center");

  // grating level where one exists, else the peak sidelobe
  auto level = [](const PsfReport& r) {
    return std::isfinite(r.grating_lobe_level) ? r.grating_lobe_level : r.peak_sidelobe_level;
  };
  const double margin = level(eq_edge) - level(syn_edge);
  const double center_gap = std::abs(syn_center.peak_sidelobe_level - full_center.peak_sidelobe_level);
  const bool ok = syn.n_rx() == 17 && margin >= 2.0 && center_gap <= 3.0;
  return {ok, fmt("%zu rx; edge level %.2f dB vs equally spaced %.2f dB (margin %.2f >= 2); "
                  "center PSL %.2f vs full %.2f dB (gap %.2f <= 3)",
                  syn.n_rx(), level(syn_edge), level(eq_edge), margin, syn_center.peak_sidelobe_level,
                  full_center.peak_sidelobe_level, center_gap)};
}

Outcome planar_array() {
  const auto s = scenario("planar.yaml");
  const auto full = generate_topology(s.topology);
  const auto syn = synthesize_sequential(full, scene_spec(s, full), s.synthesis).topology;
  const auto eq = equally_spaced_topology(s, full);
  const auto a = psf_of(s, syn, "edge");
  const auto b = psf_of(s, eq, "edge");
  const bool ok = syn.n_rx() == 120 && a.peak_sidelobe_level <= -13.0 && a.grating_lobe_level <= -15.0 &&
                  b.grating_lobe_level >= -11.0;
  return {ok, fmt("%zu rx; edge PSL %.2f dB (<= -13), grating %.2f dB (<= -15); equally spaced grating %.2f dB "
                  "(>= -11)",
                  syn.n_rx(), a.peak_sidelobe_level, a.grating_lobe_level, b.grating_lobe_level)};
}

Outcome tshape() {
  const auto s = scenario("tshape.yaml");
  const auto full = generate_topology(s.topology);
  const auto r = synthesize_sequential(full, scene_spec(s, full), s.synthesis);
  const double before = static_cast<double>(full.n_tx() + full.n_rx());
  const double after = static_cast<double>(r.topology.n_tx() + r.topology.n_rx());
  const double reduction = 1.0 - after / before;
  bool feasible = r.steps.size() == 2 && r.steps[0].side == Side::rx;
  std::string res;
  for (const auto& h : r.steps) {
    feasible = feasible && h.converged && h.residual <= h.epsilon * (1.0 + s.synthesis.synthesis.tolerances.feasibility_slack);
    res += fmt(" %s %.4g/%.4g", std::string(side_name(h.side)).c_str(), h.residual, h.epsilon);
  }
  const bool ok = r.topology.n_tx() == 34 && r.topology.n_rx() == 34 && reduction > 0.64 && feasible;
  return {ok, fmt("%zu tx + %zu rx of %zu + %zu, reduction %.1f%% (> 64%%); residual/eps:%s", r.topology.n_tx(),
                  r.topology.n_rx(), full.n_tx(), full.n_rx(), 100.0 * reduction, res.c_str())};
}

Outcome metrics_suite() {
  std::mt19937_64 rng(2002);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  int failures = 0;
  double worst_ssim = 0.0, worst_scale = 0.0;
  auto random_image = [&](std::size_t nx, std::size_t nz) {
    ImageField f(ImageGrid(RectGrid::centered(nx, nz, 0.01, 0.01, 1.0)));
    for (auto& v : f.values) {
      v = cplx(g(rng), g(rng));
    }
    return f;
  };
  for (int t = 0; t < 50; ++t) {
    const std::size_t nx = 1 + rng() % 24, nz = 1 + rng() % 24;
    const auto x = random_image(nx, nz), y = random_image(nx, nz);
    const auto self = compare_images(x, x);
    failures += !(self.rmse == 0.0 && self.psnr == psnr_cap_db && std::abs(self.ssim - 1.0) <= 1e-12);
    for (std::size_t bins : {2u, 16u, 256u}) {
      const double h = image_entropy(x, bins);
      failures += !(h >= 0.0 && h <= std::log2(static_cast<double>(bins)) + 1e-12);
    }
    const auto xy = compare_images(x, y), yx = compare_images(y, x);
    worst_ssim = std::max(worst_ssim, std::abs(xy.ssim - yx.ssim));
    ImageField xs = x, ys = y;
    const cplx a = scale(rng) * std::polar(1.0, g(rng));
    const double b = scale(rng);
    for (auto& v : xs.values) {
      v *= a;
    }
    for (auto& v : ys.values) {
      v *= b;
    }
    const auto sc = compare_images(xs, ys);
    for (double d : {sc.rmse - xy.rmse, sc.psnr - xy.psnr, sc.ssim - xy.ssim, sc.entropy - xy.entropy}) {
      worst_scale = std::max(worst_scale, std::abs(d));
    }
  }
  const bool ok = failures == 0 && worst_ssim <= 1e-12 && worst_scale <= 1e-9;
  return {ok, fmt("50 image pairs: %d identity/entropy violations, max SSIM asymmetry %.1e, max scaling drift %.1e",
                  failures, worst_ssim, worst_scale)};
}

Outcome solver_suite() {
  std::mt19937_64 rng(3003);
  int matched = 0, infeasible = 0, grew = 0, runs = 0;
  for (int t = 0; t < 20; ++t) {
    const auto pp = oracle::planted(rng, 8, 12, 2);
    const BpdnProblem p(pp.B, pp.y);
    SynthesisConfig cfg;
    cfg.relative_epsilon = 1e-8;
    cfg.reweight_iterations = 1;
    const auto plain = solve_l1(p, cfg);
    cfg.reweight_iterations = 4;
    const auto rw = reweighted_l1(p, cfg);
    for (const auto* r : {&plain, &rw}) {
      ++runs;
      infeasible += r->converged && r->residual > r->epsilon * (1.0 + cfg.tolerances.feasibility_slack);
      infeasible += !r->converged;
    }
    const auto best = oracle::exhaustive_support(pp.B, pp.y, plain.epsilon, 2);
    matched += best && select_indices(plain.w, cfg.selection) == best->support;
    grew += select_indices(rw.w, cfg.selection).size() > select_indices(plain.w, cfg.selection).size();
  }
  const bool ok = matched == 20 && infeasible == 0 && grew == 0;
  return {ok, fmt("support match %d/20; %d of %d runs unconverged or infeasible; reweighting grew support on %d",
                  matched, infeasible, runs, grew)};
}

Outcome subset_residual() {
  const auto s = scenario("line.yaml");
  const auto full = generate_topology(s.topology);
  const auto side = synthesize_side(full, Side::rx, {}, scene_spec(s, full), s.synthesis);
  const auto& w = side.result.w;
  const double eps = side.result.epsilon;
  const double master = constraint_residual(side.sensing.entries, side.pattern.values, w);

  std::vector<std::size_t> all(side.pattern.scene.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const double whole = lemma1_check(side.pattern, Side::rx, w, all);

  std::mt19937_64 rng(4004);
  int within = 0;
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const double r = lemma1_check(side.pattern, Side::rx, w, random_subset(all.size(), rng));
    within += r <= 1.5 * eps;
    worst = std::max(worst, r / eps);
  }
  const bool ok = whole == master && within >= 190;
  return {ok, fmt("%d/200 subsets within 1.5 eps (worst %.3f eps); full set %.17g vs master %.17g", within, worst,
                  whole, master)};
}

} // namespace

int main(int argc, char** argv) {
  apply_thread_setting();
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit_s;
  };
  const std::vector<Criterion> criteria{
      {"1 b-matrix oracle identity", b_matrix_identity, 5.0},
      {"2 line array, 17 of 26 rx", line_array, 120.0},
      {"3 planar array, 120 of 400 rx", planar_array, 1800.0},
      {"4 t-shaped element reduction", tshape, 0.0},
      {"5 metrics properties", metrics_suite, 0.0},
      {"6 solver suite", solver_suite, 0.0},
      {"7 subset residual", subset_residual, 0.0},
  };
  // optional arguments pick criteria by number
  std::vector<bool> wanted(criteria.size(), argc <= 1);
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n >= 1 && n <= static_cast<int>(criteria.size())) {
      wanted[static_cast<std::size_t>(n - 1)] = true;
    }
  }
  int failed = 0, ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!wanted[i]) {
      continue;
    }
    const auto& c = criteria[i];
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0.0 && dt > c.limit_s) {
      o.pass = false;
      o.detail += fmt("; runtime over %.0f s", c.limit_s);
    }
    failed += !o.pass;
    std::printf("%s criterion %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), dt);
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed ? 1 : 0;
}
