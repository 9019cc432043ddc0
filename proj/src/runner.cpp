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

#include "nfsas/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <random>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nfsas/backprojection.hpp"
#include "nfsas/error.hpp"
#include "nfsas/io.hpp"
#include "nfsas/resolution.hpp"

namespace nfsas {

using json = nlohmann::ordered_json;

std::string_view command_name(Command c) noexcept {
  switch (c) {
  case Command::synthesize: return "synthesize";
  case Command::image: return "image";
  case Command::psf: return "psf";
  case Command::metrics: return "metrics";
  case Command::compare: return "compare";
  }
  return "synthesize";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::synthesize, Command::image, Command::psf, Command::metrics, Command::compare}) {
    if (command_name(c) == name) {
      return c;
    }
  }
  throw Error(Errc::invalid_argument,
              "unknown command '" + std::string(name) + "' (synthesize, image, psf, metrics, compare)");
}

void apply_thread_setting() {
  const char* env = std::getenv("NFSAS_THREADS");
  if (!env || !*env) {
    return;
  }
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    throw Error(Errc::invalid_argument, std::string("NFSAS_THREADS must be a positive integer, got '") + env + "'");
  }
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(n));
#endif
}

SceneSpec scene_spec(const Scenario& s, const ArrayTopology& full) {
  const RegionSpec& r = s.region;
  const ResolutionSpec spec = resolution_spec(full, r.range, s.freqs.center_wavelength(), r.extent_x, r.extent_z,
                                              r.beamwidth_x, r.beamwidth_z);
  return SceneSpec{s.freqs, sampling_grid(spec, r.range, r.center_x, r.center_z)};
}

ImageGrid display_grid(const Scenario& s) {
  const double pitch = s.display.pitch.value_or(0.25 * s.freqs.center_wavelength());
  auto count = [&](double extent) {
    return 2 * static_cast<std::size_t>(std::floor(0.5 * extent / pitch + 1e-9)) + 1;
  };
  const double ex = s.display.extent_x.value_or(s.region.extent_x);
  const double ez = s.display.extent_z.value_or(s.region.extent_z);
  return ImageGrid(RectGrid::centered(count(ex), count(ez), pitch, pitch, s.region.range, s.region.center_x,
                                      s.region.center_z));
}

namespace {

Point3 side_center(const std::vector<Element>& el) {
  Point3 lo = el.front().position;
  Point3 hi = lo;
  for (const auto& e : el) {
    lo = {std::min(lo.x, e.position.x), std::min(lo.y, e.position.y), std::min(lo.z, e.position.z)};
    hi = {std::max(hi.x, e.position.x), std::max(hi.y, e.position.y), std::max(hi.z, e.position.z)};
  }
  return {0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y), 0.5 * (lo.z + hi.z)};
}

// Unbiased integer in [0, n) by rejection, independent of the standard
// library's distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

std::vector<Element> random_side(const std::vector<Element>& full, std::size_t k, std::mt19937_64& rng) {
  if (k == 0 || k > full.size()) {
    throw Error(Errc::invalid_argument, "random baseline count must lie in [1, side size]");
  }
  std::vector<std::size_t> idx(full.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(idx[i], idx[i + bounded(rng, full.size() - i)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  std::vector<Element> out;
  for (std::size_t i : idx) {
    out.push_back({full[i].position, {1.0, 0.0}});
  }
  return out;
}

} // namespace

ArrayTopology equally_spaced_topology(const Scenario& s, const ArrayTopology& full) {
  auto side = [&](const std::optional<SideGenerator>& g, Side which) {
    if (!g) {
      return full.with_uniform_weights(which).side(which);
    }
    return generate_side(*g, side_center(full.side(which)));
  };
  return ArrayTopology(side(s.equally_spaced.tx, Side::tx), side(s.equally_spaced.rx, Side::rx));
}

ArrayTopology random_topology(const ArrayTopology& full, std::size_t n_tx, std::size_t n_rx, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto tx = random_side(full.tx(), n_tx, rng);
  auto rx = random_side(full.rx(), n_rx, rng);
  return ArrayTopology(std::move(tx), std::move(rx));
}

std::vector<PsfRow> psf_table(const Scenario& s, const std::vector<NamedTopology>& topologies) {
  const ImageGrid grid = display_grid(s);
  std::vector<PsfRow> rows;
  for (const auto& t : topologies) {
    for (const auto& p : s.psf) {
      const ImageField image = point_response({p.position, {1.0, 0.0}}, t.topology, s.freqs, grid);
      rows.push_back({t.name, p.name, p.position, psf_analyze(image, p.position)});
    }
  }
  return rows;
}

namespace {

json level(double db) { return std::isfinite(db) ? json(db) : json(nullptr); }

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

json psf_json(const PsfRow& row) {
  const PsfReport& r = row.report;
  json lobes = json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(r.sidelobes.size(), 8); ++i) {
    lobes.push_back({{"position", point_json(r.sidelobes[i].position)},
                     {"level_db", level(r.sidelobes[i].level_db)},
                     {"grating", r.sidelobes[i].grating}});
  }
  return {{"topology", row.topology},
          {"position", row.position},
          {"true_position", point_json(row.true_position)},
          {"peak_position", point_json(r.peak_position)},
          {"position_error_m", r.position_error},
          {"mainlobe_width_x_m", r.mainlobe_width_x},
          {"mainlobe_width_z_m", r.mainlobe_width_z},
          {"peak_sidelobe_level_db", level(r.peak_sidelobe_level)},
          {"grating_lobe_level_db", level(r.grating_lobe_level)},
          {"sidelobe_floor_db", level(r.sidelobe_floor)},
          {"strongest_sidelobes", lobes}};
}

std::string psf_csv(const std::vector<PsfRow>& rows) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::isfinite(v) ? std::string(buf) : std::string(v < 0 ? "-inf" : "inf");
  };
  std::string out = "topology,position,peak_x_m,peak_z_m,width_x_m,width_z_m,psl_db,grating_db\n";
  for (const auto& r : rows) {
    out += r.topology + "," + r.position + "," + num(r.report.peak_position.x) + "," +
           num(r.report.peak_position.z) + "," + num(r.report.mainlobe_width_x) + "," +
           num(r.report.mainlobe_width_z) + "," + num(r.report.peak_sidelobe_level) + "," +
           num(r.report.grating_lobe_level) + "\n";
  }
  return out;
}

json synthesis_json(const Scenario& s, const SceneSpec& scene, const ArrayTopology& full,
                    const SequentialResult& seq) {
  json steps = json::array();
  for (const auto& h : seq.steps) {
    json rw = json::array();
    for (const auto& r : h.reweighting) {
      rw.push_back({{"l1_norm", r.l1_norm},
                    {"residual", r.residual},
                    {"lambda", r.lambda},
                    {"support", r.support},
                    {"converged", r.converged}});
    }
    steps.push_back({{"round", h.round},
                     {"side", side_name(h.side)},
                     {"candidates", h.candidates},
                     {"selected", h.selected},
                     {"sampling_points", h.sampling_points},
                     {"epsilon", h.epsilon},
                     {"relative_epsilon", h.relative_epsilon},
                     {"residual", h.residual},
                     {"feasible", h.residual <= h.epsilon * (1.0 + s.synthesis.synthesis.tolerances.feasibility_slack)},
                     {"residual_with_carried_weights", h.final_residual},
                     {"l1_norm", h.l1_norm},
                     {"iterations", h.iterations},
                     {"converged", h.converged},
                     {"reweighting", rw},
                     {"warnings", h.warnings}});
  }
  const double n_full = static_cast<double>(full.n_tx() + full.n_rx());
  const double n_sparse = static_cast<double>(seq.topology.n_tx() + seq.topology.n_rx());
  return {{"scenario", s.name},
          {"sampling_grid",
           {{"m_x", scene.sampling.m_x},
            {"m_z", scene.sampling.m_z},
            {"delta_x_m", scene.sampling.delta_x},
            {"delta_z_m", scene.sampling.delta_z}}},
          {"apodization", window_name(s.synthesis.apodization)},
          {"weights", weight_mode_name(s.synthesis.weights)},
          {"order", order_name(s.synthesis.order)},
          {"rounds", s.synthesis.rounds},
          {"full", {{"tx", full.n_tx()}, {"rx", full.n_rx()}}},
          {"synthesized", {{"tx", seq.topology.n_tx()}, {"rx", seq.topology.n_rx()}}},
          {"element_reduction", 1.0 - n_sparse / n_full},
          {"steps", steps}};
}

void write_json(const std::filesystem::path& path, const json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

class Session {
public:
  Session(const Scenario& s, const RunOptions& o, std::ostream& log)
      : s_(s), opt_(o), log_(log), full_(generate_topology(s.topology)) {
    out_ = o.out.value_or(s.output_dir);
    std::filesystem::create_directories(out_);
    dr_ = o.dynamic_range_db.value_or(s.dynamic_range_db);
    if (!(dr_ > 0.0)) {
      throw Error(Errc::invalid_argument, "dynamic range must be positive");
    }
  }

  const std::filesystem::path& out() const { return out_; }

  void synthesize() {
    const SceneSpec scene = scene_spec(s_, full_);
    log_ << "synthesizing " << s_.name << ": " << scene.sampling.size() << " sampling points, "
         << full_.n_tx() << " tx / " << full_.n_rx() << " rx candidates\n";
    const SequentialResult seq = synthesize_sequential(full_, scene, s_.synthesis);
    for (const auto& h : seq.steps) {
      log_ << "  " << side_name(h.side) << ": " << h.selected << " of " << h.candidates << " selected, residual "
           << h.residual << " (eps " << h.epsilon << ")" << (h.converged ? "" : " [not converged]") << "\n";
    }
    synthesized_ = seq.topology;
    save_topology(out_ / "full_topology.csv", full_);
    save_topology(out_ / "synthesized_topology.csv", *synthesized_);
    write_json(out_ / "synthesis.json", synthesis_json(s_, scene, full_, seq));
  }

  const ArrayTopology& synthesized() {
    if (!synthesized_) {
      if (opt_.topology) {
        synthesized_ = load_topology(*opt_.topology);
      } else if (std::filesystem::exists(out_ / "synthesized_topology.csv")) {
        synthesized_ = load_topology(out_ / "synthesized_topology.csv");
        log_ << "using " << (out_ / "synthesized_topology.csv").string() << "\n";
      } else {
        synthesize();
      }
    }
    return *synthesized_;
  }

  std::vector<NamedTopology> all() {
    const ArrayTopology& syn = synthesized();
    const std::uint64_t seed = opt_.seed.value_or(s_.random.seed);
    const std::size_t n_tx = s_.random.tx.value_or(syn.n_tx());
    const std::size_t n_rx = s_.random.rx.value_or(syn.n_rx());
    return {{"full", full_.with_uniform_weights(Side::tx).with_uniform_weights(Side::rx)},
            {"synthesized", syn},
            {"equally_spaced", equally_spaced_topology(s_, full_)},
            {"random", random_topology(full_, n_tx, n_rx, seed)}};
  }

  std::vector<EvaluationScene> scenes() const {
    if (!s_.scenes.empty()) {
      return s_.scenes;
    }
    std::vector<EvaluationScene> out;
    for (const auto& p : s_.psf) {
      out.push_back({p.name, Scene{{{p.position, {1.0, 0.0}}}}});
    }
    return out;
  }

  void image() {
    const ImageGrid grid = display_grid(s_);
    const std::vector<NamedTopology> tops{{"full", full_.with_uniform_weights(Side::tx).with_uniform_weights(Side::rx)},
                                          {"synthesized", synthesized()}};
    for (const auto& sc : scenes()) {
      for (const auto& t : tops) {
        const ImageField img = image_scene(sc.scene, t.topology, s_.freqs, grid);
        const std::string stem = "image_" + sc.name + "_" + t.name;
        save_image(out_ / (stem + ".nfim"), img);
        write_file_atomic(out_ / (stem + ".csv"), format_magnitude_csv(img));
        log_ << "wrote " << stem << ".nfim\n";
      }
    }
  }

  json psf(const std::vector<NamedTopology>& tops) {
    const auto rows = psf_table(s_, tops);
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back(psf_json(r));
      log_ << "  psf " << r.topology << "/" << r.position << ": psl " << r.report.peak_sidelobe_level
           << " dB, grating " << r.report.grating_lobe_level << " dB\n";
    }
    write_file_atomic(out_ / "psf.csv", psf_csv(rows));
    return arr;
  }

  json metrics(const std::vector<NamedTopology>& tops) {
    const ImageGrid grid = display_grid(s_);
    const auto base_it = std::find_if(tops.begin(), tops.end(),
                                      [&](const NamedTopology& t) { return t.name == s_.metrics_baseline; });
    if (base_it == tops.end()) {
      throw Error(Errc::invalid_argument, "metrics baseline '" + s_.metrics_baseline + "' is not available");
    }
    json arr = json::array();
    for (const auto& sc : scenes()) {
      const ImageField base = image_scene(sc.scene, base_it->topology, s_.freqs, grid);
      const LevelMap base_levels = to_display_levels(base, dr_);
      for (const auto& t : tops) {
        if (t.name == base_it->name) {
          continue;
        }
        const ImageField img = image_scene(sc.scene, t.topology, s_.freqs, grid);
        const MetricsReport m = compare_levels(to_display_levels(img, dr_), base_levels, s_.entropy_bins);
        arr.push_back({{"scene", sc.name},
                       {"topology", t.name},
                       {"baseline", base_it->name},
                       {"rmse", m.rmse},
                       {"psnr_db", m.psnr},
                       {"ssim", m.ssim},
                       {"entropy_bits", m.entropy},
                       {"baseline_entropy_bits", level_entropy(base_levels, s_.entropy_bins)}});
        log_ << "  metrics " << sc.name << "/" << t.name << ": rmse " << m.rmse << ", psnr " << m.psnr
             << " dB, ssim " << m.ssim << "\n";
      }
    }
    return arr;
  }

  void write_topologies(const std::vector<NamedTopology>& tops) {
    for (const auto& t : tops) {
      save_topology(out_ / (t.name + "_topology.csv"), t.topology);
    }
  }

  double dynamic_range() const { return dr_; }

private:
  const Scenario& s_;
  const RunOptions& opt_;
  std::ostream& log_;
  ArrayTopology full_;
  std::optional<ArrayTopology> synthesized_;
  std::filesystem::path out_;
  double dr_ = 15.0;
};

json counts(const std::vector<NamedTopology>& tops) {
  json j = json::object();
  for (const auto& t : tops) {
    j[t.name] = {{"tx", t.topology.n_tx()}, {"rx", t.topology.n_rx()}};
  }
  return j;
}

} // namespace

int run_scenario(const Scenario& s, Command command, const RunOptions& options, std::ostream& log) {
  Session session(s, options, log);
  switch (command) {
  case Command::synthesize:
    session.synthesize();
    break;
  case Command::image:
    session.image();
    break;
  case Command::psf: {
    const auto tops = session.all();
    write_json(session.out() / "psf.json", {{"scenario", s.name}, {"reports", session.psf(tops)}});
    break;
  }
  case Command::metrics: {
    const auto tops = session.all();
    write_json(session.out() / "metrics.json", {{"scenario", s.name},
                                                {"dynamic_range_db", session.dynamic_range()},
                                                {"reports", session.metrics(tops)}});
    break;
  }
  case Command::compare: {
    const auto tops = session.all();
    session.write_topologies(tops);
    json report = {{"scenario", s.name},
                   {"dynamic_range_db", session.dynamic_range()},
                   {"element_counts", counts(tops)}};
    report["psf"] = session.psf(tops);
    report["metrics"] = session.metrics(tops);
    write_json(session.out() / "compare.json", report);
    break;
  }
  }
  return 0;
}

} // namespace nfsas
