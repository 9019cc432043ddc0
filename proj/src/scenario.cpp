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

#include "nfsas/scenario.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "nfsas/error.hpp"
#include "nfsas/io.hpp"

namespace nfsas {

std::vector<Element> generate_side(const SideGenerator& gen, const Point3& fallback_center) {
  const Point3 c = gen.center.value_or(fallback_center);
  std::vector<Element> out;
  auto add = [&](double dx, double dz) {
    const Point3 p{c.x + dx, c.y, c.z + dz};
    for (const auto& e : out) {
      if (distance(e.position, p) <= ArrayTopology::duplicate_tolerance) {
        return;
      }
    }
    out.push_back({p, {1.0, 0.0}});
  };
  switch (gen.kind) {
  case SideGenerator::Kind::uniform_linear:
    for (std::size_t i = 0; i < gen.count; ++i) {
      const double off = (static_cast<double>(i) - 0.5 * static_cast<double>(gen.count - 1)) * gen.pitch;
      gen.axis == 'z' ? add(0.0, off) : add(off, 0.0);
    }
    break;
  case SideGenerator::Kind::uniform_planar:
    for (std::size_t iz = 0; iz < gen.count_z; ++iz) {
      for (std::size_t ix = 0; ix < gen.count_x; ++ix) {
        add((static_cast<double>(ix) - 0.5 * static_cast<double>(gen.count_x - 1)) * gen.pitch_x,
            (static_cast<double>(iz) - 0.5 * static_cast<double>(gen.count_z - 1)) * gen.pitch_z);
      }
    }
    break;
  case SideGenerator::Kind::corners:
    for (double sz : {-0.5, 0.5}) {
      for (double sx : {-0.5, 0.5}) {
        add(sx * gen.size_x, sz * gen.size_z);
      }
    }
    break;
  }
  return out;
}

ArrayTopology generate_topology(const TopologySpec& spec) {
  switch (spec.kind) {
  case TopologySpec::Kind::file:
    return load_topology(spec.file);
  case TopologySpec::Kind::t_shaped: {
    const TShape& t = spec.t_shape;
    const double bar = t.bar_z.value_or(0.5 * t.pitch * static_cast<double>(t.count + 1));
    SideGenerator tx;
    tx.count = t.count;
    tx.pitch = t.pitch;
    tx.axis = 'x';
    tx.center = Point3{0.0, 0.0, bar};
    std::vector<Element> rx;
    for (std::size_t k = 0; k < t.count; ++k) {
      rx.push_back({{0.0, 0.0, bar - t.pitch * static_cast<double>(k + 1)}, {1.0, 0.0}});
    }
    return ArrayTopology(generate_side(tx), std::move(rx));
  }
  case TopologySpec::Kind::sides:
    break;
  }
  return ArrayTopology(generate_side(spec.tx), generate_side(spec.rx));
}

namespace {

// Schema walker over a yaml-cpp tree; every error names the source line and
// the dotted field path.
class Reader {
public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& path, const std::string& what) const {
    std::ostringstream msg;
    msg << source_;
    if (at.IsDefined() && at.Mark().line >= 0) {
      msg << ":" << at.Mark().line + 1;
    }
    msg << ": " << (path.empty() ? std::string() : path + ": ") << what;
    throw Error(Errc::validation_error, msg.str(), path);
  }

  void require_map(const YAML::Node& n, const std::string& path) const {
    if (!n.IsMap()) {
      fail(n, path, "expected a mapping");
    }
  }

  void allow(const YAML::Node& n, const std::string& path, std::initializer_list<const char*> keys) const {
    require_map(n, path);
    const std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& kv : n) {
      const auto key = kv.first.as<std::string>();
      if (!ok.count(key)) {
        fail(kv.first, join(path, key), "unknown key");
      }
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  template <class T>
  T as(const YAML::Node& n, const std::string& path) const {
    if (!n.IsScalar()) {
      fail(n, path, "expected a scalar");
    }
    try {
      return n.as<T>();
    } catch (const YAML::BadConversion&) {
      fail(n, path, "cannot convert '" + n.Scalar() + "'");
    }
  }

  template <class T>
  std::optional<T> opt(const YAML::Node& parent, const std::string& path, const char* key) const {
    const YAML::Node n = parent[key];
    if (!n.IsDefined() || n.IsNull()) {
      return std::nullopt;
    }
    return as<T>(n, join(path, key));
  }

  template <class T>
  T req(const YAML::Node& parent, const std::string& path, const char* key) const {
    const YAML::Node n = parent[key];
    if (!n.IsDefined() || n.IsNull()) {
      fail(parent, join(path, key), "required field missing");
    }
    return as<T>(n, join(path, key));
  }

  double positive(const YAML::Node& parent, const std::string& path, const char* key) const {
    const double v = req<double>(parent, path, key);
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(parent[key], join(path, key), "must be positive");
    }
    return v;
  }

  Point3 point(const YAML::Node& n, const std::string& path) const {
    if (!n.IsSequence() || n.size() != 3) {
      fail(n, path, "expected [x, y, z]");
    }
    Point3 p{as<double>(n[0], path), as<double>(n[1], path), as<double>(n[2], path)};
    if (!is_finite(p)) {
      fail(n, path, "coordinates must be finite");
    }
    return p;
  }

  const std::string& source() const noexcept { return source_; }

private:
  std::string source_;
};

SideGenerator side_generator(const Reader& r, const YAML::Node& n, const std::string& path) {
  r.require_map(n, path);
  SideGenerator g;
  const auto kind = r.req<std::string>(n, path, "generator");
  if (kind == "uniform_linear") {
    r.allow(n, path, {"generator", "count", "pitch_m", "axis", "center"});
    g.kind = SideGenerator::Kind::uniform_linear;
    g.count = r.req<std::size_t>(n, path, "count");
    if (g.count == 0) {
      r.fail(n["count"], Reader::join(path, "count"), "must be at least 1");
    }
    g.pitch = g.count > 1 ? r.positive(n, path, "pitch_m") : r.opt<double>(n, path, "pitch_m").value_or(0.0);
    const auto axis = r.opt<std::string>(n, path, "axis").value_or("x");
    if (axis != "x" && axis != "z") {
      r.fail(n["axis"], Reader::join(path, "axis"), "must be 'x' or 'z'");
    }
    g.axis = axis[0];
  } else if (kind == "uniform_planar") {
    r.allow(n, path, {"generator", "count_x", "count_z", "pitch_x_m", "pitch_z_m", "center"});
    g.kind = SideGenerator::Kind::uniform_planar;
    g.count_x = r.req<std::size_t>(n, path, "count_x");
    g.count_z = r.req<std::size_t>(n, path, "count_z");
    if (g.count_x == 0 || g.count_z == 0) {
      r.fail(n, path, "counts must be at least 1");
    }
    g.pitch_x = g.count_x > 1 ? r.positive(n, path, "pitch_x_m") : 0.0;
    g.pitch_z = g.count_z > 1 ? r.positive(n, path, "pitch_z_m") : 0.0;
  } else if (kind == "corners") {
    r.allow(n, path, {"generator", "size_x_m", "size_z_m", "center"});
    g.kind = SideGenerator::Kind::corners;
    g.size_x = r.opt<double>(n, path, "size_x_m").value_or(0.0);
    g.size_z = r.opt<double>(n, path, "size_z_m").value_or(0.0);
    if (g.size_x < 0.0 || g.size_z < 0.0 || !std::isfinite(g.size_x) || !std::isfinite(g.size_z)) {
      r.fail(n, path, "sizes must be finite and non-negative");
    }
  } else {
    r.fail(n["generator"], Reader::join(path, "generator"),
           "unknown generator '" + kind + "' (uniform_linear, uniform_planar, corners)");
  }
  if (n["center"].IsDefined()) {
    g.center = r.point(n["center"], Reader::join(path, "center"));
  }
  return g;
}

TopologySpec topology_spec(const Reader& r, const YAML::Node& n, const std::filesystem::path& base) {
  const std::string path = "topology";
  r.require_map(n, path);
  TopologySpec spec;
  if (n["file"].IsDefined()) {
    r.allow(n, path, {"file"});
    spec.kind = TopologySpec::Kind::file;
    spec.file = base / r.req<std::string>(n, path, "file");
    if (!std::filesystem::exists(spec.file)) {
      r.fail(n["file"], path + ".file", "file '" + spec.file.string() + "' does not exist");
    }
  } else if (n["generator"].IsDefined()) {
    r.allow(n, path, {"generator", "count", "pitch_m", "bar_z_m"});
    const auto kind = r.req<std::string>(n, path, "generator");
    if (kind != "t_shaped") {
      r.fail(n["generator"], path + ".generator", "unknown topology generator '" + kind + "' (t_shaped)");
    }
    spec.kind = TopologySpec::Kind::t_shaped;
    spec.t_shape.count = r.req<std::size_t>(n, path, "count");
    if (spec.t_shape.count == 0) {
      r.fail(n["count"], path + ".count", "must be at least 1");
    }
    spec.t_shape.pitch = r.positive(n, path, "pitch_m");
    spec.t_shape.bar_z = r.opt<double>(n, path, "bar_z_m");
  } else {
    r.allow(n, path, {"tx", "rx"});
    spec.kind = TopologySpec::Kind::sides;
    if (!n["tx"].IsDefined() || !n["rx"].IsDefined()) {
      r.fail(n, path, "needs 'tx' and 'rx' generators, a 'generator', or a 'file'");
    }
    spec.tx = side_generator(r, n["tx"], path + ".tx");
    spec.rx = side_generator(r, n["rx"], path + ".rx");
  }
  return spec;
}

SideSpec side_spec(const Reader& r, const YAML::Node& n, const std::string& path) {
  SideSpec s;
  if (!n.IsDefined() || n.IsNull()) {
    return s;
  }
  r.allow(n, path, {"enabled", "top_n"});
  s.enabled = r.opt<bool>(n, path, "enabled").value_or(true);
  s.top_n = r.opt<std::size_t>(n, path, "top_n");
  if (s.top_n && *s.top_n == 0) {
    r.fail(n["top_n"], path + ".top_n", "must be at least 1");
  }
  return s;
}

void synthesis_block(const Reader& r, const YAML::Node& n, SequentialConfig& cfg) {
  const std::string path = "synthesis";
  if (!n.IsDefined() || n.IsNull()) {
    return;
  }
  r.allow(n, path,
          {"epsilon", "relative_epsilon", "reweight_iterations", "reweight_delta", "threshold", "order", "rounds",
           "tx", "rx", "weights", "budget_search", "budget_eta_min", "budget_eta_max", "budget_steps", "tolerances"});
  auto& sc = cfg.synthesis;
  sc.epsilon = r.opt<double>(n, path, "epsilon");
  sc.relative_epsilon = r.opt<double>(n, path, "relative_epsilon").value_or(sc.relative_epsilon);
  sc.reweight_iterations = r.opt<std::size_t>(n, path, "reweight_iterations").value_or(sc.reweight_iterations);
  sc.reweight_delta = r.opt<double>(n, path, "reweight_delta");
  sc.selection.threshold = r.opt<double>(n, path, "threshold").value_or(sc.selection.threshold);
  try {
    sc.validate();
  } catch (const Error& e) {
    r.fail(n, path, e.what());
  }
  if (const auto o = r.opt<std::string>(n, path, "order")) {
    try {
      cfg.order = parse_order(*o);
    } catch (const Error& e) {
      r.fail(n["order"], path + ".order", e.what());
    }
  }
  cfg.rounds = r.opt<std::size_t>(n, path, "rounds").value_or(cfg.rounds);
  if (cfg.rounds == 0) {
    r.fail(n["rounds"], path + ".rounds", "must be at least 1");
  }
  cfg.tx = side_spec(r, n["tx"], path + ".tx");
  cfg.rx = side_spec(r, n["rx"], path + ".rx");
  if (const auto w = r.opt<std::string>(n, path, "weights")) {
    try {
      cfg.weights = parse_weight_mode(*w);
    } catch (const Error& e) {
      r.fail(n["weights"], path + ".weights", e.what());
    }
  }
  cfg.budget_search = r.opt<bool>(n, path, "budget_search").value_or(cfg.budget_search);
  cfg.budget_eta_min = r.opt<double>(n, path, "budget_eta_min").value_or(cfg.budget_eta_min);
  cfg.budget_eta_max = r.opt<double>(n, path, "budget_eta_max").value_or(cfg.budget_eta_max);
  cfg.budget_steps = r.opt<std::size_t>(n, path, "budget_steps").value_or(cfg.budget_steps);
  if (!(cfg.budget_eta_max > 0.0 && cfg.budget_eta_max < 1.0)) {
    r.fail(n["budget_eta_max"], path + ".budget_eta_max", "must lie in (0, 1)");
  }
  if (!(cfg.budget_eta_min > 0.0 && cfg.budget_eta_min < cfg.budget_eta_max)) {
    r.fail(n["budget_eta_min"], path + ".budget_eta_min", "must lie in (0, budget_eta_max)");
  }

  const YAML::Node t = n["tolerances"];
  if (t.IsDefined() && !t.IsNull()) {
    const std::string tp = path + ".tolerances";
    r.allow(t, tp, {"feasibility_slack", "primal", "dual", "max_iterations", "max_sweeps"});
    auto& tol = sc.tolerances;
    tol.feasibility_slack = r.opt<double>(t, tp, "feasibility_slack").value_or(tol.feasibility_slack);
    tol.primal = r.opt<double>(t, tp, "primal").value_or(tol.primal);
    tol.dual = r.opt<double>(t, tp, "dual").value_or(tol.dual);
    tol.max_iterations = r.opt<std::size_t>(t, tp, "max_iterations").value_or(tol.max_iterations);
    tol.max_sweeps = r.opt<std::size_t>(t, tp, "max_sweeps").value_or(tol.max_sweeps);
  }
}

Scene scene_of(const Reader& r, const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence()) {
    r.fail(n, path, "expected a list of scatterers");
  }
  Scene s;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const YAML::Node q = n[i];
    r.allow(q, p, {"position", "reflectivity"});
    Scatterer sc;
    sc.position = r.point(q["position"], p + ".position");
    const YAML::Node refl = q["reflectivity"];
    if (refl.IsDefined()) {
      if (refl.IsSequence() && refl.size() == 2) {
        sc.reflectivity = {r.as<double>(refl[0], p + ".reflectivity"), r.as<double>(refl[1], p + ".reflectivity")};
      } else {
        sc.reflectivity = r.as<double>(refl, p + ".reflectivity");
      }
    }
    s.scatterers.push_back(sc);
  }
  return s;
}

Scenario build(const Reader& r, const YAML::Node& root, const std::filesystem::path& base) {
  if (!root.IsDefined() || root.IsNull()) {
    throw Error(Errc::validation_error, r.source() + ": empty scenario; required fields: frequency, topology, region");
  }
  r.allow(root, "",
          {"name", "frequency", "topology", "region", "reference", "synthesis", "baselines", "psf", "scenes",
           "display", "metrics", "output"});
  std::vector<std::string> missing;
  for (const char* key : {"frequency", "topology", "region"}) {
    if (!root[key].IsDefined() || root[key].IsNull()) {
      missing.emplace_back(key);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) {
      list += (list.empty() ? "" : ", ") + m;
    }
    r.fail(root, missing.front(), "missing required fields: " + list);
  }

  Scenario s;
  s.base_dir = base;
  s.name = r.opt<std::string>(root, "", "name").value_or("scenario");

  {
    const YAML::Node f = root["frequency"];
    r.allow(f, "frequency", {"start_hz", "stop_hz", "steps"});
    const double start = r.req<double>(f, "frequency", "start_hz");
    const double stop = r.req<double>(f, "frequency", "stop_hz");
    const auto steps = r.req<std::size_t>(f, "frequency", "steps");
    try {
      s.freqs = FrequencyGrid(start, stop, steps);
    } catch (const Error& e) {
      r.fail(f, "frequency", e.what());
    }
  }

  s.topology = topology_spec(r, root["topology"], base);

  {
    const YAML::Node g = root["region"];
    const std::string p = "region";
    r.allow(g, p, {"extent_x_m", "extent_z_m", "range_m", "center_x_m", "center_z_m", "beamwidth_x_deg",
                   "beamwidth_z_deg"});
    s.region.extent_x = r.opt<double>(g, p, "extent_x_m").value_or(0.0);
    s.region.extent_z = r.opt<double>(g, p, "extent_z_m").value_or(0.0);
    s.region.range = r.positive(g, p, "range_m");
    s.region.center_x = r.opt<double>(g, p, "center_x_m").value_or(0.0);
    s.region.center_z = r.opt<double>(g, p, "center_z_m").value_or(0.0);
    s.region.beamwidth_x = r.opt<double>(g, p, "beamwidth_x_deg").value_or(180.0) * pi / 180.0;
    s.region.beamwidth_z = r.opt<double>(g, p, "beamwidth_z_deg").value_or(180.0) * pi / 180.0;
    if (s.region.extent_x < 0.0 || s.region.extent_z < 0.0) {
      r.fail(g, p, "extents must be non-negative");
    }
    if (s.region.extent_x == 0.0 && s.region.extent_z == 0.0) {
      r.fail(g, p, "at least one of extent_x_m, extent_z_m must be positive");
    }
    if (!(s.region.beamwidth_x > 0.0 && s.region.beamwidth_x <= pi && s.region.beamwidth_z > 0.0 &&
          s.region.beamwidth_z <= pi)) {
      r.fail(g, p, "beamwidths must lie in (0, 180] degrees");
    }
  }

  if (const YAML::Node ref = root["reference"]; ref.IsDefined() && !ref.IsNull()) {
    r.allow(ref, "reference", {"apodization"});
    if (const auto w = r.opt<std::string>(ref, "reference", "apodization")) {
      try {
        s.synthesis.apodization = parse_window(*w);
      } catch (const Error& e) {
        r.fail(ref["apodization"], "reference.apodization", e.what());
      }
    }
  }

  synthesis_block(r, root["synthesis"], s.synthesis);

  if (const YAML::Node b = root["baselines"]; b.IsDefined() && !b.IsNull()) {
    r.allow(b, "baselines", {"equally_spaced", "random"});
    if (const YAML::Node e = b["equally_spaced"]; e.IsDefined() && !e.IsNull()) {
      r.allow(e, "baselines.equally_spaced", {"tx", "rx"});
      if (e["tx"].IsDefined()) {
        s.equally_spaced.tx = side_generator(r, e["tx"], "baselines.equally_spaced.tx");
      }
      if (e["rx"].IsDefined()) {
        s.equally_spaced.rx = side_generator(r, e["rx"], "baselines.equally_spaced.rx");
      }
    }
    if (const YAML::Node q = b["random"]; q.IsDefined() && !q.IsNull()) {
      const std::string p = "baselines.random";
      r.allow(q, p, {"seed", "tx", "rx"});
      s.random.seed = r.opt<std::uint64_t>(q, p, "seed").value_or(s.random.seed);
      s.random.tx = r.opt<std::size_t>(q, p, "tx");
      s.random.rx = r.opt<std::size_t>(q, p, "rx");
    }
  }

  if (const YAML::Node p = root["psf"]; p.IsDefined() && !p.IsNull()) {
    if (!p.IsSequence()) {
      r.fail(p, "psf", "expected a list of {name, position}");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string path = "psf[" + std::to_string(i) + "]";
      r.allow(p[i], path, {"name", "position"});
      s.psf.push_back({r.req<std::string>(p[i], path, "name"), r.point(p[i]["position"], path + ".position")});
    }
  }

  if (const YAML::Node sc = root["scenes"]; sc.IsDefined() && !sc.IsNull()) {
    if (!sc.IsSequence()) {
      r.fail(sc, "scenes", "expected a list of {name, scatterers}");
    }
    for (std::size_t i = 0; i < sc.size(); ++i) {
      const std::string path = "scenes[" + std::to_string(i) + "]";
      r.allow(sc[i], path, {"name", "scatterers"});
      s.scenes.push_back({r.req<std::string>(sc[i], path, "name"), scene_of(r, sc[i]["scatterers"], path + ".scatterers")});
    }
  }

  if (const YAML::Node d = root["display"]; d.IsDefined() && !d.IsNull()) {
    r.allow(d, "display", {"pitch_m", "extent_x_m", "extent_z_m"});
    s.display.pitch = r.opt<double>(d, "display", "pitch_m");
    s.display.extent_x = r.opt<double>(d, "display", "extent_x_m");
    s.display.extent_z = r.opt<double>(d, "display", "extent_z_m");
    if (s.display.pitch && !(*s.display.pitch > 0.0)) {
      r.fail(d["pitch_m"], "display.pitch_m", "must be positive");
    }
  }

  if (const YAML::Node m = root["metrics"]; m.IsDefined() && !m.IsNull()) {
    r.allow(m, "metrics", {"dynamic_range_db", "bins", "baseline"});
    s.dynamic_range_db = r.opt<double>(m, "metrics", "dynamic_range_db").value_or(s.dynamic_range_db);
    s.entropy_bins = r.opt<std::size_t>(m, "metrics", "bins").value_or(s.entropy_bins);
    s.metrics_baseline = r.opt<std::string>(m, "metrics", "baseline").value_or(s.metrics_baseline);
    if (!(s.dynamic_range_db > 0.0)) {
      r.fail(m["dynamic_range_db"], "metrics.dynamic_range_db", "must be positive");
    }
    if (s.entropy_bins < 2) {
      r.fail(m["bins"], "metrics.bins", "must be at least 2");
    }
    static const std::set<std::string> names{"full", "synthesized", "equally_spaced", "random"};
    if (!names.count(s.metrics_baseline)) {
      r.fail(m["baseline"], "metrics.baseline", "must name full, synthesized, equally_spaced or random");
    }
  }

  if (const auto out = r.opt<std::string>(root, "", "output")) {
    s.output_dir = *out;
  }

  // generated topologies must satisfy the topology invariants
  try {
    (void)generate_topology(s.topology);
  } catch (const Error& e) {
    r.fail(root["topology"], "topology", e.what());
  }
  return s;
}

} // namespace

Scenario parse_scenario(const std::string& text, const std::string& source, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream msg;
    msg << source << ":" << e.mark.line + 1 << ": " << e.msg;
    throw Error(Errc::parse_error, msg.str());
  }
  return build(Reader(source), root, base_dir);
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.string(), path.parent_path());
}

} // namespace nfsas
