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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nfsas/geometry.hpp"
#include "nfsas/image.hpp"
#include "nfsas/reference.hpp"
#include "nfsas/sequential.hpp"

namespace nfsas {

/// Element layout for one side of the array.
struct SideGenerator {
  enum class Kind { uniform_linear, uniform_planar, corners };
  Kind kind = Kind::uniform_linear;
  std::size_t count = 0;    // uniform_linear
  double pitch = 0.0;       // uniform_linear, m
  char axis = 'x';          // uniform_linear: 'x' or 'z'
  std::size_t count_x = 0;  // uniform_planar
  std::size_t count_z = 0;
  double pitch_x = 0.0;     // uniform_planar, m
  double pitch_z = 0.0;
  double size_x = 0.0;      // corners: rectangle side lengths, m
  double size_z = 0.0;
  std::optional<Point3> center; // default: origin, or the full side's centre for baselines
};

/// Elements of `gen`, centred on gen.center or `fallback_center`, unit weights.
std::vector<Element> generate_side(const SideGenerator& gen, const Point3& fallback_center = {});

struct TShape {
  std::size_t count = 101;
  double pitch = 0.005;
  std::optional<double> bar_z; // z of the horizontal tx bar; default centres the rx stem on z = 0
  // rx stem: x = 0, z = bar_z - pitch * (k + 1)
};

struct TopologySpec {
  enum class Kind { sides, t_shaped, file };
  Kind kind = Kind::sides;
  SideGenerator tx;
  SideGenerator rx;
  TShape t_shape;
  std::filesystem::path file;
};

ArrayTopology generate_topology(const TopologySpec& spec);

struct RegionSpec {
  double extent_x = 0.0; // D_x, m
  double extent_z = 0.0; // D_z, m
  double range = 1.0;    // R0, m
  double center_x = 0.0;
  double center_z = 0.0;
  double beamwidth_x = pi; // rad
  double beamwidth_z = pi;
};

struct DisplaySpec {
  std::optional<double> pitch; // default lambda_c / 4
  std::optional<double> extent_x;
  std::optional<double> extent_z;
};

struct NamedPoint {
  std::string name;
  Point3 position;
};

struct EvaluationScene {
  std::string name;
  Scene scene;
};

struct BaselineSpec {
  std::optional<SideGenerator> tx; // unset: the full side
  std::optional<SideGenerator> rx;
};

struct RandomSpec {
  std::uint64_t seed = 1;
  std::optional<std::size_t> tx; // unset: count of the synthesized side
  std::optional<std::size_t> rx;
};

struct Scenario {
  std::string name;
  FrequencyGrid freqs{1.0, 2.0, 2};
  TopologySpec topology;
  RegionSpec region;
  SequentialConfig synthesis;
  BaselineSpec equally_spaced;
  RandomSpec random;
  std::vector<NamedPoint> psf;
  std::vector<EvaluationScene> scenes;
  DisplaySpec display;
  double dynamic_range_db = 15.0;
  std::size_t entropy_bins = 256;
  std::string metrics_baseline = "full";
  std::filesystem::path output_dir = "out";
  std::filesystem::path base_dir; // directory of the scenario file
};

/// Throws Errc::parse_error (malformed text) or Errc::validation_error
/// (schema); messages carry "source:line:" and the error carries the field path.
Scenario parse_scenario(const std::string& text, const std::string& source = "<memory>",
                        const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

} // namespace nfsas
