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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nfsas/metrics.hpp"
#include "nfsas/psf.hpp"
#include "nfsas/scenario.hpp"
#include "nfsas/sequential.hpp"

namespace nfsas {

enum class Command { synthesize, image, psf, metrics, compare };

std::string_view command_name(Command c) noexcept;
Command parse_command(std::string_view name);

struct RunOptions {
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> dynamic_range_db;
  std::optional<std::filesystem::path> topology; // synthesized topology to use instead of synthesizing
};

/// Frequency grid plus the synthesis sampling grid for the scenario's region,
/// sized from the apertures of `full`.
SceneSpec scene_spec(const Scenario& s, const ArrayTopology& full);
ImageGrid display_grid(const Scenario& s);

ArrayTopology equally_spaced_topology(const Scenario& s, const ArrayTopology& full);
/// Uniformly random subsets of each side of `full` (unit weights), sorted by
/// candidate index. A count equal to the side size keeps the whole side.
ArrayTopology random_topology(const ArrayTopology& full, std::size_t n_tx, std::size_t n_rx, std::uint64_t seed);

struct NamedTopology {
  std::string name;
  ArrayTopology topology;
};

struct PsfRow {
  std::string topology;
  std::string position;
  Point3 true_position;
  PsfReport report;
};

std::vector<PsfRow> psf_table(const Scenario& s, const std::vector<NamedTopology>& topologies);

/// Runs `command`, writing artifacts under the output directory; progress
/// lines go to `log`. Returns the process exit code. Errors propagate as
/// nfsas::Error.
int run_scenario(const Scenario& s, Command command, const RunOptions& options, std::ostream& log);

/// Thread count from the NFSAS_THREADS environment variable, if set.
void apply_thread_setting();

} // namespace nfsas
