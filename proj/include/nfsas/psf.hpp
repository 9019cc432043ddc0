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

#include <limits>
#include <span>
#include <vector>

#include "nfsas/image.hpp"

namespace nfsas {

/// Level reported when no lobe exists outside the mainlobe.
inline constexpr double no_lobe_db = -std::numeric_limits<double>::infinity();

struct Lobe {
  Point3 position;
  double level_db = no_lobe_db; // relative to the mainlobe peak
  bool grating = false;
};

/// Point-spread-function measurements of an image normalized to its peak.
///
/// Mainlobe: the 4-connected -3 dB region around the peak, joined with the
/// box bounded by the first local minimum on each side of the peak along x
/// and along z. Sidelobes are the local maxima (8-neighborhood) outside that
/// region. A sidelobe counts as a grating lobe when it stands at least
/// `grating_floor_margin_db` above the median level outside the mainlobe and
/// lies at least `grating_distance_widths` mainlobe widths from the peak.
struct PsfReport {
  Point3 peak_position;
  double position_error = 0.0;   // |peak - true position|, m
  double mainlobe_width_x = 0.0; // -3 dB two-sided, m (0 on a single-column lattice)
  double mainlobe_width_z = 0.0; // -3 dB two-sided, m (0 on a single-row lattice)
  double peak_sidelobe_level = no_lobe_db;
  double grating_lobe_level = no_lobe_db;
  double sidelobe_floor = no_lobe_db; // median level outside the mainlobe, dB
  std::vector<Lobe> sidelobes;        // strongest first
};

inline constexpr double grating_floor_margin_db = 10.0;
inline constexpr double grating_distance_widths = 3.0;

/// Throws Errc::flat_image for an all-zero image and Errc::invalid_argument
/// when the grid has no rectangular metadata.
PsfReport psf_analyze(const ImageField& image, const Point3& true_position);

/// Per-pixel maximum magnitude over range slices sharing one lattice shape.
/// The result lives on the first slice's grid. Throws Errc::empty_input for
/// an empty list and Errc::dimension_mismatch for differing shapes.
ImageField project_max_range(std::span<const ImageField> slices);

} // namespace nfsas
