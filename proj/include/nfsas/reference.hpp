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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "nfsas/forward.hpp"
#include "nfsas/geometry.hpp"
#include "nfsas/image.hpp"
#include "nfsas/resolution.hpp"

namespace nfsas {

enum class Window { uniform, hamming, hann };

std::string_view window_name(Window w) noexcept;
/// Throws Errc::invalid_argument for an unknown name.
Window parse_window(std::string_view name);

/// Window value at normalized aperture coordinate u in [0, 1].
double window_value(Window w, double u) noexcept;

/// Multiplies each element weight by a separable aperture taper. The taper
/// is applied along x and z independently, and only along axes on which the
/// elements take more than two distinct coordinates.
std::vector<Element> apodize(std::span<const Element> elements, Window w);

struct ApodizedSides {
  bool tx = true;
  bool rx = true;
};

/// Target image of the synthesis program: the referenced (dense, apodized)
/// array imaging unit point targets placed at every sampling pixel.
struct ReferencePattern {
  SamplingGrid sampling;
  ImageGrid grid;
  Eigen::VectorXcd values;   // E_ref, one entry per sampling pixel
  ArrayTopology referenced;  // reference weights applied
  Window apodization = Window::uniform;
  Scene scene;               // reference scatterers, pixel order
  ScatteredField field;      // field of `scene` at `referenced`
  std::vector<std::string> warnings;

  double squared_norm() const { return values.squaredNorm(); }
};

/// Unit scatterers at every pixel of `grid`, in pixel order.
Scene reference_scene(const ImageGrid& grid);

ReferencePattern reference_pattern(const ArrayTopology& referenced, Window apodization,
                                   const SamplingGrid& sampling, const FrequencyGrid& freqs,
                                   ApodizedSides sides = {});

} // namespace nfsas
