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

#include "nfsas/geometry.hpp"
#include "nfsas/image.hpp"

namespace nfsas {

/// Inputs of the cross-range resolution formulas. Each angle is the smaller
/// of the angle subtended by that side's aperture and the element
/// beamwidth. A side with no extent along an axis contributes a zero angle;
/// an axis with a nonzero region extent needs a positive angle sum.
struct ResolutionSpec {
  double theta_x_tx = 0.0; // rad
  double theta_x_rx = 0.0;
  double theta_z_tx = 0.0;
  double theta_z_rx = 0.0;
  double lambda_c = 0.0;  // m
  double extent_x = 0.0;  // D_x, m
  double extent_z = 0.0;  // D_z, m

  /// Throws Errc::invalid_argument on violated invariants.
  void validate() const;
};

struct Resolution {
  double dx = 0.0; // m; +inf on an axis with zero angle sum
  double dz = 0.0;
};

/// delta = lambda_c / (2 (sin(theta_T / 2) + sin(theta_R / 2))) per axis.
Resolution resolution(const ResolutionSpec& spec);

/// Angle subtended at range `range` by the extent of `elements` along x
/// (axis 0) or z (axis 2), clamped to `beamwidth`.
double subtended_angle(std::span<const Element> elements, int axis, double range,
                       double beamwidth = pi);

/// Builds a spec from a topology's apertures.
ResolutionSpec resolution_spec(const ArrayTopology& topology, double range, double lambda_c, double extent_x,
                               double extent_z, double beamwidth_x = pi, double beamwidth_z = pi);

/// Minimal sampling lattice of the imaging region: M = floor(D / delta) + 1
/// points per axis, spanning the region [-D/2, D/2] uniformly (a single
/// centered point when D = 0).
struct SamplingGrid {
  std::size_t m_x = 1;
  std::size_t m_z = 1;
  double delta_x = 0.0;
  double delta_z = 0.0;
  RectGrid rect;

  std::size_t size() const noexcept { return m_x * m_z; }
  ImageGrid grid() const { return ImageGrid(rect); }
};

SamplingGrid sampling_grid(const ResolutionSpec& spec, double range, double center_x = 0.0, double center_z = 0.0);

/// floor(extent / delta) + 1, robust to extent being an exact multiple of delta.
std::size_t sample_count(double extent, double delta);

} // namespace nfsas
