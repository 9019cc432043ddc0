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

#include "nfsas/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nfsas/error.hpp"

namespace nfsas {

namespace {

void check_angle(double theta, const char* name) {
  if (!(theta >= 0.0 && theta <= pi)) {
    throw Error(Errc::invalid_argument, std::string("resolution: ") + name + " must lie in [0, pi]");
  }
}

double axis_resolution(double lambda_c, double theta_tx, double theta_rx) {
  const double s = std::sin(0.5 * theta_tx) + std::sin(0.5 * theta_rx);
  if (!(s > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  return lambda_c / (2.0 * s);
}

} // namespace

void ResolutionSpec::validate() const {
  check_angle(theta_x_tx, "theta_x_tx");
  check_angle(theta_x_rx, "theta_x_rx");
  check_angle(theta_z_tx, "theta_z_tx");
  check_angle(theta_z_rx, "theta_z_rx");
  if (!(lambda_c > 0.0) || !std::isfinite(lambda_c)) {
    throw Error(Errc::invalid_argument, "resolution: lambda_c must be positive");
  }
  if (!(extent_x >= 0.0) || !(extent_z >= 0.0) || !std::isfinite(extent_x) || !std::isfinite(extent_z)) {
    throw Error(Errc::invalid_argument, "resolution: region extents must be finite and non-negative");
  }
  if (extent_x > 0.0 && !(theta_x_tx + theta_x_rx > 0.0)) {
    throw Error(Errc::invalid_argument, "resolution: no aperture along x for a region with x extent");
  }
  if (extent_z > 0.0 && !(theta_z_tx + theta_z_rx > 0.0)) {
    throw Error(Errc::invalid_argument, "resolution: no aperture along z for a region with z extent");
  }
}

Resolution resolution(const ResolutionSpec& spec) {
  spec.validate();
  return {axis_resolution(spec.lambda_c, spec.theta_x_tx, spec.theta_x_rx),
          axis_resolution(spec.lambda_c, spec.theta_z_tx, spec.theta_z_rx)};
}

double subtended_angle(std::span<const Element> elements, int axis, double range, double beamwidth) {
  if (elements.empty()) {
    return 0.0;
  }
  auto coord = [axis](const Element& e) { return axis == 0 ? e.position.x : e.position.z; };
  const auto [lo, hi] = std::minmax_element(elements.begin(), elements.end(),
                                            [&](const Element& a, const Element& b) { return coord(a) < coord(b); });
  const double extent = coord(*hi) - coord(*lo);
  return std::min(2.0 * std::atan(0.5 * extent / range), beamwidth);
}

ResolutionSpec resolution_spec(const ArrayTopology& topology, double range, double lambda_c, double extent_x,
                               double extent_z, double beamwidth_x, double beamwidth_z) {
  if (!(range > 0.0)) {
    throw Error(Errc::invalid_argument, "resolution: imaging range must be positive");
  }
  ResolutionSpec spec;
  spec.theta_x_tx = subtended_angle(topology.tx(), 0, range, beamwidth_x);
  spec.theta_x_rx = subtended_angle(topology.rx(), 0, range, beamwidth_x);
  spec.theta_z_tx = subtended_angle(topology.tx(), 2, range, beamwidth_z);
  spec.theta_z_rx = subtended_angle(topology.rx(), 2, range, beamwidth_z);
  spec.lambda_c = lambda_c;
  spec.extent_x = extent_x;
  spec.extent_z = extent_z;
  spec.validate();
  return spec;
}

std::size_t sample_count(double extent, double delta) {
  if (!(extent > 0.0)) {
    return 1;
  }
  const double ratio = extent / delta;
  // Snap ratios within a few ulp of an integer so D = n * delta counts n.
  const double nearest = std::round(ratio);
  const double q = std::abs(ratio - nearest) <= 8.0 * std::numeric_limits<double>::epsilon() * nearest
                       ? nearest
                       : std::floor(ratio);
  return static_cast<std::size_t>(q) + 1;
}

SamplingGrid sampling_grid(const ResolutionSpec& spec, double range, double center_x, double center_z) {
  const Resolution res = resolution(spec);
  if (!(range > 0.0)) {
    throw Error(Errc::invalid_argument, "sampling grid: range must be positive");
  }
  SamplingGrid sg;
  sg.delta_x = res.dx;
  sg.delta_z = res.dz;
  sg.m_x = sample_count(spec.extent_x, res.dx);
  sg.m_z = sample_count(spec.extent_z, res.dz);
  const double pitch_x = sg.m_x > 1 ? spec.extent_x / static_cast<double>(sg.m_x - 1)
                                    : (std::isfinite(res.dx) ? res.dx : 1.0);
  const double pitch_z = sg.m_z > 1 ? spec.extent_z / static_cast<double>(sg.m_z - 1)
                                    : (std::isfinite(res.dz) ? res.dz : 1.0);
  sg.rect = RectGrid::centered(sg.m_x, sg.m_z, pitch_x, pitch_z, range, center_x, center_z);
  return sg;
}

} // namespace nfsas
