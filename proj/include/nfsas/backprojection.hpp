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

#include <vector>

#include <Eigen/Dense>

#include "nfsas/forward.hpp"
#include "nfsas/geometry.hpp"
#include "nfsas/image.hpp"

namespace nfsas {

/// Weighted delay-and-sum image of a multistatic field:
///
///   E(m) = sum_k sum_t w_t 4pi|p_m - T_t| e^{+jk|p_m - T_t|}
///               sum_r w_r 4pi|p_m - R_r| e^{+jk|p_m - R_r|} s(k, t, r)
///
/// Throws Errc::dimension_mismatch if the field shape does not match the
/// topology.
ImageField bp_image(const ScatteredField& field, const ArrayTopology& topology, const ImageGrid& grid);

/// Linear map from the weights of one side's elements (the candidates) to
/// image samples, with the other side's weights held fixed. For any weight
/// vector w on the optimized side, entries * w equals bp_image of the
/// topology carrying w on that side.
struct SensingMatrix {
  Eigen::MatrixXcd entries; // pixels x candidates
  ImageGrid grid;
  Side optimized = Side::rx;
  std::vector<Point3> candidates;

  Eigen::Index rows() const noexcept { return entries.rows(); }
  Eigen::Index cols() const noexcept { return entries.cols(); }
};

/// Assembles B = sum_k sum_fixed Phi_fixed Phi_optimized S_k. The weights of
/// `optimized` in `topology` are ignored; the other side's weights are used.
SensingMatrix build_sensing_matrix(const ScatteredField& field, Side optimized, const ArrayTopology& topology,
                                   const ImageGrid& grid);

/// Image of a single point scatterer, evaluated in factorized form
/// (O(K (N_tx + N_rx)) per pixel instead of O(K N_tx N_rx)). Equals
/// bp_image(forward_scatter({scatterer}, ...), ...) to rounding.
ImageField point_response(const Scatterer& scatterer, const ArrayTopology& topology, const FrequencyGrid& freqs,
                          const ImageGrid& grid);

/// Image of a point-scatterer scene. Sums point responses when that is
/// cheaper than simulating the full multistatic field, else falls back to
/// forward_scatter + bp_image.
ImageField image_scene(const Scene& scene, const ArrayTopology& topology, const FrequencyGrid& freqs,
                       const ImageGrid& grid);

} // namespace nfsas
