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
#include <vector>

#include "nfsas/geometry.hpp"

namespace nfsas {

/// Multistatic field samples s(k, tx, rx), stored frequency-major:
/// index = (i * n_tx + t) * n_rx + r.
class ScatteredField {
public:
  /// Zero field of the given shape.
  ScatteredField(FrequencyGrid freqs, std::size_t n_tx, std::size_t n_rx);
  /// Throws Errc::dimension_mismatch if `samples` has the wrong length and
  /// Errc::invalid_argument on non-finite entries.
  ScatteredField(FrequencyGrid freqs, std::size_t n_tx, std::size_t n_rx, std::vector<cplx> samples);

  const FrequencyGrid& freqs() const noexcept { return freqs_; }
  std::size_t n_freq() const noexcept { return freqs_.steps(); }
  std::size_t n_tx() const noexcept { return n_tx_; }
  std::size_t n_rx() const noexcept { return n_rx_; }

  std::size_t index(std::size_t i, std::size_t t, std::size_t r) const noexcept {
    return (i * n_tx_ + t) * n_rx_ + r;
  }
  cplx operator()(std::size_t i, std::size_t t, std::size_t r) const noexcept { return samples_[index(i, t, r)]; }
  cplx& operator()(std::size_t i, std::size_t t, std::size_t r) noexcept { return samples_[index(i, t, r)]; }

  const std::vector<cplx>& samples() const noexcept { return samples_; }

  /// Field with the tx and rx axes exchanged.
  ScatteredField transposed() const;

  ScatteredField& operator+=(const ScatteredField& other);
  ScatteredField& operator*=(cplx alpha);

private:
  FrequencyGrid freqs_;
  std::size_t n_tx_;
  std::size_t n_rx_;
  std::vector<cplx> samples_;
};

/// Minimum admissible distance between a scatterer and an array element.
inline constexpr double min_element_clearance = 1e-6;

/// Born-approximation multistatic field of a point-scatterer scene:
///
///   s(k_i, t, r) = sum_q sigma_q exp(-j k_i (|T_t - r_q| + |R_r - r_q|))
///                  / (16 pi^2 |T_t - r_q| |R_r - r_q|)
///
/// Element weights are not applied. Throws Errc::coincident_geometry if a
/// scatterer lies within `min_element_clearance` of any element.
ScatteredField forward_scatter(const Scene& scene, const ArrayTopology& topology, const FrequencyGrid& grid);

} // namespace nfsas
