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

#include <complex>
#include <cstddef>
#include <span>

namespace nfsas::detail {

// Exact re-evaluation period of the phasor recurrence; bounds the drift to a
// few ulp.
inline constexpr std::size_t reanchor_period = 16;

/// Calls fn(i, p_i) with p_i = amplitude * exp(j * sign * k[i] * d) for every
/// wavenumber of a uniformly spaced list, using a complex recurrence between
/// exact anchors.
template <typename Fn>
inline void sweep(std::span<const double> k, double dk, double d, double sign, double amplitude, Fn&& fn) {
  const std::complex<double> step = std::polar(1.0, sign * dk * d);
  std::complex<double> p;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i % reanchor_period == 0) {
      p = std::polar(amplitude, sign * k[i] * d);
    } else {
      p *= step;
    }
    fn(i, p);
  }
}

inline double wavenumber_step(std::span<const double> k) {
  return k.size() > 1 ? (k.back() - k.front()) / static_cast<double>(k.size() - 1) : 0.0;
}

} // namespace nfsas::detail
