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

#include "nfsas/image.hpp"

namespace nfsas {

inline constexpr double psnr_cap_db = 99.0;
inline constexpr double default_dynamic_range_db = 15.0;

struct MetricsReport {
  double rmse = 0.0;
  double psnr = psnr_cap_db; // dB
  double ssim = 1.0;
  double entropy = 0.0;      // bits, of the test image
};

/// Normalized dB magnitude map clipped at -dynamic_range and mapped to [0, 255].
/// Rectangular grids keep their (n_x, n_z) shape; others are a single row.
struct LevelMap {
  std::size_t n_x = 0;
  std::size_t n_z = 0;
  std::vector<double> levels; // row-major, z outer

  double at(std::size_t ix, std::size_t iz) const noexcept { return levels[iz * n_x + ix]; }
};

/// Throws Errc::flat_image for an all-zero image.
LevelMap to_display_levels(const ImageField& image, double dynamic_range_db = default_dynamic_range_db);

double rmse(const LevelMap& a, const LevelMap& b);
double psnr(double rmse_value);
/// Mean SSIM over all 8x8 windows (clamped to the map size), K1 = 0.01,
/// K2 = 0.03, L = 255.
double ssim(const LevelMap& a, const LevelMap& b);
double level_entropy(const LevelMap& map, std::size_t bins = 256);

/// rmse/psnr/ssim of `test` against `baseline`; entropy of `test`.
MetricsReport compare_levels(const LevelMap& test, const LevelMap& baseline, std::size_t bins = 256);
MetricsReport compare_images(const ImageField& test, const ImageField& baseline,
                             double dynamic_range_db = default_dynamic_range_db);

/// Histogram entropy in bits; 0 for an all-zero image.
double image_entropy(const ImageField& image, std::size_t bins = 256,
                     double dynamic_range_db = default_dynamic_range_db);

} // namespace nfsas
