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

#include "nfsas/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nfsas/error.hpp"

namespace nfsas {

LevelMap to_display_levels(const ImageField& image, double dynamic_range_db) {
  if (!(dynamic_range_db > 0.0) || !std::isfinite(dynamic_range_db)) {
    throw Error(Errc::invalid_argument, "dynamic range must be positive and finite");
  }
  const double peak = image.peak_magnitude();
  if (!(peak > 0.0)) {
    throw Error(Errc::flat_image, "image is identically zero");
  }
  LevelMap map;
  if (const auto& rect = image.grid.rect()) {
    map.n_x = rect->n_x;
    map.n_z = rect->n_z;
  } else {
    map.n_x = image.size();
    map.n_z = 1;
  }
  map.levels.resize(image.size());
  for (std::size_t m = 0; m < image.size(); ++m) {
    const double mag = std::abs(image.values[m]);
    const double db = mag > 0.0 ? 20.0 * std::log10(mag / peak) : -dynamic_range_db;
    const double clipped = std::clamp(db, -dynamic_range_db, 0.0);
    map.levels[m] = 255.0 * (clipped + dynamic_range_db) / dynamic_range_db;
  }
  return map;
}

namespace {

void require_same_shape(const LevelMap& a, const LevelMap& b) {
  if (a.n_x != b.n_x || a.n_z != b.n_z || a.levels.size() != b.levels.size()) {
    std::ostringstream msg;
    msg << "image shapes differ: " << a.n_x << "x" << a.n_z << " vs " << b.n_x << "x" << b.n_z;
    throw Error(Errc::grid_mismatch, msg.str());
  }
  if (a.levels.empty()) {
    throw Error(Errc::empty_input, "empty level map");
  }
}

} // namespace

double rmse(const LevelMap& a, const LevelMap& b) {
  require_same_shape(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    const double d = a.levels[i] - b.levels[i];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(a.levels.size()));
}

double psnr(double rmse_value) {
  if (rmse_value < 255.0 * std::pow(10.0, -psnr_cap_db / 20.0)) {
    return psnr_cap_db;
  }
  return 20.0 * std::log10(255.0 / rmse_value);
}

double ssim(const LevelMap& a, const LevelMap& b) {
  require_same_shape(a, b);
  constexpr double L = 255.0;
  constexpr double c1 = (0.01 * L) * (0.01 * L);
  constexpr double c2 = (0.03 * L) * (0.03 * L);
  const std::size_t wx = std::min<std::size_t>(8, a.n_x);
  const std::size_t wz = std::min<std::size_t>(8, a.n_z);
  const double n = static_cast<double>(wx * wz);
  const double dof = n > 1.0 ? n - 1.0 : 1.0;

  double total = 0.0;
  std::size_t windows = 0;
  for (std::size_t z0 = 0; z0 + wz <= a.n_z; ++z0) {
    for (std::size_t x0 = 0; x0 + wx <= a.n_x; ++x0) {
      double ma = 0.0;
      double mb = 0.0;
      for (std::size_t iz = z0; iz < z0 + wz; ++iz) {
        for (std::size_t ix = x0; ix < x0 + wx; ++ix) {
          ma += a.at(ix, iz);
          mb += b.at(ix, iz);
        }
      }
      ma /= n;
      mb /= n;
      double va = 0.0;
      double vb = 0.0;
      double cov = 0.0;
      for (std::size_t iz = z0; iz < z0 + wz; ++iz) {
        for (std::size_t ix = x0; ix < x0 + wx; ++ix) {
          const double da = a.at(ix, iz) - ma;
          const double db = b.at(ix, iz) - mb;
          va += da * da;
          vb += db * db;
          cov += da * db;
        }
      }
      va /= dof;
      vb /= dof;
      cov /= dof;
      total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++windows;
    }
  }
  return total / static_cast<double>(windows);
}

double level_entropy(const LevelMap& map, std::size_t bins) {
  if (bins < 2) {
    throw Error(Errc::invalid_argument, "entropy needs at least 2 bins");
  }
  if (map.levels.empty()) {
    return 0.0;
  }
  std::vector<std::size_t> counts(bins, 0);
  for (double v : map.levels) {
    const auto b = static_cast<std::size_t>(std::clamp(v / 255.0 * static_cast<double>(bins), 0.0,
                                                       static_cast<double>(bins - 1)));
    ++counts[b];
  }
  const double total = static_cast<double>(map.levels.size());
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c > 0) {
      const double p = static_cast<double>(c) / total;
      h -= p * std::log2(p);
    }
  }
  return std::max(h, 0.0);
}

MetricsReport compare_levels(const LevelMap& test, const LevelMap& baseline, std::size_t bins) {
  MetricsReport r;
  r.rmse = rmse(test, baseline);
  r.psnr = psnr(r.rmse);
  r.ssim = ssim(test, baseline);
  r.entropy = level_entropy(test, bins);
  return r;
}

MetricsReport compare_images(const ImageField& test, const ImageField& baseline, double dynamic_range_db) {
  if (!(test.grid == baseline.grid)) {
    throw Error(Errc::grid_mismatch, "test and baseline images live on different grids");
  }
  return compare_levels(to_display_levels(test, dynamic_range_db), to_display_levels(baseline, dynamic_range_db));
}

double image_entropy(const ImageField& image, std::size_t bins, double dynamic_range_db) {
  if (!(image.peak_magnitude() > 0.0)) {
    return 0.0;
  }
  return level_entropy(to_display_levels(image, dynamic_range_db), bins);
}

} // namespace nfsas
