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

#include "nfsas/image.hpp"

#include <algorithm>
#include <cmath>

#include "nfsas/error.hpp"

namespace nfsas {

RectGrid RectGrid::centered(std::size_t n_x, std::size_t n_z, double dx, double dz, double range, double xc,
                            double zc) {
  RectGrid g;
  g.n_x = n_x;
  g.n_z = n_z;
  g.dx = dx;
  g.dz = dz;
  g.range = range;
  g.x0 = xc - 0.5 * static_cast<double>(n_x - 1) * dx;
  g.z0 = zc - 0.5 * static_cast<double>(n_z - 1) * dz;
  return g;
}

ImageGrid::ImageGrid(std::vector<Point3> pixels) : pixels_(std::move(pixels)) {
  if (pixels_.empty()) {
    throw Error(Errc::invalid_argument, "image grid: no pixels");
  }
  for (const auto& p : pixels_) {
    if (!is_finite(p)) {
      throw Error(Errc::invalid_argument, "image grid: non-finite pixel position");
    }
  }
}

ImageGrid::ImageGrid(const RectGrid& rect) : rect_(rect) {
  if (rect.n_x == 0 || rect.n_z == 0) {
    throw Error(Errc::invalid_argument, "image grid: empty lattice");
  }
  if (!(rect.dx > 0.0) || !(rect.dz > 0.0) || !std::isfinite(rect.dx) || !std::isfinite(rect.dz)) {
    throw Error(Errc::invalid_argument, "image grid: lattice spacing must be positive");
  }
  if (!std::isfinite(rect.x0) || !std::isfinite(rect.z0) || !std::isfinite(rect.range)) {
    throw Error(Errc::invalid_argument, "image grid: non-finite lattice origin");
  }
  pixels_.reserve(rect.size());
  for (std::size_t iz = 0; iz < rect.n_z; ++iz) {
    for (std::size_t ix = 0; ix < rect.n_x; ++ix) {
      pixels_.push_back({rect.x(ix), rect.range, rect.z(iz)});
    }
  }
}

const RectGrid& ImageGrid::require_rect() const {
  if (!rect_) {
    throw Error(Errc::invalid_argument, "image grid: rectangular lattice metadata required");
  }
  return *rect_;
}

ImageGrid ImageGrid::at_range(double y) const {
  if (rect_) {
    RectGrid r = *rect_;
    r.range = y;
    return ImageGrid(r);
  }
  auto moved = pixels_;
  for (auto& p : moved) {
    p.y = y;
  }
  return ImageGrid(std::move(moved));
}

ImageField::ImageField(ImageGrid g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw Error(Errc::dimension_mismatch, "image: value count does not match the grid");
  }
  for (const auto& e : values) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
      throw Error(Errc::invalid_argument, "image: non-finite value");
    }
  }
}

ImageField::ImageField(ImageGrid g) : grid(std::move(g)), values(grid.size()) {}

double ImageField::peak_magnitude() const noexcept {
  double peak = 0.0;
  for (const auto& e : values) {
    peak = std::max(peak, std::abs(e));
  }
  return peak;
}

} // namespace nfsas
