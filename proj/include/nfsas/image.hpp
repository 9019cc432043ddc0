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
#include <vector>

#include "nfsas/geometry.hpp"

namespace nfsas {

/// Regular pixel lattice on the plane y = range. Pixel (ix, iz) sits at
/// (x0 + ix*dx, range, z0 + iz*dz) and is stored at index iz*n_x + ix.
struct RectGrid {
  std::size_t n_x = 1;
  std::size_t n_z = 1;
  double x0 = 0.0;
  double z0 = 0.0;
  double dx = 1.0;
  double dz = 1.0;
  double range = 0.0;

  std::size_t size() const noexcept { return n_x * n_z; }
  double x(std::size_t ix) const noexcept { return x0 + static_cast<double>(ix) * dx; }
  double z(std::size_t iz) const noexcept { return z0 + static_cast<double>(iz) * dz; }

  /// Lattice of n_x by n_z pixels centered on (xc, range, zc).
  static RectGrid centered(std::size_t n_x, std::size_t n_z, double dx, double dz, double range, double xc = 0.0,
                           double zc = 0.0);

  friend bool operator==(const RectGrid&, const RectGrid&) = default;
};

/// Imaging pixel positions, optionally carrying rectangular lattice metadata.
class ImageGrid {
public:
  /// Arbitrary pixel list; throws Errc::invalid_argument if empty or non-finite.
  explicit ImageGrid(std::vector<Point3> pixels);
  /// Throws Errc::invalid_argument on a zero-sized lattice or non-positive spacing.
  explicit ImageGrid(const RectGrid& rect);

  std::size_t size() const noexcept { return pixels_.size(); }
  const std::vector<Point3>& pixels() const noexcept { return pixels_; }
  const Point3& operator[](std::size_t m) const noexcept { return pixels_[m]; }
  const std::optional<RectGrid>& rect() const noexcept { return rect_; }

  /// Rectangular metadata or Errc::invalid_argument.
  const RectGrid& require_rect() const;

  /// Copy with every pixel moved to range `y` (rectangular metadata follows).
  ImageGrid at_range(double y) const;

  friend bool operator==(const ImageGrid&, const ImageGrid&) = default;

private:
  std::vector<Point3> pixels_;
  std::optional<RectGrid> rect_;
};

struct ImageField {
  ImageField(ImageGrid grid, std::vector<cplx> values);
  /// Zero image on `grid`.
  explicit ImageField(ImageGrid grid);

  ImageGrid grid;
  std::vector<cplx> values;

  std::size_t size() const noexcept { return values.size(); }
  double peak_magnitude() const noexcept;
};

} // namespace nfsas
