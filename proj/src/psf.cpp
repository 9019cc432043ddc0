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

#include "nfsas/psf.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "nfsas/error.hpp"

namespace nfsas {

namespace {

double to_db(double a) { return a > 0.0 ? 20.0 * std::log10(a) : no_lobe_db; }

// Two-sided -3 dB width along one lattice line through the peak. `at(j)`
// returns the normalized magnitude of the j-th sample on the line.
template <typename At>
double half_power_width(At at, std::size_t n, std::size_t peak, double spacing) {
  if (n < 2) {
    return 0.0;
  }
  const double h = std::pow(10.0, -3.0 / 20.0);
  double left = 0.0;
  std::size_t j = peak;
  while (j > 0 && at(j - 1) >= h) {
    --j;
  }
  if (j == 0) {
    left = 0.0;
  } else {
    const double a0 = at(j - 1);
    const double a1 = at(j);
    left = static_cast<double>(j - 1) + (h - a0) / (a1 - a0);
  }
  double right = static_cast<double>(n - 1);
  j = peak;
  while (j + 1 < n && at(j + 1) >= h) {
    ++j;
  }
  if (j + 1 < n) {
    const double a0 = at(j);
    const double a1 = at(j + 1);
    right = static_cast<double>(j) + (a0 - h) / (a0 - a1);
  }
  return (right - left) * spacing;
}

// Index of the first local minimum walking away from the peak.
template <typename At>
std::size_t walk_down(At at, std::size_t n, std::size_t peak, int dir) {
  std::size_t j = peak;
  if (dir < 0) {
    while (j > 0 && at(j - 1) <= at(j)) {
      --j;
    }
  } else {
    while (j + 1 < n && at(j + 1) <= at(j)) {
      ++j;
    }
  }
  return j;
}

} // namespace

PsfReport psf_analyze(const ImageField& image, const Point3& true_position) {
  const RectGrid& g = image.grid.require_rect();
  const std::size_t nx = g.n_x;
  const std::size_t nz = g.n_z;
  const std::size_t n = g.size();

  std::vector<double> a(n);
  double peak = 0.0;
  std::size_t p = 0;
  for (std::size_t m = 0; m < n; ++m) {
    a[m] = std::abs(image.values[m]);
    if (a[m] > peak) {
      peak = a[m];
      p = m;
    }
  }
  if (!(peak > 0.0)) {
    throw Error(Errc::flat_image, "psf: image is identically zero");
  }
  for (auto& v : a) {
    v /= peak;
  }
  const std::size_t px = p % nx;
  const std::size_t pz = p / nx;
  auto along_x = [&](std::size_t j) { return a[pz * nx + j]; };
  auto along_z = [&](std::size_t j) { return a[j * nx + px]; };

  PsfReport rep;
  rep.peak_position = image.grid[p];
  rep.position_error = distance(rep.peak_position, true_position);
  rep.mainlobe_width_x = half_power_width(along_x, nx, px, g.dx);
  rep.mainlobe_width_z = half_power_width(along_z, nz, pz, g.dz);

  // Mainlobe mask: -3 dB component plus the first-minimum box.
  std::vector<char> main(n, 0);
  const double h = std::pow(10.0, -3.0 / 20.0);
  std::deque<std::size_t> queue{p};
  main[p] = 1;
  while (!queue.empty()) {
    const std::size_t m = queue.front();
    queue.pop_front();
    const std::size_t ix = m % nx;
    const std::size_t iz = m / nx;
    auto visit = [&](std::size_t q) {
      if (!main[q] && a[q] >= h) {
        main[q] = 1;
        queue.push_back(q);
      }
    };
    if (ix > 0) visit(m - 1);
    if (ix + 1 < nx) visit(m + 1);
    if (iz > 0) visit(m - nx);
    if (iz + 1 < nz) visit(m + nx);
  }
  const std::size_t x_lo = walk_down(along_x, nx, px, -1);
  const std::size_t x_hi = walk_down(along_x, nx, px, +1);
  const std::size_t z_lo = walk_down(along_z, nz, pz, -1);
  const std::size_t z_hi = walk_down(along_z, nz, pz, +1);
  for (std::size_t iz = z_lo; iz <= z_hi; ++iz) {
    for (std::size_t ix = x_lo; ix <= x_hi; ++ix) {
      main[iz * nx + ix] = 1;
    }
  }

  std::vector<double> outside;
  outside.reserve(n);
  double strongest = -1.0;
  for (std::size_t m = 0; m < n; ++m) {
    if (!main[m]) {
      outside.push_back(to_db(a[m]));
      strongest = std::max(strongest, a[m]);
    }
  }
  if (outside.empty()) {
    return rep;
  }
  rep.peak_sidelobe_level = to_db(strongest);
  auto mid = outside.begin() + static_cast<std::ptrdiff_t>(outside.size() / 2);
  std::nth_element(outside.begin(), mid, outside.end());
  rep.sidelobe_floor = *mid;

  const Point3& peak_pos = rep.peak_position;
  for (std::size_t iz = 0; iz < nz; ++iz) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const std::size_t m = iz * nx + ix;
      if (main[m] || !(a[m] > 0.0)) {
        continue;
      }
      bool is_max = true;
      for (int dz = -1; dz <= 1 && is_max; ++dz) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dz == 0) continue;
          const auto jx = static_cast<std::ptrdiff_t>(ix) + dx;
          const auto jz = static_cast<std::ptrdiff_t>(iz) + dz;
          if (jx < 0 || jz < 0 || jx >= static_cast<std::ptrdiff_t>(nx) || jz >= static_cast<std::ptrdiff_t>(nz)) {
            continue;
          }
          if (a[static_cast<std::size_t>(jz) * nx + static_cast<std::size_t>(jx)] > a[m]) {
            is_max = false;
            break;
          }
        }
      }
      if (!is_max) {
        continue;
      }
      Lobe lobe{image.grid[m], to_db(a[m]), false};
      double reach = 0.0;
      if (rep.mainlobe_width_x > 0.0) {
        const double u = (lobe.position.x - peak_pos.x) / (grating_distance_widths * rep.mainlobe_width_x);
        reach += u * u;
      }
      if (rep.mainlobe_width_z > 0.0) {
        const double u = (lobe.position.z - peak_pos.z) / (grating_distance_widths * rep.mainlobe_width_z);
        reach += u * u;
      }
      lobe.grating = reach >= 1.0 && lobe.level_db >= rep.sidelobe_floor + grating_floor_margin_db;
      if (lobe.grating) {
        rep.grating_lobe_level = std::max(rep.grating_lobe_level, lobe.level_db);
      }
      rep.sidelobes.push_back(lobe);
    }
  }
  std::stable_sort(rep.sidelobes.begin(), rep.sidelobes.end(),
                   [](const Lobe& l, const Lobe& r) { return l.level_db > r.level_db; });
  return rep;
}

ImageField project_max_range(std::span<const ImageField> slices) {
  if (slices.empty()) {
    throw Error(Errc::empty_input, "projection: no range slices");
  }
  const RectGrid& g0 = slices.front().grid.require_rect();
  ImageField out(slices.front().grid);
  for (const auto& s : slices) {
    const RectGrid& g = s.grid.require_rect();
    if (g.n_x != g0.n_x || g.n_z != g0.n_z) {
      throw Error(Errc::dimension_mismatch, "projection: slices have different lattice shapes");
    }
    for (std::size_t m = 0; m < out.size(); ++m) {
      const double v = std::abs(s.values[m]);
      if (v > out.values[m].real()) {
        out.values[m] = v;
      }
    }
  }
  return out;
}

} // namespace nfsas
