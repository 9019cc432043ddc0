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

#include "nfsas/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nfsas/backprojection.hpp"
#include "nfsas/error.hpp"

namespace nfsas {

std::string_view window_name(Window w) noexcept {
  switch (w) {
  case Window::uniform: return "uniform";
  case Window::hamming: return "hamming";
  case Window::hann: return "hann";
  }
  return "uniform";
}

Window parse_window(std::string_view name) {
  for (Window w : {Window::uniform, Window::hamming, Window::hann}) {
    if (window_name(w) == name) {
      return w;
    }
  }
  throw Error(Errc::invalid_argument, "unknown apodization window '" + std::string(name) + "'");
}

double window_value(Window w, double u) noexcept {
  switch (w) {
  case Window::uniform: return 1.0;
  case Window::hamming: return 0.54 - 0.46 * std::cos(2.0 * pi * u);
  case Window::hann: return 0.5 - 0.5 * std::cos(2.0 * pi * u);
  }
  return 1.0;
}

namespace {

// Distinct coordinates along one axis, merged within 1e-9 m.
std::vector<double> distinct(std::span<const Element> elements, int axis) {
  std::vector<double> c;
  for (const auto& e : elements) {
    c.push_back(axis == 0 ? e.position.x : e.position.z);
  }
  std::sort(c.begin(), c.end());
  std::vector<double> out;
  for (double v : c) {
    if (out.empty() || v - out.back() > ArrayTopology::duplicate_tolerance) {
      out.push_back(v);
    }
  }
  return out;
}

} // namespace

std::vector<Element> apodize(std::span<const Element> elements, Window w) {
  std::vector<Element> out(elements.begin(), elements.end());
  if (w == Window::uniform) {
    return out;
  }
  for (int axis : {0, 2}) {
    const auto c = distinct(elements, axis);
    if (c.size() <= 2) {
      continue;
    }
    const double lo = c.front();
    const double span = c.back() - c.front();
    for (auto& e : out) {
      const double v = axis == 0 ? e.position.x : e.position.z;
      e.weight *= window_value(w, (v - lo) / span);
    }
  }
  return out;
}

Scene reference_scene(const ImageGrid& grid) {
  Scene scene;
  scene.scatterers.reserve(grid.size());
  for (const auto& p : grid.pixels()) {
    scene.scatterers.push_back({p, {1.0, 0.0}});
  }
  return scene;
}

namespace {

// Largest nearest-neighbour spacing within one side.
double coarsest_pitch(std::span<const Element> elements) {
  double worst = 0.0;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < elements.size(); ++j) {
      if (i != j) {
        nearest = std::min(nearest, distance(elements[i].position, elements[j].position));
      }
    }
    if (std::isfinite(nearest)) {
      worst = std::max(worst, nearest);
    }
  }
  return worst;
}

} // namespace

ReferencePattern reference_pattern(const ArrayTopology& referenced, Window apodization,
                                   const SamplingGrid& sampling, const FrequencyGrid& freqs, ApodizedSides sides) {
  const ArrayTopology weighted(sides.tx ? apodize(referenced.tx(), apodization) : referenced.tx(),
                               sides.rx ? apodize(referenced.rx(), apodization) : referenced.rx());
  ImageGrid grid = sampling.grid();
  Scene scene = reference_scene(grid);
  ScatteredField field = forward_scatter(scene, weighted, freqs);
  const ImageField image = bp_image(field, weighted, grid);

  Eigen::VectorXcd values(static_cast<Eigen::Index>(image.size()));
  for (std::size_t m = 0; m < image.size(); ++m) {
    values[static_cast<Eigen::Index>(m)] = image.values[m];
  }

  std::vector<std::string> warnings;
  const double lambda_min = speed_of_light / freqs.stop();
  for (Side s : {Side::tx, Side::rx}) {
    const auto& el = weighted.side(s);
    if (el.size() < 3) {
      continue;
    }
    const double pitch = coarsest_pitch(el);
    if (pitch > 0.25 * lambda_min) {
      std::ostringstream msg;
      msg << "referenced " << side_name(s) << " pitch " << pitch << " m exceeds lambda_min/4 = "
          << 0.25 * lambda_min << " m";
      warnings.push_back(msg.str());
    }
  }

  return ReferencePattern{sampling,     std::move(grid),  std::move(values), weighted,
                          apodization,  std::move(scene), std::move(field),  std::move(warnings)};
}

} // namespace nfsas
