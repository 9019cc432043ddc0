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

#include "nfsas/geometry.hpp"

#include <cmath>
#include <string>

#include "nfsas/error.hpp"

namespace nfsas {

double distance(const Point3& a, const Point3& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

bool is_finite(const Point3& p) noexcept {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

double wavenumber(double frequency_hz) noexcept {
  return 2.0 * pi * frequency_hz / speed_of_light;
}

FrequencyGrid::FrequencyGrid(double f_start_hz, double f_stop_hz, std::size_t n_steps)
    : start_(f_start_hz), stop_(f_stop_hz), steps_(n_steps) {
  if (!(std::isfinite(f_start_hz) && std::isfinite(f_stop_hz)) || !(f_start_hz > 0.0)) {
    throw Error(Errc::invalid_argument, "frequency grid: start frequency must be finite and positive");
  }
  if (!(f_stop_hz > f_start_hz)) {
    throw Error(Errc::invalid_argument, "frequency grid: stop frequency must exceed start frequency");
  }
  if (n_steps < 2) {
    throw Error(Errc::invalid_argument, "frequency grid: at least two steps are required");
  }
}

double FrequencyGrid::frequency(std::size_t i) const noexcept {
  if (i + 1 == steps_) {
    return stop_;
  }
  return start_ + static_cast<double>(i) * step();
}

std::vector<double> FrequencyGrid::frequencies() const {
  std::vector<double> f(steps_);
  for (std::size_t i = 0; i < steps_; ++i) {
    f[i] = frequency(i);
  }
  return f;
}

std::vector<double> wavenumbers(const FrequencyGrid& grid) {
  std::vector<double> k(grid.steps());
  for (std::size_t i = 0; i < grid.steps(); ++i) {
    k[i] = wavenumber(grid.frequency(i));
  }
  return k;
}

const char* side_name(Side s) noexcept { return s == Side::tx ? "tx" : "rx"; }

namespace {

void validate_side(const std::vector<Element>& elements, Side s) {
  const std::string name = side_name(s);
  if (elements.empty()) {
    throw Error(Errc::invalid_argument, "topology: " + name + " side has no elements");
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& e = elements[i];
    if (!is_finite(e.position) || !std::isfinite(e.weight.real()) || !std::isfinite(e.weight.imag())) {
      throw Error(Errc::invalid_argument,
                  "topology: " + name + " element " + std::to_string(i) + " is not finite");
    }
  }
  // Quadratic scan; element counts stay in the low thousands.
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (distance(elements[i].position, elements[j].position) <= ArrayTopology::duplicate_tolerance) {
        throw Error(Errc::invalid_argument, "topology: duplicate " + name + " positions at indices " +
                                                std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
}

} // namespace

ArrayTopology::ArrayTopology(std::vector<Element> tx, std::vector<Element> rx)
    : tx_(std::move(tx)), rx_(std::move(rx)) {
  validate_side(tx_, Side::tx);
  validate_side(rx_, Side::rx);
}

ArrayTopology ArrayTopology::swapped() const { return ArrayTopology(rx_, tx_); }

ArrayTopology ArrayTopology::with_side(Side s, std::vector<Element> elements) const {
  if (s == Side::tx) {
    return ArrayTopology(std::move(elements), rx_);
  }
  return ArrayTopology(tx_, std::move(elements));
}

ArrayTopology ArrayTopology::with_uniform_weights(Side s, cplx w) const {
  auto elements = side(s);
  for (auto& e : elements) {
    e.weight = w;
  }
  return with_side(s, std::move(elements));
}

std::vector<Point3> positions(std::span<const Element> elements) {
  std::vector<Point3> out;
  out.reserve(elements.size());
  for (const auto& e : elements) {
    out.push_back(e.position);
  }
  return out;
}

} // namespace nfsas
