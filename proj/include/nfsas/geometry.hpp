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
#include <vector>

namespace nfsas {

using cplx = std::complex<double>;

/// Speed of light in vacuum, m/s (exact).
inline constexpr double speed_of_light = 299792458.0;
inline constexpr double pi = 3.14159265358979323846;

/// Cartesian position in meters. Arrays live in the y = 0 plane (x azimuth,
/// z height); y is range.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

double distance(const Point3& a, const Point3& b) noexcept;
bool is_finite(const Point3& p) noexcept;

/// Wavenumber 2*pi*f/c in rad/m.
double wavenumber(double frequency_hz) noexcept;

/// Stepped-frequency sweep, uniform and inclusive of both endpoints.
class FrequencyGrid {
public:
  /// Throws Errc::invalid_argument unless 0 < f_start < f_stop and n_steps >= 2.
  FrequencyGrid(double f_start_hz, double f_stop_hz, std::size_t n_steps);

  double start() const noexcept { return start_; }
  double stop() const noexcept { return stop_; }
  std::size_t steps() const noexcept { return steps_; }
  double step() const noexcept { return (stop_ - start_) / static_cast<double>(steps_ - 1); }

  double frequency(std::size_t i) const noexcept;
  std::vector<double> frequencies() const;

  double center_frequency() const noexcept { return 0.5 * (start_ + stop_); }
  double center_wavenumber() const noexcept { return wavenumber(center_frequency()); }
  double center_wavelength() const noexcept { return speed_of_light / center_frequency(); }

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

private:
  double start_;
  double stop_;
  std::size_t steps_;
};

/// k_i = 2*pi*f_i/c for every frequency of the grid, strictly increasing.
std::vector<double> wavenumbers(const FrequencyGrid& grid);

struct Scatterer {
  Point3 position;
  cplx reflectivity{1.0, 0.0};
};

struct Scene {
  std::vector<Scatterer> scatterers;

  std::size_t size() const noexcept { return scatterers.size(); }
  bool empty() const noexcept { return scatterers.empty(); }
};

struct Element {
  Point3 position;
  cplx weight{1.0, 0.0};

  friend bool operator==(const Element&, const Element&) = default;
};

enum class Side { tx, rx };

inline Side other(Side s) noexcept { return s == Side::tx ? Side::rx : Side::tx; }
const char* side_name(Side s) noexcept;

/// Transmit and receive element sets of a MIMO array.
///
/// Invariants (checked on construction): at least one element per side, no
/// two elements of the same side closer than 1e-9 m, finite positions and
/// weights.
class ArrayTopology {
public:
  static constexpr double duplicate_tolerance = 1e-9;

  ArrayTopology(std::vector<Element> tx, std::vector<Element> rx);

  const std::vector<Element>& tx() const noexcept { return tx_; }
  const std::vector<Element>& rx() const noexcept { return rx_; }
  const std::vector<Element>& side(Side s) const noexcept { return s == Side::tx ? tx_ : rx_; }

  std::size_t n_tx() const noexcept { return tx_.size(); }
  std::size_t n_rx() const noexcept { return rx_.size(); }

  /// Same elements with the roles of transmitters and receivers exchanged.
  ArrayTopology swapped() const;
  /// Copy with one side replaced.
  ArrayTopology with_side(Side s, std::vector<Element> elements) const;
  /// Copy with every weight of one side set to `w`.
  ArrayTopology with_uniform_weights(Side s, cplx w = {1.0, 0.0}) const;

  friend bool operator==(const ArrayTopology&, const ArrayTopology&) = default;

private:
  std::vector<Element> tx_;
  std::vector<Element> rx_;
};

std::vector<Point3> positions(std::span<const Element> elements);

} // namespace nfsas
