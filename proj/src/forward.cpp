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

#include "nfsas/forward.hpp"

#include <cmath>
#include <string>

#include "nfsas/error.hpp"
#include "phasor.hpp"

namespace nfsas {

ScatteredField::ScatteredField(FrequencyGrid freqs, std::size_t n_tx, std::size_t n_rx)
    : freqs_(freqs), n_tx_(n_tx), n_rx_(n_rx), samples_(freqs.steps() * n_tx * n_rx) {}

ScatteredField::ScatteredField(FrequencyGrid freqs, std::size_t n_tx, std::size_t n_rx, std::vector<cplx> samples)
    : freqs_(freqs), n_tx_(n_tx), n_rx_(n_rx), samples_(std::move(samples)) {
  if (samples_.size() != freqs_.steps() * n_tx_ * n_rx_) {
    throw Error(Errc::dimension_mismatch, "scattered field: sample count does not match (freq, tx, rx) shape");
  }
  for (const auto& s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw Error(Errc::invalid_argument, "scattered field: non-finite sample");
    }
  }
}

ScatteredField ScatteredField::transposed() const {
  ScatteredField out(freqs_, n_rx_, n_tx_);
  for (std::size_t i = 0; i < n_freq(); ++i) {
    for (std::size_t t = 0; t < n_tx_; ++t) {
      for (std::size_t r = 0; r < n_rx_; ++r) {
        out(i, r, t) = (*this)(i, t, r);
      }
    }
  }
  return out;
}

ScatteredField& ScatteredField::operator+=(const ScatteredField& other) {
  if (other.n_tx_ != n_tx_ || other.n_rx_ != n_rx_ || !(other.freqs_ == freqs_)) {
    throw Error(Errc::dimension_mismatch, "scattered field: shapes differ");
  }
  for (std::size_t j = 0; j < samples_.size(); ++j) {
    samples_[j] += other.samples_[j];
  }
  return *this;
}

ScatteredField& ScatteredField::operator*=(cplx alpha) {
  for (auto& s : samples_) {
    s *= alpha;
  }
  return *this;
}

namespace {

void check_clearance(const Scene& scene, const std::vector<Element>& elements, Side s) {
  for (std::size_t q = 0; q < scene.size(); ++q) {
    const auto& sc = scene.scatterers[q];
    if (!is_finite(sc.position)) {
      throw Error(Errc::invalid_argument, "scene: scatterer " + std::to_string(q) + " position is not finite");
    }
    for (std::size_t e = 0; e < elements.size(); ++e) {
      if (distance(sc.position, elements[e].position) <= min_element_clearance) {
        throw Error(Errc::coincident_geometry, "scatterer " + std::to_string(q) + " coincides with " +
                                                   side_name(s) + " element " + std::to_string(e));
      }
    }
  }
}

} // namespace

ScatteredField forward_scatter(const Scene& scene, const ArrayTopology& topology, const FrequencyGrid& grid) {
  check_clearance(scene, topology.tx(), Side::tx);
  check_clearance(scene, topology.rx(), Side::rx);

  const auto k = wavenumbers(grid);
  const double dk = detail::wavenumber_step(k);
  const std::size_t n_tx = topology.n_tx();
  const std::size_t n_rx = topology.n_rx();
  const std::size_t n_k = k.size();
  const std::size_t n_q = scene.size();
  constexpr double norm = 16.0 * pi * pi;

  ScatteredField field(grid, n_tx, n_rx);
  if (n_q == 0) {
    return field;
  }

  // Ranges from every element to every scatterer.
  std::vector<double> d_tx(n_tx * n_q);
  std::vector<double> d_rx(n_rx * n_q);
  for (std::size_t t = 0; t < n_tx; ++t) {
    for (std::size_t q = 0; q < n_q; ++q) {
      d_tx[t * n_q + q] = distance(topology.tx()[t].position, scene.scatterers[q].position);
    }
  }
  for (std::size_t r = 0; r < n_rx; ++r) {
    for (std::size_t q = 0; q < n_q; ++q) {
      d_rx[r * n_q + q] = distance(topology.rx()[r].position, scene.scatterers[q].position);
    }
  }

  const auto n_pairs = static_cast<std::ptrdiff_t>(n_tx * n_rx);
#pragma omp parallel
  {
    std::vector<cplx> acc(n_k);
#pragma omp for schedule(static)
    for (std::ptrdiff_t pair = 0; pair < n_pairs; ++pair) {
      const std::size_t t = static_cast<std::size_t>(pair) / n_rx;
      const std::size_t r = static_cast<std::size_t>(pair) % n_rx;
      std::fill(acc.begin(), acc.end(), cplx{});
      for (std::size_t q = 0; q < n_q; ++q) {
        const double dt = d_tx[t * n_q + q];
        const double dr = d_rx[r * n_q + q];
        const cplx sigma = scene.scatterers[q].reflectivity;
        // Symmetric in (dt, dr) so that swapping tx and rx is bit-exact.
        const double amplitude = 1.0 / (norm * (dt * dr));
        detail::sweep(k, dk, dt + dr, -1.0, amplitude, [&](std::size_t i, cplx p) { acc[i] += sigma * p; });
      }
      for (std::size_t i = 0; i < n_k; ++i) {
        field(i, t, r) = acc[i];
      }
    }
  }
  return field;
}

} // namespace nfsas
