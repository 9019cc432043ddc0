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

#include "nfsas/backprojection.hpp"

#include <string>

#include "nfsas/error.hpp"
#include "phasor.hpp"

namespace nfsas {

namespace {

constexpr double four_pi = 4.0 * pi;

void check_shape(const ScatteredField& field, const ArrayTopology& topology) {
  if (field.n_tx() != topology.n_tx() || field.n_rx() != topology.n_rx()) {
    throw Error(Errc::dimension_mismatch, "field is " + std::to_string(field.n_tx()) + "x" +
                                              std::to_string(field.n_rx()) + " (tx x rx) but topology is " +
                                              std::to_string(topology.n_tx()) + "x" +
                                              std::to_string(topology.n_rx()));
  }
}

// out[i * n + e] = weight_e * 4pi d e^{+j k_i d}, d = |pixel - element_e|.
void compensation(std::span<const double> k, double dk, const Point3& pixel, const std::vector<Element>& elements,
                  bool apply_weights, std::vector<cplx>& out) {
  const std::size_t n = elements.size();
  for (std::size_t e = 0; e < n; ++e) {
    const double d = distance(pixel, elements[e].position);
    const cplx w = apply_weights ? elements[e].weight : cplx{1.0, 0.0};
    detail::sweep(k, dk, d, +1.0, four_pi * d, [&](std::size_t i, cplx p) { out[i * n + e] = w * p; });
  }
}

} // namespace

ImageField bp_image(const ScatteredField& field, const ArrayTopology& topology, const ImageGrid& grid) {
  check_shape(field, topology);
  const auto k = wavenumbers(field.freqs());
  const double dk = detail::wavenumber_step(k);
  const std::size_t n_k = k.size();
  const std::size_t n_tx = topology.n_tx();
  const std::size_t n_rx = topology.n_rx();
  const auto& samples = field.samples();

  ImageField image(grid);
  const auto n_pix = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel
  {
    std::vector<cplx> phi_t(n_k * n_tx);
    std::vector<cplx> phi_r(n_k * n_rx);
#pragma omp for schedule(static)
    for (std::ptrdiff_t m = 0; m < n_pix; ++m) {
      const Point3& p = grid[static_cast<std::size_t>(m)];
      compensation(k, dk, p, topology.tx(), true, phi_t);
      compensation(k, dk, p, topology.rx(), true, phi_r);
      cplx acc{};
      for (std::size_t i = 0; i < n_k; ++i) {
        for (std::size_t t = 0; t < n_tx; ++t) {
          const cplx* s = samples.data() + field.index(i, t, 0);
          const cplx* pr = phi_r.data() + i * n_rx;
          cplx inner{};
          for (std::size_t r = 0; r < n_rx; ++r) {
            inner += pr[r] * s[r];
          }
          acc += phi_t[i * n_tx + t] * inner;
        }
      }
      image.values[static_cast<std::size_t>(m)] = acc;
    }
  }
  return image;
}

SensingMatrix build_sensing_matrix(const ScatteredField& field, Side optimized, const ArrayTopology& topology,
                                   const ImageGrid& grid) {
  check_shape(field, topology);
  const auto k = wavenumbers(field.freqs());
  const double dk = detail::wavenumber_step(k);
  const std::size_t n_k = k.size();
  const auto& fixed = topology.side(other(optimized));
  const auto& cand = topology.side(optimized);
  const std::size_t n_f = fixed.size();
  const std::size_t n_o = cand.size();
  const auto& samples = field.samples();

  // Sample stride along the fixed and optimized axes of the field tensor.
  const bool rx_opt = optimized == Side::rx;
  const std::size_t stride_f = rx_opt ? field.n_rx() : 1;
  const std::size_t stride_o = rx_opt ? 1 : field.n_rx();

  SensingMatrix b{Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(n_o)),
                  grid, optimized, positions(cand)};

  const auto n_pix = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel
  {
    std::vector<cplx> phi_f(n_k * n_f);
    std::vector<cplx> phi_o(n_k * n_o);
#pragma omp for schedule(static)
    for (std::ptrdiff_t m = 0; m < n_pix; ++m) {
      const Point3& p = grid[static_cast<std::size_t>(m)];
      compensation(k, dk, p, fixed, true, phi_f);
      compensation(k, dk, p, cand, false, phi_o);
      for (std::size_t o = 0; o < n_o; ++o) {
        cplx acc{};
        for (std::size_t i = 0; i < n_k; ++i) {
          const cplx* s = samples.data() + field.index(i, 0, 0) + o * stride_o;
          const cplx* pf = phi_f.data() + i * n_f;
          cplx inner{};
          for (std::size_t f = 0; f < n_f; ++f) {
            inner += pf[f] * s[f * stride_f];
          }
          acc += phi_o[i * n_o + o] * inner;
        }
        b.entries(m, static_cast<Eigen::Index>(o)) = acc;
      }
    }
  }
  return b;
}

namespace {

// g[i] += sum_e w_e (|p - e|/|e - q|) e^{jk_i(|p - e| - |e - q|)}
void point_factor(std::span<const double> k, double dk, const Point3& pixel, const Point3& target,
                  const std::vector<Element>& elements, std::vector<cplx>& g) {
  std::fill(g.begin(), g.end(), cplx{});
  for (const auto& e : elements) {
    const double dp = distance(pixel, e.position);
    const double dq = distance(e.position, target);
    const cplx w = e.weight;
    detail::sweep(k, dk, dp - dq, +1.0, dp / dq, [&](std::size_t i, cplx v) { g[i] += w * v; });
  }
}

} // namespace

ImageField point_response(const Scatterer& scatterer, const ArrayTopology& topology, const FrequencyGrid& freqs,
                          const ImageGrid& grid) {
  if (!is_finite(scatterer.position)) {
    throw Error(Errc::invalid_argument, "scene: scatterer position is not finite");
  }
  for (const auto* side : {&topology.tx(), &topology.rx()}) {
    for (const auto& e : *side) {
      if (distance(e.position, scatterer.position) <= min_element_clearance) {
        throw Error(Errc::coincident_geometry, "scatterer coincides with an array element");
      }
    }
  }

  const auto k = wavenumbers(freqs);
  const double dk = detail::wavenumber_step(k);
  const std::size_t n_k = k.size();
  ImageField image(grid);
  const auto n_pix = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel
  {
    std::vector<cplx> g_t(n_k);
    std::vector<cplx> g_r(n_k);
#pragma omp for schedule(static)
    for (std::ptrdiff_t m = 0; m < n_pix; ++m) {
      const Point3& p = grid[static_cast<std::size_t>(m)];
      point_factor(k, dk, p, scatterer.position, topology.tx(), g_t);
      point_factor(k, dk, p, scatterer.position, topology.rx(), g_r);
      cplx acc{};
      for (std::size_t i = 0; i < n_k; ++i) {
        acc += g_t[i] * g_r[i];
      }
      image.values[static_cast<std::size_t>(m)] = scatterer.reflectivity * acc;
    }
  }
  return image;
}

ImageField image_scene(const Scene& scene, const ArrayTopology& topology, const FrequencyGrid& freqs,
                       const ImageGrid& grid) {
  const std::size_t n_q = scene.size();
  const std::size_t factored = n_q * (topology.n_tx() + topology.n_rx());
  const std::size_t direct = topology.n_tx() * topology.n_rx();
  if (factored > direct) {
    return bp_image(forward_scatter(scene, topology, freqs), topology, grid);
  }
  ImageField image(grid);
  for (const auto& sc : scene.scatterers) {
    const auto part = point_response(sc, topology, freqs, grid);
    for (std::size_t m = 0; m < image.size(); ++m) {
      image.values[m] += part.values[m];
    }
  }
  return image;
}

} // namespace nfsas
