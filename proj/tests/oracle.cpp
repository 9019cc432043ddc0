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

#include "oracle.hpp"

#include <cmath>
#include <algorithm>
#include <functional>

namespace oracle {

namespace {

double dist(const nfsas::Point3& a, const nfsas::Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

const double kPi = std::acos(-1.0);

} // namespace

std::vector<cplx> forward(const nfsas::Scene& scene, const nfsas::ArrayTopology& topo,
                          const std::vector<double>& k) {
  const std::size_t T = topo.n_tx();
  const std::size_t R = topo.n_rx();
  std::vector<cplx> s(k.size() * T * R);
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t r = 0; r < R; ++r) {
        cplx acc = 0.0;
        for (const auto& q : scene.scatterers) {
          const double dt = dist(topo.tx()[t].position, q.position);
          const double dr = dist(topo.rx()[r].position, q.position);
          acc += q.reflectivity * std::exp(cplx(0.0, -k[i] * (dt + dr))) / (16.0 * kPi * kPi * dt * dr);
        }
        s[(i * T + t) * R + r] = acc;
      }
    }
  }
  return s;
}

std::vector<cplx> backproject(const std::vector<cplx>& field, const nfsas::ArrayTopology& topo,
                              const std::vector<double>& k, const std::vector<nfsas::Point3>& pixels) {
  const std::size_t T = topo.n_tx();
  const std::size_t R = topo.n_rx();
  std::vector<cplx> e(pixels.size());
  for (std::size_t m = 0; m < pixels.size(); ++m) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      for (std::size_t t = 0; t < T; ++t) {
        const double dt = dist(pixels[m], topo.tx()[t].position);
        const cplx ct = topo.tx()[t].weight * 4.0 * kPi * dt * std::exp(cplx(0.0, k[i] * dt));
        for (std::size_t r = 0; r < R; ++r) {
          const double dr = dist(pixels[m], topo.rx()[r].position);
          const cplx cr = topo.rx()[r].weight * 4.0 * kPi * dr * std::exp(cplx(0.0, k[i] * dr));
          acc += ct * cr * field[(i * T + t) * R + r];
        }
      }
    }
    e[m] = acc;
  }
  return e;
}

SmallInstance random_instance(std::mt19937_64& rng, std::size_t max_freq, std::size_t max_tx, std::size_t max_rx,
                              std::size_t max_pix) {
  std::uniform_int_distribution<std::size_t> nf(1, max_freq), nt(1, max_tx), nr(1, max_rx), np(1, max_pix);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto cw = [&] { return cplx(u(rng), u(rng)); };
  const std::size_t n_f = nf(rng);
  SmallInstance inst;
  const double f0 = 30e9 + 2e9 * (u(rng) + 1.0);
  inst.freqs = n_f == 1 ? nfsas::FrequencyGrid(f0, f0 + 1e9, 2) : nfsas::FrequencyGrid(f0, f0 + 1e9, n_f);
  std::vector<nfsas::Element> tx, rx;
  for (std::size_t t = 0, n = nt(rng); t < n; ++t) {
    tx.push_back({{0.3 * u(rng), 0.0, 0.3 * u(rng)}, cw()});
  }
  for (std::size_t r = 0, n = nr(rng); r < n; ++r) {
    rx.push_back({{0.3 * u(rng), 0.0, 0.3 * u(rng)}, cw()});
  }
  inst.topo = nfsas::ArrayTopology(tx, rx);
  for (int q = 0; q < 3; ++q) {
    inst.scene.scatterers.push_back({{0.2 * u(rng), 0.5 + 0.1 * u(rng), 0.2 * u(rng)}, cw()});
  }
  for (std::size_t m = 0, n = np(rng); m < n; ++m) {
    inst.pixels.push_back({0.2 * u(rng), 0.5 + 0.1 * u(rng), 0.2 * u(rng)});
  }
  return inst;
}

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd B(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      B(i, j) = cplx(g(rng), g(rng));
    }
  }
  return B;
}

PlantedProblem planted(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, std::size_t k) {
  PlantedProblem p;
  p.B = random_matrix(rng, rows, cols);
  std::vector<std::size_t> idx(static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    idx[i] = i;
  }
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  p.support = idx;
  std::uniform_real_distribution<double> mag(0.5, 1.5), ph(-kPi, kPi);
  p.w0 = Eigen::VectorXcd::Zero(cols);
  for (std::size_t n : idx) {
    p.w0[static_cast<Eigen::Index>(n)] = std::polar(mag(rng), ph(rng));
  }
  p.y = p.B * p.w0;
  return p;
}

std::optional<SupportOracle> exhaustive_support(const Eigen::MatrixXcd& B, const Eigen::VectorXcd& y, double eps,
                                                std::size_t max_size) {
  std::optional<SupportOracle> best;
  const auto n = static_cast<std::size_t>(B.cols());
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (!cur.empty()) {
      Eigen::MatrixXcd sub(B.rows(), static_cast<Eigen::Index>(cur.size()));
      for (std::size_t j = 0; j < cur.size(); ++j) {
        sub.col(static_cast<Eigen::Index>(j)) = B.col(static_cast<Eigen::Index>(cur[j]));
      }
      const Eigen::VectorXcd ws = sub.householderQr().solve(y);
      const double res = (y - sub * ws).squaredNorm();
      if (res <= eps) {
        double l1 = 0.0;
        for (Eigen::Index j = 0; j < ws.size(); ++j) {
          l1 += std::abs(ws[j]);
        }
        if (!best || l1 < best->l1) {
          SupportOracle o;
          o.support = cur;
          o.w = Eigen::VectorXcd::Zero(B.cols());
          for (std::size_t j = 0; j < cur.size(); ++j) {
            o.w[static_cast<Eigen::Index>(cur[j])] = ws[static_cast<Eigen::Index>(j)];
          }
          o.residual = res;
          o.l1 = l1;
          best = o;
        }
      }
    }
    if (cur.size() == max_size) {
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return best;
}

} // namespace oracle
