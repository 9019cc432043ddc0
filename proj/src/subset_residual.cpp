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

#include "nfsas/subset_residual.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nfsas/backprojection.hpp"
#include "nfsas/error.hpp"

namespace nfsas {

double constraint_residual(const Eigen::MatrixXcd& B, const Eigen::VectorXcd& y, const Eigen::VectorXcd& w) {
  return (y - B * w).squaredNorm();
}

double lemma1_check(const ReferencePattern& pattern, Side optimized, const Eigen::VectorXcd& w,
                    std::span<const std::size_t> subset) {
  const std::size_t n_ref = pattern.scene.size();
  std::vector<std::size_t> idx(subset.begin(), subset.end());
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (!idx.empty() && idx.back() >= n_ref) {
    std::ostringstream msg;
    msg << "subset index " << idx.back() << " exceeds the " << n_ref << " reference scatterers";
    throw Error(Errc::subset_out_of_range, msg.str());
  }
  if (static_cast<std::size_t>(w.size()) != pattern.referenced.side(optimized).size()) {
    throw Error(Errc::dimension_mismatch, "weight vector length differs from the candidate count");
  }
  if (idx.empty()) {
    return 0.0;
  }

  Scene sub;
  sub.scatterers.reserve(idx.size());
  for (std::size_t q : idx) {
    sub.scatterers.push_back(pattern.scene.scatterers[q]);
  }
  const ScatteredField field = forward_scatter(sub, pattern.referenced, pattern.field.freqs());
  const ImageField image = bp_image(field, pattern.referenced, pattern.grid);
  const SensingMatrix B = build_sensing_matrix(field, optimized, pattern.referenced, pattern.grid);

  Eigen::VectorXcd y(static_cast<Eigen::Index>(image.size()));
  for (std::size_t m = 0; m < image.size(); ++m) {
    y[static_cast<Eigen::Index>(m)] = image.values[m];
  }
  return constraint_residual(B.entries, y, w);
}

std::vector<std::size_t> random_subset(std::size_t n, std::mt19937_64& rng) {
  if (n == 0) {
    return {};
  }
  std::uniform_int_distribution<std::size_t> size_dist(1, n);
  const std::size_t k = size_dist(rng);
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

} // namespace nfsas
