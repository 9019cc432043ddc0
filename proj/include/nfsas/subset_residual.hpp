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
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nfsas/reference.hpp"

namespace nfsas {

/// |E'_ref - B' w|^2 where E'_ref and B' are rebuilt from only the reference
/// scatterers listed in `subset`. With the full index set this is the
/// synthesis constraint residual itself, computed along the same path.
double lemma1_check(const ReferencePattern& pattern, Side optimized, const Eigen::VectorXcd& w,
                    std::span<const std::size_t> subset);

/// Residual |y - B w|^2 as evaluated by the solver.
double constraint_residual(const Eigen::MatrixXcd& B, const Eigen::VectorXcd& y, const Eigen::VectorXcd& w);

/// Subset of {0..n-1}: size uniform in [1, n], members uniform without
/// replacement; returned sorted.
std::vector<std::size_t> random_subset(std::size_t n, std::mt19937_64& rng);

} // namespace nfsas
