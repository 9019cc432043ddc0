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

#include <stdexcept>
#include <string>
#include <string_view>

namespace nfsas {

enum class Errc {
  invalid_argument,
  coincident_geometry,
  dimension_mismatch,
  flat_image,
  empty_input,
  infeasible,
  empty_selection,
  subset_out_of_range,
  grid_mismatch,
  parse_error,
  validation_error,
  magic_mismatch,
  truncated_file,
  io_error,
};

/// Stable, machine-readable name of an error kind ("CoincidentGeometry", ...).
std::string_view errc_name(Errc code) noexcept;

/// Library exception. `path()` names the offending field or file location
/// when one is known (scenario key path, "file:line", ...).
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message, std::string path = {})
      : std::runtime_error(message), code_(code), path_(std::move(path)) {}

  Errc code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

private:
  Errc code_;
  std::string path_;
};

} // namespace nfsas
