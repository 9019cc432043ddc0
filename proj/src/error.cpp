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

#include "nfsas/error.hpp"

namespace nfsas {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
  case Errc::invalid_argument: return "InvalidArgument";
  case Errc::coincident_geometry: return "CoincidentGeometry";
  case Errc::dimension_mismatch: return "DimensionMismatch";
  case Errc::flat_image: return "FlatImage";
  case Errc::empty_input: return "EmptyInput";
  case Errc::infeasible: return "Infeasible";
  case Errc::empty_selection: return "EmptySelection";
  case Errc::subset_out_of_range: return "SubsetOutOfRange";
  case Errc::grid_mismatch: return "GridMismatch";
  case Errc::parse_error: return "ParseError";
  case Errc::validation_error: return "ValidationError";
  case Errc::magic_mismatch: return "MagicMismatch";
  case Errc::truncated_file: return "TruncatedFile";
  case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

} // namespace nfsas
