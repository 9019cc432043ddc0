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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "nfsas/geometry.hpp"
#include "nfsas/image.hpp"

namespace nfsas {

inline constexpr std::string_view topology_header = "role,x_m,y_m,z_m,weight_re,weight_im";
inline constexpr char image_magic[4] = {'N', 'F', 'I', 'M'};
inline constexpr std::uint32_t image_version = 1;
inline constexpr std::size_t image_header_bytes = 56;

// Topology CSV: header line, then tx rows, then rx rows, in index order.
std::string format_topology(const ArrayTopology& topology);
ArrayTopology parse_topology(std::string_view text, const std::string& source = "<memory>");
void save_topology(const std::filesystem::path& path, const ArrayTopology& topology);
ArrayTopology load_topology(const std::filesystem::path& path);

// Binary image: "NFIM", u32 version, u32 n_x, u32 n_z, f64 R0, f64 x0, z0, dx, dz,
// then (f64 re, f64 im) per pixel, z outer. Little-endian.
std::string encode_image(const ImageField& image);
ImageField decode_image(std::string_view bytes, const std::string& source = "<memory>");
void save_image(const std::filesystem::path& path, const ImageField& image);
ImageField load_image(const std::filesystem::path& path);

/// Columns x_m,z_m,magnitude,level_db (dB relative to the image peak).
std::string format_magnitude_csv(const ImageField& image);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

} // namespace nfsas
