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

#include "nfsas/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "nfsas/error.hpp"

namespace nfsas {

static_assert(std::endian::native == std::endian::little, "image format assumes a little-endian host");

namespace {

std::string fmt17(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

double parse_number(std::string_view tok, const std::string& source, std::size_t line, const char* field) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') {
    ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (tok.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << source << ":" << line << ": bad " << field << " value '" << tok << "'";
    throw Error(Errc::parse_error, msg.str(), field);
  }
  return v;
}

} // namespace

std::string format_topology(const ArrayTopology& topology) {
  std::string out(topology_header);
  out += '\n';
  for (Side s : {Side::tx, Side::rx}) {
    for (const auto& e : topology.side(s)) {
      out += side_name(s);
      for (double v : {e.position.x, e.position.y, e.position.z, e.weight.real(), e.weight.imag()}) {
        out += ',';
        out += fmt17(v);
      }
      out += '\n';
    }
  }
  return out;
}

ArrayTopology parse_topology(std::string_view text, const std::string& source) {
  std::vector<Element> tx;
  std::vector<Element> rx;
  std::size_t line_no = 0;
  bool seen_rx = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line_no == 1) {
      if (line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF") {
        line.remove_prefix(3);
      }
      if (line != topology_header) {
        throw Error(Errc::parse_error, source + ":1: expected header '" + std::string(topology_header) + "'");
      }
      continue;
    }
    if (line.empty()) {
      if (pos >= text.size()) {
        break;
      }
      throw Error(Errc::parse_error, source + ":" + std::to_string(line_no) + ": empty line");
    }
    std::vector<std::string_view> tok;
    std::size_t a = 0;
    while (true) {
      const std::size_t c = line.find(',', a);
      tok.push_back(line.substr(a, c == std::string_view::npos ? std::string_view::npos : c - a));
      if (c == std::string_view::npos) {
        break;
      }
      a = c + 1;
    }
    if (tok.size() != 6) {
      std::ostringstream msg;
      msg << source << ":" << line_no << ": expected 6 fields, found " << tok.size();
      throw Error(Errc::parse_error, msg.str());
    }
    Element e;
    e.position.x = parse_number(tok[1], source, line_no, "x_m");
    e.position.y = parse_number(tok[2], source, line_no, "y_m");
    e.position.z = parse_number(tok[3], source, line_no, "z_m");
    e.weight = {parse_number(tok[4], source, line_no, "weight_re"), parse_number(tok[5], source, line_no, "weight_im")};
    if (tok[0] == "tx") {
      if (seen_rx) {
        throw Error(Errc::parse_error, source + ":" + std::to_string(line_no) + ": tx row after rx rows", "role");
      }
      tx.push_back(e);
    } else if (tok[0] == "rx") {
      seen_rx = true;
      rx.push_back(e);
    } else {
      throw Error(Errc::parse_error,
                  source + ":" + std::to_string(line_no) + ": role must be 'tx' or 'rx', got '" + std::string(tok[0]) +
                      "'",
                  "role");
    }
  }
  if (line_no == 0) {
    throw Error(Errc::parse_error, source + ": empty topology file");
  }
  try {
    return ArrayTopology(std::move(tx), std::move(rx));
  } catch (const Error& e) {
    throw Error(Errc::validation_error, source + ": " + e.what());
  }
}

void save_topology(const std::filesystem::path& path, const ArrayTopology& topology) {
  write_file_atomic(path, format_topology(topology));
}

ArrayTopology load_topology(const std::filesystem::path& path) {
  return parse_topology(read_file(path), path.string());
}

namespace {

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <class T>
T get(std::string_view bytes, std::size_t& at) {
  T v;
  std::memcpy(&v, bytes.data() + at, sizeof(T));
  at += sizeof(T);
  return v;
}

} // namespace

std::string encode_image(const ImageField& image) {
  const RectGrid& g = image.grid.require_rect();
  std::string out;
  out.reserve(image_header_bytes + 16 * image.size());
  out.append(image_magic, 4);
  put<std::uint32_t>(out, image_version);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_x));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_z));
  for (double v : {g.range, g.x0, g.z0, g.dx, g.dz}) {
    put<double>(out, v);
  }
  for (const auto& v : image.values) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
  return out;
}

ImageField decode_image(std::string_view bytes, const std::string& source) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), image_magic, 4) != 0) {
    throw Error(Errc::magic_mismatch, source + ": not an NFIM image");
  }
  if (bytes.size() < image_header_bytes) {
    throw Error(Errc::truncated_file, source + ": header truncated");
  }
  std::size_t at = 4;
  const auto version = get<std::uint32_t>(bytes, at);
  if (version != image_version) {
    throw Error(Errc::parse_error, source + ": unsupported image version " + std::to_string(version));
  }
  RectGrid g;
  g.n_x = get<std::uint32_t>(bytes, at);
  g.n_z = get<std::uint32_t>(bytes, at);
  g.range = get<double>(bytes, at);
  g.x0 = get<double>(bytes, at);
  g.z0 = get<double>(bytes, at);
  g.dx = get<double>(bytes, at);
  g.dz = get<double>(bytes, at);
  const std::size_t n = g.n_x * g.n_z;
  if (bytes.size() < image_header_bytes + 16 * n) {
    std::ostringstream msg;
    msg << source << ": expected " << image_header_bytes + 16 * n << " bytes, found " << bytes.size();
    throw Error(Errc::truncated_file, msg.str());
  }
  std::vector<cplx> values(n);
  for (auto& v : values) {
    const double re = get<double>(bytes, at);
    const double im = get<double>(bytes, at);
    v = {re, im};
  }
  return ImageField(ImageGrid(g), std::move(values));
}

void save_image(const std::filesystem::path& path, const ImageField& image) {
  write_file_atomic(path, encode_image(image));
}

ImageField load_image(const std::filesystem::path& path) { return decode_image(read_file(path), path.string()); }

std::string format_magnitude_csv(const ImageField& image) {
  const double peak = image.peak_magnitude();
  std::string out = "x_m,z_m,magnitude,level_db\n";
  for (std::size_t m = 0; m < image.size(); ++m) {
    const Point3& p = image.grid[m];
    const double mag = std::abs(image.values[m]);
    const double db = peak > 0.0 && mag > 0.0 ? 20.0 * std::log10(mag / peak) : -std::numeric_limits<double>::infinity();
    out += fmt17(p.x) + ',' + fmt17(p.z) + ',' + fmt17(mag) + ',' + (std::isfinite(db) ? fmt17(db) : "-inf") + '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_error, "cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(Errc::io_error, "cannot open '" + tmp.string() + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
      throw Error(Errc::io_error, "write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::io_error, "cannot rename onto '" + path.string() + "'");
  }
}

} // namespace nfsas
