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

#include <doctest.h>

#include <cmath>
#include <random>

#include "nfsas/backprojection.hpp"
#include "nfsas/error.hpp"
#include "nfsas/psf.hpp"
#include "oracle.hpp"

using namespace nfsas;

namespace {

bool throws_code(Errc code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

double rel_err(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double e = 0, n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    e += std::norm(a[i] - b[i]);
    n += std::norm(b[i]);
  }
  return std::sqrt(e / n);
}

ScatteredField field_of(const oracle::SmallInstance& inst) {
  return forward_scatter(inst.scene, inst.topo, inst.freqs);
}

// 1-D uniform-aperture pattern sin(pi u)/(pi u) sampled on a single-row grid.
ImageField sinc_image(double pitch, std::size_t half) {
  const RectGrid g = RectGrid::centered(2 * half + 1, 1, pitch, 1.0, 1.0);
  std::vector<cplx> v(g.size());
  const double pi_ = std::acos(-1.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double u = g.x(i);
    v[i] = std::abs(u) < 1e-12 ? 1.0 : std::sin(pi_ * u) / (pi_ * u);
  }
  return ImageField(ImageGrid(g), std::move(v));
}

} // namespace

TEST_CASE("bp_image matches the direct delay-and-sum formula") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = oracle::random_instance(rng, 3, 3, 8, 10);
    const auto field = field_of(inst);
    const auto img = bp_image(field, inst.topo, ImageGrid(inst.pixels));
    const auto ref = oracle::backproject(field.samples(), inst.topo, wavenumbers(inst.freqs), inst.pixels);
    CHECK(rel_err(img.values, ref) < 1e-12);
  }
}

TEST_CASE("bp_image: zero field and zero weights") {
  std::mt19937_64 rng(22);
  const auto inst = oracle::random_instance(rng, 3, 3, 5, 6);
  const ImageGrid grid(inst.pixels);
  const ScatteredField zero(inst.freqs, inst.topo.n_tx(), inst.topo.n_rx());
  for (const auto& v : bp_image(zero, inst.topo, grid).values) {
    CHECK(v == cplx{});
  }
  const auto muted = inst.topo.with_uniform_weights(Side::rx, 0.0);
  for (const auto& v : bp_image(field_of(inst), muted, grid).values) {
    CHECK(v == cplx{});
  }
  const ScatteredField wrong(inst.freqs, inst.topo.n_tx() + 1, inst.topo.n_rx());
  CHECK(throws_code(Errc::dimension_mismatch, [&] { (void)bp_image(wrong, inst.topo, grid); }));
}

TEST_CASE("bp_image is linear in the field") {
  std::mt19937_64 rng(23);
  const auto a = oracle::random_instance(rng, 3, 2, 4, 5);
  auto b = a;
  for (auto& q : b.scene.scatterers) {
    q.position.x += 0.05;
  }
  const ImageGrid grid(a.pixels);
  auto fa = field_of(a);
  const auto fb = field_of(b);
  const cplx alpha(-0.4, 2.0);
  auto sum = fa;
  sum *= alpha;
  sum += fb;
  const auto ia = bp_image(fa, a.topo, grid);
  const auto ib = bp_image(fb, a.topo, grid);
  const auto is = bp_image(sum, a.topo, grid);
  std::vector<cplx> expect(ia.size());
  for (std::size_t m = 0; m < expect.size(); ++m) {
    expect[m] = alpha * ia.values[m] + ib.values[m];
  }
  CHECK(rel_err(is.values, expect) < 1e-12);
}

TEST_CASE("sensing matrix reproduces bp_image for any weights") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (Side side : {Side::rx, Side::tx}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto inst = oracle::random_instance(rng, 3, 3, 8, 10);
      const ImageGrid grid(inst.pixels);
      const auto field = field_of(inst);
      const auto B = build_sensing_matrix(field, side, inst.topo, grid);
      const auto& cand = inst.topo.side(side);
      REQUIRE(static_cast<std::size_t>(B.cols()) == cand.size());
      REQUIRE(static_cast<std::size_t>(B.rows()) == grid.size());
      Eigen::VectorXcd w(B.cols());
      std::vector<Element> weighted;
      for (Eigen::Index n = 0; n < w.size(); ++n) {
        w[n] = cplx(u(rng), u(rng));
        weighted.push_back({cand[static_cast<std::size_t>(n)].position, w[n]});
      }
      const auto img = bp_image(field, inst.topo.with_side(side, weighted), grid);
      const Eigen::VectorXcd Bw = B.entries * w;
      CHECK(rel_err(std::vector<cplx>(Bw.data(), Bw.data() + Bw.size()), img.values) < 1e-10);
    }
  }
}

TEST_CASE("sensing matrix columns are single-element images") {
  std::mt19937_64 rng(25);
  const auto inst = oracle::random_instance(rng, 2, 2, 5, 7);
  const ImageGrid grid(inst.pixels);
  const auto field = field_of(inst);
  const auto B = build_sensing_matrix(field, Side::rx, inst.topo, grid);
  for (Eigen::Index n = 0; n < B.cols(); ++n) {
    std::vector<Element> rx = inst.topo.rx();
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      rx[static_cast<std::size_t>(j)].weight = j == n ? 1.0 : 0.0;
    }
    const auto img = bp_image(field, inst.topo.with_side(Side::rx, rx), grid);
    const Eigen::VectorXcd col = B.entries.col(n);
    CHECK(rel_err(std::vector<cplx>(col.data(), col.data() + col.size()), img.values) < 1e-12);
  }
  const ScatteredField zero(inst.freqs, inst.topo.n_tx(), inst.topo.n_rx());
  CHECK(build_sensing_matrix(zero, Side::rx, inst.topo, grid).entries.isZero(0.0));
}

TEST_CASE("point_response equals forward + bp_image") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 5; ++trial) {
    const auto inst = oracle::random_instance(rng, 4, 3, 6, 9);
    const ImageGrid grid(inst.pixels);
    Scene one;
    one.scatterers.push_back(inst.scene.scatterers[0]);
    const auto fast = point_response(one.scatterers[0], inst.topo, inst.freqs, grid);
    const auto slow = bp_image(forward_scatter(one, inst.topo, inst.freqs), inst.topo, grid);
    CHECK(rel_err(fast.values, slow.values) < 1e-10);
    const auto all = image_scene(inst.scene, inst.topo, inst.freqs, grid);
    const auto ref = bp_image(field_of(inst), inst.topo, grid);
    CHECK(rel_err(all.values, ref.values) < 1e-10);
  }
}

TEST_CASE("focus: single scatterer peaks at its pixel") {
  // 31-element rx line at lambda/4 pitch, one tx at the centre
  const FrequencyGrid freqs(30e9, 35e9, 21);
  const double pitch = 0.25 * speed_of_light / 35e9;
  std::vector<Element> rx;
  for (int i = -15; i <= 15; ++i) {
    rx.push_back({{i * pitch, 0.0, 0.0}, 1.0});
  }
  const ArrayTopology topo({{{0.0, 0.0, 0.001}, 1.0}}, rx);
  const RectGrid g = RectGrid::centered(41, 1, 0.005, 1.0, 0.5);
  const ImageGrid grid(g);
  for (std::size_t target : {std::size_t{20}, std::size_t{27}, std::size_t{9}}) {
    const auto img = point_response({grid[target], 1.0}, topo, freqs, grid);
    std::size_t best = 0;
    for (std::size_t m = 1; m < img.size(); ++m) {
      if (std::abs(img.values[m]) > std::abs(img.values[best])) {
        best = m;
      }
    }
    CHECK(best == target);
  }
}

TEST_CASE("psf: uniform-aperture sidelobe") {
  const auto img = sinc_image(0.01, 1000);
  const auto r = psf_analyze(img, {0.0, 1.0, 0.0});
  CHECK(r.peak_sidelobe_level == doctest::Approx(-13.26).epsilon(0.3 / 13.26));
  CHECK(r.peak_position.x == doctest::Approx(0.0));
  // -3 dB full width of sinc(u) is 0.8859
  CHECK(r.mainlobe_width_x == doctest::Approx(0.8859).epsilon(0.01));
  CHECK(r.mainlobe_width_z == 0.0);
  CHECK(r.grating_lobe_level == no_lobe_db);
  CHECK(r.peak_sidelobe_level <= 0.0);
}

TEST_CASE("psf: degenerate images") {
  const RectGrid g = RectGrid::centered(9, 9, 0.01, 0.01, 1.0);
  CHECK(throws_code(Errc::flat_image, [&] { (void)psf_analyze(ImageField(ImageGrid(g)), {}); }));
  std::vector<cplx> v(g.size(), 0.0);
  v[40] = 3.0;
  const auto r = psf_analyze(ImageField(ImageGrid(g), v), {});
  CHECK(r.peak_sidelobe_level == no_lobe_db);
  CHECK(r.sidelobes.empty());
  CHECK(throws_code(Errc::invalid_argument,
                    [&] { (void)psf_analyze(ImageField(ImageGrid(std::vector<Point3>{{0, 1, 0}}), {1.0}), {}); }));
}

TEST_CASE("psf: grating lobe detection") {
  // sinc plus a displaced copy 20 dB down at 10 mainlobe widths
  auto img = sinc_image(0.01, 3000);
  const auto& g = *img.grid.rect();
  const double pi_ = std::acos(-1.0);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double u = g.x(i) - 9.0;
    img.values[i] += 0.1 * (std::abs(u) < 1e-12 ? 1.0 : std::sin(pi_ * u) / (pi_ * u));
  }
  // the copy rides on the main pattern's far sidelobes; its true height is
  // the largest sample within half a width of u = 9
  double copy = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (std::abs(g.x(i) - 9.0) <= 0.5) {
      copy = std::max(copy, std::abs(img.values[i]));
    }
  }
  const auto r = psf_analyze(img, {});
  CHECK(copy > 0.09);
  CHECK(r.grating_lobe_level == doctest::Approx(20.0 * std::log10(copy / img.peak_magnitude())).epsilon(1e-9));
  CHECK(r.peak_sidelobe_level > r.grating_lobe_level);
}

TEST_CASE("psf is invariant to complex scaling") {
  std::mt19937_64 rng(27);
  const RectGrid g = RectGrid::centered(31, 21, 0.004, 0.004, 0.5);
  const ImageGrid grid(g);
  const auto inst = oracle::random_instance(rng, 3, 3, 8, 1);
  const auto img = point_response({{0.0, 0.5, 0.0}, 1.0}, inst.topo, inst.freqs, grid);
  auto scaled = img;
  for (auto& v : scaled.values) {
    v *= cplx(-3e5, 7e4);
  }
  const auto a = psf_analyze(img, {0.0, 0.5, 0.0});
  const auto b = psf_analyze(scaled, {0.0, 0.5, 0.0});
  CHECK(a.peak_position == b.peak_position);
  CHECK(a.peak_sidelobe_level == doctest::Approx(b.peak_sidelobe_level).epsilon(1e-9));
  CHECK(a.grating_lobe_level == doctest::Approx(b.grating_lobe_level).epsilon(1e-9));
  CHECK(a.mainlobe_width_x == doctest::Approx(b.mainlobe_width_x).epsilon(1e-9));
}

TEST_CASE("project_max_range") {
  const RectGrid g = RectGrid::centered(4, 3, 0.01, 0.01, 1.0);
  CHECK(throws_code(Errc::empty_input, [] { (void)project_max_range({}); }));

  std::mt19937_64 rng(28);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<ImageField> slices;
  for (int s = 0; s < 3; ++s) {
    RectGrid gs = g;
    gs.range = 1.0 + 0.01 * s;
    std::vector<cplx> v(g.size());
    for (auto& x : v) {
      x = cplx(n(rng), n(rng));
    }
    slices.emplace_back(ImageGrid(gs), v);
  }
  const auto one = project_max_range(std::span<const ImageField>(slices.data(), 1));
  for (std::size_t m = 0; m < g.size(); ++m) {
    CHECK(one.values[m] == cplx(std::abs(slices[0].values[m]), 0.0));
  }
  const auto all = project_max_range(slices);
  for (std::size_t m = 0; m < g.size(); ++m) {
    double best = 0.0;
    for (const auto& s : slices) {
      best = std::max(best, std::abs(s.values[m]));
    }
    CHECK(all.values[m].real() == best);
  }
  std::vector<ImageField> two{slices[0], slices[0]};
  for (auto& v : two[1].values) {
    v = std::abs(v) + 1.0;
  }
  const auto p2 = project_max_range(two);
  for (std::size_t m = 0; m < g.size(); ++m) {
    CHECK(p2.values[m] == two[1].values[m]);
  }
  std::vector<ImageField> bad{slices[0], ImageField(ImageGrid(RectGrid::centered(5, 3, 0.01, 0.01, 1.0)))};
  CHECK(throws_code(Errc::dimension_mismatch, [&] { (void)project_max_range(bad); }));
}
