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

#include <algorithm>
#include <cmath>
#include <random>

#include "nfsas/bpdn.hpp"
#include "nfsas/error.hpp"
#include "nfsas/solver.hpp"
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

std::vector<std::size_t> thresholded(const Eigen::VectorXcd& w, double rel = 0.01) {
  Selection s;
  s.threshold = rel;
  return select_indices(w, s);
}

// With B = I the program separates: w_n = y_n max(0, 1 - tau/|y_n|), where
// tau solves sum min(|y_n|, tau)^2 = eps.
Eigen::VectorXcd identity_solution(const Eigen::VectorXcd& y, double eps) {
  double lo = 0.0, hi = y.cwiseAbs().maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double tau = 0.5 * (lo + hi);
    double r = 0.0;
    for (Eigen::Index n = 0; n < y.size(); ++n) {
      r += std::pow(std::min(std::abs(y[n]), tau), 2);
    }
    (r < eps ? lo : hi) = tau;
  }
  const double tau = 0.5 * (lo + hi);
  Eigen::VectorXcd w(y.size());
  for (Eigen::Index n = 0; n < y.size(); ++n) {
    w[n] = y[n] * std::max(0.0, 1.0 - tau / std::abs(y[n]));
  }
  return w;
}

} // namespace

TEST_CASE("bpdn on an identity matrix matches soft thresholding") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXcd y = oracle::random_matrix(rng, 10, 1);
    const BpdnProblem p(Eigen::MatrixXcd::Identity(10, 10), y);
    const double eps = 0.2 * p.target_norm2();
    const auto s = p.solve(eps);
    REQUIRE(s.converged);
    const auto ref = identity_solution(y, eps);
    CHECK((s.w - ref).norm() <= 1e-3 * ref.norm());
    CHECK(s.residual <= eps * (1.0 + 1e-6));
    CHECK(s.residual >= eps * (1.0 - 1e-4));
  }
}

TEST_CASE("bpdn edge cases") {
  std::mt19937_64 rng(3);
  const auto B = oracle::random_matrix(rng, 6, 4);
  const Eigen::VectorXcd y = oracle::random_matrix(rng, 6, 1);
  const BpdnProblem p(B, y);

  SUBCASE("loose bound gives zero") {
    const auto s = p.solve(p.target_norm2());
    CHECK(s.w.isZero());
    CHECK(s.converged);
    CHECK(s.residual == doctest::Approx(p.target_norm2()));
  }
  SUBCASE("bound below the least-squares residual is infeasible") {
    REQUIRE(p.least_squares_residual() > 0.0);
    CHECK(throws_code(Errc::infeasible, [&] { (void)p.solve(0.5 * p.least_squares_residual()); }));
  }
  SUBCASE("objective history is non-increasing") {
    const auto s = p.solve(0.5 * (p.least_squares_residual() + p.target_norm2()));
    for (std::size_t i = 1; i < s.objective_history.size(); ++i) {
      CHECK(s.objective_history[i] <= s.objective_history[i - 1] * (1.0 + 1e-12));
    }
  }
  SUBCASE("bad weights") {
    CHECK(throws_code(Errc::invalid_argument, [&] { (void)p.solve(1.0, Eigen::VectorXd::Zero(4)); }));
    CHECK(throws_code(Errc::dimension_mismatch, [&] { (void)p.solve(1.0, Eigen::VectorXd::Ones(3)); }));
    CHECK(throws_code(Errc::invalid_argument, [&] { (void)p.solve(-1.0); }));
  }
  SUBCASE("refit is least squares on the support") {
    const auto w = p.refit({1, 3});
    CHECK(w[0] == cplx(0.0));
    CHECK(w[2] == cplx(0.0));
    Eigen::MatrixXcd sub(6, 2);
    sub << B.col(1), B.col(3);
    const Eigen::VectorXcd g = sub.adjoint() * (y - B * w);
    CHECK(g.norm() < 1e-10 * y.norm());
  }
}

TEST_CASE("planted 2-sparse recovery matches the exhaustive oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pp = oracle::planted(rng, 8, 12, 2);
    const BpdnProblem p(pp.B, pp.y);
    SynthesisConfig cfg;
    cfg.relative_epsilon = 1e-8;
    cfg.reweight_iterations = 1;
    const auto r = solve_l1(p, cfg);
    CHECK(r.converged);
    CHECK(r.residual <= r.epsilon * (1.0 + 1e-6));
    const auto best = oracle::exhaustive_support(pp.B, pp.y, r.epsilon, 2);
    REQUIRE(best.has_value());
    CHECK(best->support == pp.support);
    CHECK(thresholded(r.w) == best->support);

    cfg.reweight_iterations = 4;
    const auto rw = reweighted_l1(p, cfg);
    CHECK(rw.converged);
    CHECK(thresholded(rw.w).size() <= thresholded(r.w).size());
    for (std::size_t i = 1; i < rw.reweighting.size(); ++i) {
      CHECK(rw.reweighting[i].support <= rw.reweighting[i - 1].support);
    }
  }
}

TEST_CASE("synthesis config") {
  SynthesisConfig cfg;
  CHECK(cfg.bound(4.0) == doctest::Approx(0.04));
  cfg.epsilon = 0.5;
  CHECK(cfg.bound(4.0) == 0.5);
  cfg.relative_epsilon = -1.0;
  cfg.epsilon.reset();
  CHECK(throws_code(Errc::invalid_argument, [&] { cfg.validate(); }));
  SynthesisConfig thr;
  thr.selection.threshold = 1.5;
  CHECK(throws_code(Errc::invalid_argument, [&] { thr.validate(); }));
}

TEST_CASE("support size") {
  Eigen::VectorXcd w(4);
  w << 1.0, 1e-7, 0.0, cplx(0, 0.5);
  CHECK(support_size(w) == 2);
  CHECK(support_size(Eigen::VectorXcd::Zero(3)) == 0);
}
