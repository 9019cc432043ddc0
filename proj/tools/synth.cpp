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

// synth: sparse MIMO array synthesis and evaluation driver.
//
//   synth <scenario.yaml> <synthesize|image|psf|metrics|compare> [--out DIR]
//         [--seed U64] [--dynamic-range DB] [--topology FILE]
//
// Errors are reported on stderr as one JSON object; exit code 2 for input
// errors, 1 otherwise.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nfsas/error.hpp"
#include "nfsas/runner.hpp"
#include "nfsas/scenario.hpp"

namespace {

int report(const std::string& code, const std::string& message, const std::string& path, int exit_code) {
  nlohmann::ordered_json j = {{"error", {{"code", code}, {"message", message}}}};
  if (!path.empty()) {
    j["error"]["path"] = path;
  }
  std::cerr << j.dump() << std::endl;
  return exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse MIMO array synthesis for wideband near-field imaging"};
  std::string scenario_path;
  std::string command;
  std::string out;
  std::string topology;
  std::uint64_t seed = 0;
  double dynamic_range = 0.0;
  app.add_option("scenario", scenario_path, "Scenario file (YAML)")->required();
  app.add_option("command", command, "synthesize | image | psf | metrics | compare")->required();
  auto* out_opt = app.add_option("--out", out, "Output directory (default: scenario 'output')");
  auto* seed_opt = app.add_option("--seed", seed, "Seed of the random sparse baseline");
  auto* dr_opt = app.add_option("--dynamic-range", dynamic_range, "Display dynamic range in dB for metrics");
  auto* topo_opt = app.add_option("--topology", topology, "Use this synthesized topology CSV instead of synthesizing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("UsageError", e.what(), "", 2);
  }

  try {
    nfsas::apply_thread_setting();
    const nfsas::Command cmd = nfsas::parse_command(command);
    const nfsas::Scenario scenario = nfsas::load_scenario(scenario_path);
    nfsas::RunOptions opt;
    if (*out_opt) {
      opt.out = out;
    }
    if (*seed_opt) {
      opt.seed = seed;
    }
    if (*dr_opt) {
      opt.dynamic_range_db = dynamic_range;
    }
    if (*topo_opt) {
      opt.topology = topology;
    }
    return nfsas::run_scenario(scenario, cmd, opt, std::cerr);
  } catch (const nfsas::Error& e) {
    const bool input = e.code() == nfsas::Errc::parse_error || e.code() == nfsas::Errc::validation_error ||
                       e.code() == nfsas::Errc::invalid_argument || e.code() == nfsas::Errc::io_error;
    return report(std::string(nfsas::errc_name(e.code())), e.what(), e.path(), input ? 2 : 1);
  } catch (const std::exception& e) {
    return report("InternalError", e.what(), "", 1);
  }
}
