//
// Copyright 2026 The augtest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command line driver for the tester experiments.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "augtest/errors.h"
#include "augtest/harness.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

void ParseSweep(const std::string& arg, std::string& axis,
                std::vector<double>& values) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw augtest::ConfigError("--sweep: expected <field>=<v1,v2,...>");
  }
  axis = arg.substr(0, eq);
  std::stringstream in(arg.substr(eq + 1));
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw augtest::ConfigError("--sweep: bad value '" + item + "'");
    }
  }
  if (values.empty()) throw augtest::ConfigError("--sweep: no values");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private augmented distribution tester experiments"};
  std::string task, config_path, out, sweep;
  int64_t trials = 0;
  uint64_t seed = 0;
  int threads = 0;
  bool timing = false;
  bool serial = false;
  app.add_option("--task", task,
                 "identity | closeness | l2check | coupling | sensitivity");
  app.add_option("--config", config_path, "Sectioned key=value config file");
  auto* trials_opt = app.add_option("--trials", trials, "Number of trials");
  auto* seed_opt = app.add_option("--seed", seed, "Master seed");
  app.add_option("--out", out, "CSV output path (JSON sidecar alongside)");
  app.add_option("--sweep", sweep, "<field>=<v1,v2,...>");
  app.add_option("--threads", threads, "Worker threads, 0 = auto");
  app.add_flag("--timing", timing, "Record wall-clock seconds");
  app.add_flag("--serial", serial, "Use the serial reference runner");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    augtest::ExperimentConfig config;
    if (!config_path.empty()) config = augtest::LoadConfig(config_path);
    if (!task.empty()) config.task = augtest::ParseTask(task);
    if (trials_opt->count()) config.trials = trials;
    if (seed_opt->count()) config.master_seed = seed;
    if (!out.empty()) config.output_path = out;
    config.threads = threads;
    config.timing = timing;
    config.serial = serial;

    std::string axis;
    std::vector<double> values;
    std::vector<augtest::SummaryRow> rows;
    if (!sweep.empty()) {
      ParseSweep(sweep, axis, values);
      rows = augtest::Sweep(config, axis, values);
    } else {
      rows = augtest::RunExperiment(config);
    }
    if (config.output_path.empty()) {
      std::cout << augtest::FormatCsv(rows);
    } else {
      augtest::WriteOutputs(config.output_path, config, rows, axis, values);
    }
  } catch (const augtest::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const augtest::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return 0;
}
