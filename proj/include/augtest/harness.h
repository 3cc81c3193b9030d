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

#ifndef AUGTEST_HARNESS_H_
#define AUGTEST_HARNESS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "augtest/pmf.h"

namespace augtest {

enum class Task { kIdentity, kCloseness, kL2Check, kCoupling, kSensitivity };
enum class Scenario { kNull, kFar, kAdviceClose, kCustom };

const char* TaskName(Task t);
const char* ScenarioName(Scenario s);
Task ParseTask(const std::string& name);
Scenario ParseScenario(const std::string& name);

struct ExperimentConfig {
  Task task = Task::kIdentity;
  Scenario scenario = Scenario::kNull;
  int64_t n = 100;
  double eps = 0.3;
  double alpha = 0.05;
  double xi = 1.0;
  double eta = 0.3;
  // Distance of the far alternative; 0 picks min(1/2, 1.2 eps).
  double eps_far = 0.0;
  // Sample size for the coupling task.
  int64_t s = 100;
  int64_t trials = 1000;
  uint64_t master_seed = 1;
  std::string output_path;
  std::optional<Pmf> p;
  std::optional<Pmf> q;
  std::optional<Pmf> p_hat;
  int threads = 0;
  bool serial = false;
  bool timing = false;

  // Throws ConfigError naming the offending field.
  void Validate() const;
};

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

// 95% Wilson score interval for successes out of trials.
WilsonInterval Wilson(int64_t successes, int64_t trials);

struct SummaryRow {
  std::string task;
  std::string scenario;
  int64_t n = 0;
  double eps = 0.0;
  double alpha = 0.0;
  double xi = 0.0;
  double eta = 0.0;
  std::string branch;
  int64_t s = 0;
  int64_t k = 0;
  int64_t ell = 0;
  int64_t trials = 0;
  bool has_verdicts = false;
  std::array<int64_t, 3> counts{};
  std::array<double, 3> rates{};
  std::array<WilsonInterval, 3> rate_ci{};
  // Rate the scenario bounds: "accept", "reject", "bot" or "invalid".
  std::string error_rate;
  WilsonInterval error_ci;
  double seconds = 0.0;
  std::string metric;
  double metric_value = 0.0;
  double metric_se = 0.0;
  double metric_bound = 0.0;
};

std::vector<SummaryRow> RunExperiment(const ExperimentConfig& config);

// Numeric fields: n, eps, alpha, xi, eta, eps_far, s, trials, and
// eta-minus-alpha (sets eta = alpha + value).
void SetField(ExperimentConfig& config, const std::string& axis, double value);

std::vector<SummaryRow> Sweep(const ExperimentConfig& base,
                              const std::string& axis,
                              const std::vector<double>& values);

// Sectioned key=value text ([experiment], [instance], [pmfs]).
ExperimentConfig ParseConfig(const std::string& text,
                             const std::string& base_dir = ".");
ExperimentConfig LoadConfig(const std::string& path);

std::string CsvHeader();
std::string FormatCsv(const std::vector<SummaryRow>& rows);
std::string FormatMetadata(const ExperimentConfig& config,
                           const std::vector<SummaryRow>& rows,
                           const std::string& sweep_axis,
                           const std::vector<double>& sweep_values);

// Writes <path> (CSV) and the JSON sidecar next to it.
void WriteOutputs(const std::string& path, const ExperimentConfig& config,
                  const std::vector<SummaryRow>& rows,
                  const std::string& sweep_axis = "",
                  const std::vector<double>& sweep_values = {});
std::string MetadataPath(const std::string& csv_path);

}  // namespace augtest

#endif  // AUGTEST_HARNESS_H_
