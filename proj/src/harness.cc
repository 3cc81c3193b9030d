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

#include "augtest/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "augtest/closeness_tester.h"
#include "augtest/dp_mech.h"
#include "augtest/errors.h"
#include "augtest/flattening.h"
#include "augtest/hard_instances.h"
#include "augtest/identity_tester.h"
#include "augtest/samples.h"
#include "augtest/trial_runner.h"
#include "json.hpp"

namespace augtest {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr char kVersion[] = "0.1.0";
constexpr uint64_t kInstanceStream = 0xfeedfacecafebeefULL;

// Pairwise-bias family on any n >= 2; odd n pads a zero-mass last element.
HardFamily FamilyFor(int64_t n, double eta, double eps_prime,
                     double alpha_prime) {
  return {n - n % 2, eta, eps_prime, alpha_prime};
}

Pmf Pad(int64_t n, Pmf p) { return n % 2 == 0 ? p : PadOddDomain(p); }

double FarDistance(const ExperimentConfig& c) {
  return c.eps_far > 0.0 ? c.eps_far : std::min(0.5, 1.2 * c.eps);
}

Pmf FarAlternative(const ExperimentConfig& c) {
  Rng rng = Rng(c.master_seed).Split(kInstanceStream);
  return Pad(c.n, PBullet(FamilyFor(c.n, 0.0, FarDistance(c), 0.0), rng));
}

struct Instance {
  Pmf p = Pmf::Uniform(1);
  Pmf q = Pmf::Uniform(1);
  Pmf p_hat = Pmf::Uniform(1);
};

Instance Resolve(const ExperimentConfig& c) {
  Instance in;
  if (c.scenario == Scenario::kCustom) {
    in.p = *c.p;
    in.q = *c.q;
    in.p_hat = *c.p_hat;
    return in;
  }
  const Pmf uniform = Pmf::Uniform(c.n);
  in.q = uniform;
  switch (c.task) {
    case Task::kIdentity:
      in.p_hat = Pad(c.n, AdvicePhat(FamilyFor(c.n, c.eta, 0.0, 0.0)));
      in.p = c.scenario == Scenario::kNull   ? in.q
             : c.scenario == Scenario::kFar  ? FarAlternative(c)
                                             : in.p_hat;
      break;
    case Task::kCloseness:
      if (c.scenario == Scenario::kFar) {
        in.p = FarAlternative(c);
        in.p_hat = in.p;
      } else if (c.scenario == Scenario::kNull) {
        in.p = uniform;
        in.p_hat = Pad(c.n, AdvicePhat(FamilyFor(c.n, c.alpha / 2.0, 0.0, 0.0)));
      } else {
        in.p = uniform;
        in.p_hat = uniform;
      }
      break;
    case Task::kL2Check: {
      const HardFamily fam = FamilyFor(c.n, c.eta, 0.0, c.alpha);
      in.p_hat = Pad(c.n, AdvicePhat(fam));
      in.p = c.scenario == Scenario::kNull   ? Pad(c.n, PDiamond(fam))
             : c.scenario == Scenario::kFar  ? uniform
                                             : in.p_hat;
      break;
    }
    case Task::kCoupling:
    case Task::kSensitivity:
      in.p = uniform;
      in.p_hat = uniform;
      break;
  }
  return in;
}

void FillVerdicts(SummaryRow& row, const Tally& t, const std::string& error) {
  row.has_verdicts = true;
  const int64_t total = t.verdict_total();
  if (total != row.trials) throw InvariantViolation("tally lost trials");
  for (int v = 0; v < 3; ++v) {
    row.counts[v] = t.verdicts[v];
    row.rates[v] = static_cast<double>(t.verdicts[v]) / total;
    row.rate_ci[v] = Wilson(t.verdicts[v], total);
  }
  const double sum = row.rates[0] + row.rates[1] + row.rates[2];
  if (std::abs(sum - 1.0) > 1e-9) throw InvariantViolation("rates do not sum to 1");
  row.error_rate = error;
  int64_t errors = 0;
  if (error == "accept") errors = t.count(Outcome::kAccept);
  if (error == "reject") errors = t.count(Outcome::kReject);
  if (error == "bot") errors = t.count(Outcome::kBot);
  if (error == "invalid") {
    errors = t.count(Outcome::kReject) + t.count(Outcome::kBot);
  }
  row.error_ci = Wilson(errors, total);
  const double r = static_cast<double>(errors) / total;
  if (row.error_ci.lo > r + 1e-12 || row.error_ci.hi < r - 1e-12) {
    throw InvariantViolation("Wilson interval excludes its estimate");
  }
  row.metric = error + "_rate";
  row.metric_value = r;
  row.metric_se = std::sqrt(r * (1.0 - r) / total);
  row.metric_bound = kNaN;
}

void FillMetric(SummaryRow& row, const Tally& t, const std::string& name,
                double bound) {
  row.metric = name;
  const auto c = static_cast<double>(t.metric_count);
  const double mean = static_cast<double>(t.metric_sum) / c;
  const double var =
      c > 1 ? (static_cast<double>(t.metric_sumsq) - c * mean * mean) / (c - 1)
            : 0.0;
  row.metric_value = mean;
  row.metric_se = std::sqrt(std::max(var, 0.0) / c);
  row.metric_bound = bound;
}

Tally Run(const ExperimentConfig& c, const TrialFn& fn) {
  return c.serial ? RunTrialsSerial(c.trials, c.master_seed, fn)
                  : RunTrialsParallel(c.trials, c.master_seed, fn, c.threads);
}

SummaryRow BaseRow(const ExperimentConfig& c) {
  SummaryRow row;
  row.task = TaskName(c.task);
  row.scenario = ScenarioName(c.scenario);
  row.n = c.n;
  row.eps = c.eps;
  row.alpha = c.alpha;
  row.xi = c.xi;
  row.eta = c.eta;
  row.trials = c.trials;
  row.error_ci = {kNaN, kNaN};
  row.metric_value = row.metric_se = row.metric_bound = kNaN;
  return row;
}

std::string IdentityError(Scenario s) {
  switch (s) {
    case Scenario::kFar:
      return "accept";
    case Scenario::kAdviceClose:
      return "bot";
    default:
      return "reject";
  }
}

std::string ClosenessError(Scenario s) {
  switch (s) {
    case Scenario::kFar:
      return "accept";
    case Scenario::kAdviceClose:
      return "bot";
    default:
      return "invalid";
  }
}

SummaryRow RunIdentity(const ExperimentConfig& c) {
  const Instance in = Resolve(c);
  const IdentityTester tester(IdentityInstance::Create(
      in.q, AdviceSpec{in.p_hat, c.alpha}, c.eps, PrivacyBudget(c.xi)));
  const SampleOracle source(in.p);
  SummaryRow row = BaseRow(c);
  row.eta = tester.instance().eta();
  row.branch = BranchName(tester.branch());
  row.s = tester.s();
  const Tally t = Run(c, [&](int64_t, Rng& rng) {
    Tally one;
    const IdentityResult r = tester.Run(source, rng);
    if (r.branch == Branch::kAugmented && r.outcome == Outcome::kAccept) {
      throw InvariantViolation("augmented identity branch returned ACCEPT");
    }
    one.AddVerdict(r.outcome);
    return one;
  });
  FillVerdicts(row, t, IdentityError(c.scenario));
  return row;
}

SummaryRow RunCloseness(const ExperimentConfig& c) {
  const Instance in = Resolve(c);
  const ClosenessSchedule sched = Schedule(c.n, c.eps, c.alpha, c.xi);
  const SampleOracle p_source(in.p);
  const SampleOracle q_source(in.q);
  const AdviceSpec advice{in.p_hat, c.alpha};
  SummaryRow row = BaseRow(c);
  row.eta = TvDistance(in.p_hat, in.q);
  row.branch = BranchName(sched.branch);
  row.s = sched.s;
  row.k = sched.k;
  row.ell = sched.ell;
  const Tally t = Run(c, [&](int64_t, Rng& rng) {
    Tally one;
    one.AddVerdict(
        AugmentedClosenessTest(p_source, q_source, advice, c.n, c.eps, c.xi, rng)
            .outcome);
    return one;
  });
  FillVerdicts(row, t, ClosenessError(c.scenario));
  return row;
}

SummaryRow RunL2Check(const ExperimentConfig& c) {
  const Instance in = Resolve(c);
  const ClosenessSchedule sched =
      Schedule(c.n, c.eps, c.alpha, c.xi, /*force_augmented=*/true);
  SummaryRow row = BaseRow(c);
  row.eta = TvDistance(in.p_hat, in.q);
  row.branch = BranchName(sched.branch);
  row.k = sched.k;
  row.ell = sched.ell;
  const Tally t = Run(c, [&](int64_t, Rng& rng) {
    Tally one;
    const L2StageSample r = L2StageTrial(in.p, in.q, in.p_hat, sched, c.n, rng);
    one.AddVerdict(r.result.pass ? Outcome::kAccept : Outcome::kBot);
    one.AddMetric(std::abs(r.result.l_tilde - r.truth) > r.truth / 2.0 ? 1 : 0);
    return one;
  });
  FillVerdicts(row, t, c.scenario == Scenario::kFar ? "accept" : "bot");
  FillMetric(row, t, "l2_rel_error_freq", 0.06);
  return row;
}

SummaryRow RunCoupling(const ExperimentConfig& c) {
  const HardFamily fam{c.n, c.eta, 0.0, c.alpha};
  fam.Validate();
  SummaryRow row = BaseRow(c);
  row.branch = "";
  row.s = c.s;
  const Tally t = Run(c, [&](int64_t, Rng& rng) {
    Tally one;
    one.AddMetric(CoupleDiamond(fam, c.s, rng).hamming);
    return one;
  });
  FillMetric(row, t, "hamming",
             static_cast<double>(c.s) * (c.eta - c.alpha));
  return row;
}

// Exhaustive sensitivity rows on small fixed shapes.
std::vector<SummaryRow> RunSensitivity(const ExperimentConfig& c) {
  std::vector<SummaryRow> rows;
  auto add = [&](const std::string& name, int64_t n, int64_t s, int64_t k,
                 int64_t ell, double value, double bound) {
    SummaryRow row = BaseRow(c);
    row.trials = 1;
    row.n = n;
    row.s = s;
    row.k = k;
    row.ell = ell;
    row.metric = name;
    row.metric_value = value;
    row.metric_bound = bound;
    rows.push_back(row);
  };

  {
    const int64_t n = std::clamp<int64_t>(c.n, 2, 5);
    const int64_t s = std::clamp<int64_t>(c.s, 1, 6);
    std::vector<int64_t> S;
    for (int64_t i = 0; i < n / 2; ++i) S.push_back(i);
    DatasetFamily fam{{{n, s}}, nullptr};
    const auto d = ExhaustiveSensitivity(
        [&](const CountDataset& x) {
          return SigmaStatistic(SampleMultiset::FromCounts(n, x[0]), S);
        },
        fam);
    add("delta_sigma", n, s, 0, 0, d.value, 1.0 / static_cast<double>(s));
  }
  {
    const int64_t m = 3, k = 4, ell = 4;
    const double A = 2.0;
    DatasetFamily fam{{{m, k}, {m, ell}}, [&](const CountDataset& x) {
                        return RoleBalanced(x[1], ell, x[0], k, A);
                      }};
    const auto d = ExhaustiveSensitivity(
        [](const CountDataset& x) { return LbarFromCounts(x[1], x[0]); }, fam);
    add("delta_lbar", m, 0, k, ell, d.value,
        LbarSensitivityBound({A, k, ell}).value);
  }
  {
    const int64_t m = 3, s = 4, k_side = 2;
    const double A = 2.0;
    DatasetFamily fam{{{m, 2 * k_side}, {m, s}, {m, s}},
                      [&](const CountDataset& x) {
                        return RoleBalanced(x[1], s, x[0], 2 * k_side, A) &&
                               RoleBalanced(x[2], s, x[0], 2 * k_side, A);
                      }};
    const auto d = ExhaustiveSensitivity(
        [](const CountDataset& x) { return ZbarFromCounts(x[1], x[2], x[0]); },
        fam);
    add("delta_zbar", m, s, k_side, 0, d.value,
        4.0 * static_cast<double>(s + k_side) / static_cast<double>(k_side));
  }
  return rows;
}

std::string Num(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string Trimmed(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n\"");
  const auto e = s.find_last_not_of(" \t\r\n\"");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double ToDouble(const std::string& field, const std::string& v) {
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("config field '" + field + "': not a number: " + v);
}

int64_t ToInt(const std::string& field, const std::string& v) {
  const double x = ToDouble(field, v);
  if (x != std::floor(x) || std::abs(x) > 9.0e15) {
    throw ConfigError("config field '" + field + "': not an integer: " + v);
  }
  return static_cast<int64_t>(x);
}

}  // namespace

const char* TaskName(Task t) {
  switch (t) {
    case Task::kIdentity:
      return "identity";
    case Task::kCloseness:
      return "closeness";
    case Task::kL2Check:
      return "l2check";
    case Task::kCoupling:
      return "coupling";
    case Task::kSensitivity:
      return "sensitivity";
  }
  return "?";
}

const char* ScenarioName(Scenario s) {
  switch (s) {
    case Scenario::kNull:
      return "null";
    case Scenario::kFar:
      return "far";
    case Scenario::kAdviceClose:
      return "advice-close";
    case Scenario::kCustom:
      return "custom";
  }
  return "?";
}

Task ParseTask(const std::string& name) {
  for (Task t : {Task::kIdentity, Task::kCloseness, Task::kL2Check,
                 Task::kCoupling, Task::kSensitivity}) {
    if (name == TaskName(t)) return t;
  }
  throw ConfigError("config field 'task': unknown task '" + name + "'");
}

Scenario ParseScenario(const std::string& name) {
  for (Scenario s : {Scenario::kNull, Scenario::kFar, Scenario::kAdviceClose,
                     Scenario::kCustom}) {
    if (name == ScenarioName(s)) return s;
  }
  throw ConfigError("config field 'scenario': unknown scenario '" + name + "'");
}

void ExperimentConfig::Validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
  };
  if (trials < 1) fail("trials", "must be >= 1");
  if (n < 2) fail("n", "must be >= 2");
  if (!(eps > 0.0 && eps <= 1.0)) fail("eps", "must lie in (0, 1]");
  if (!(alpha >= 0.0 && alpha < 1.0)) fail("alpha", "must lie in [0, 1)");
  if (!(xi > 0.0)) fail("xi", "must be > 0");
  if (!(eta >= 0.0 && eta < 0.5)) fail("eta", "must lie in [0, 1/2)");
  if (s < 0) fail("s", "must be >= 0");
  if (eps_far < 0.0 || eps_far > 0.5) fail("eps_far", "must lie in [0, 1/2]");
  if (scenario == Scenario::kFar &&
      (task == Task::kIdentity || task == Task::kCloseness) &&
      !(FarDistance(*this) > eps)) {
    fail("eps_far", "far alternative must be farther than eps (eps < 1/2)");
  }
  if (task == Task::kCoupling || task == Task::kL2Check) {
    if (alpha > eta) fail("alpha", "must not exceed eta for this task");
  }
  if (task == Task::kCoupling && n % 2 != 0) fail("n", "must be even");
  if (scenario == Scenario::kCustom) {
    if (!p || !q || !p_hat) fail("pmfs", "custom scenario needs p, q and p_hat");
    if (p->n() != n || q->n() != n || p_hat->n() != n) {
      fail("pmfs", "lengths must equal n");
    }
  }
}

WilsonInterval Wilson(int64_t successes, int64_t trials) {
  constexpr double z = 1.959963984540054;
  const double t = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (ph + z2 / (2.0 * t)) / denom;
  const double half =
      z / denom * std::sqrt(ph * (1.0 - ph) / t + z2 / (4.0 * t * t));
  return {successes == 0 ? 0.0 : std::max(0.0, center - half),
          successes == trials ? 1.0 : std::min(1.0, center + half)};
}

std::vector<SummaryRow> RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<SummaryRow> rows;
  try {
    switch (config.task) {
      case Task::kIdentity:
        rows.push_back(RunIdentity(config));
        break;
      case Task::kCloseness:
        rows.push_back(RunCloseness(config));
        break;
      case Task::kL2Check:
        rows.push_back(RunL2Check(config));
        break;
      case Task::kCoupling:
        rows.push_back(RunCoupling(config));
        break;
      case Task::kSensitivity:
        rows = RunSensitivity(config);
        break;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (config.timing) {
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    for (SummaryRow& r : rows) r.seconds = secs;
  }
  return rows;
}

void SetField(ExperimentConfig& c, const std::string& axis, double v) {
  if (axis == "n") {
    c.n = ToInt(axis, Num(v));
  } else if (axis == "eps") {
    c.eps = v;
  } else if (axis == "alpha") {
    c.alpha = v;
  } else if (axis == "xi") {
    c.xi = v;
  } else if (axis == "eta") {
    c.eta = v;
  } else if (axis == "eps_far") {
    c.eps_far = v;
  } else if (axis == "s") {
    c.s = ToInt(axis, Num(v));
  } else if (axis == "trials") {
    c.trials = ToInt(axis, Num(v));
  } else if (axis == "eta-minus-alpha") {
    c.eta = c.alpha + v;
  } else {
    throw ConfigError("sweep: unknown axis '" + axis + "'");
  }
}

std::vector<SummaryRow> Sweep(const ExperimentConfig& base,
                              const std::string& axis,
                              const std::vector<double>& values) {
  std::vector<SummaryRow> rows;
  for (double v : values) {
    ExperimentConfig c = base;
    SetField(c, axis, v);
    for (SummaryRow& r : RunExperiment(c)) rows.push_back(std::move(r));
  }
  return rows;
}

ExperimentConfig ParseConfig(const std::string& text,
                             const std::string& base_dir) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  ExperimentConfig c;
  static const std::set<std::string> kSections = {"experiment", "instance",
                                                  "pmfs"};
  auto load_pmf = [&](const std::string& field, const std::string& v) {
    try {
      if (v.rfind("file:", 0) == 0) {
        std::filesystem::path path(v.substr(5));
        if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
        return LoadPmf(path.string());
      }
      return ParsePmf(v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("config field '" + field + "': " + e.what());
    }
  };
  for (const auto& [section, body] : tree) {
    if (!kSections.count(section)) {
      throw ConfigError("config: unknown section [" + section + "]");
    }
    for (const auto& [key, node] : body) {
      const std::string field = section + "." + key;
      const std::string v = Trimmed(node.data());
      if (section == "experiment") {
        if (key == "task") {
          c.task = ParseTask(v);
        } else if (key == "scenario") {
          c.scenario = ParseScenario(v);
        } else if (key == "trials") {
          c.trials = ToInt(field, v);
        } else if (key == "seed") {
          c.master_seed = static_cast<uint64_t>(ToInt(field, v));
        } else if (key == "output") {
          c.output_path = v;
        } else {
          throw ConfigError("config: unknown field '" + field + "'");
        }
      } else if (section == "instance") {
        if (key == "n") {
          c.n = ToInt(field, v);
        } else if (key == "eps") {
          c.eps = ToDouble(field, v);
        } else if (key == "alpha") {
          c.alpha = ToDouble(field, v);
        } else if (key == "xi") {
          c.xi = ToDouble(field, v);
        } else if (key == "eta") {
          c.eta = ToDouble(field, v);
        } else if (key == "eps_far") {
          c.eps_far = ToDouble(field, v);
        } else if (key == "s") {
          c.s = ToInt(field, v);
        } else {
          throw ConfigError("config: unknown field '" + field + "'");
        }
      } else {
        if (key == "p") {
          c.p = load_pmf(field, v);
        } else if (key == "q") {
          c.q = load_pmf(field, v);
        } else if (key == "p_hat") {
          c.p_hat = load_pmf(field, v);
        } else {
          throw ConfigError("config: unknown field '" + field + "'");
        }
      }
    }
  }
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str(),
                     std::filesystem::path(path).parent_path().string());
}

std::string CsvHeader() {
  return "scenario,n,eps,alpha,xi,eta,branch,s,k,ell,accept_rate,reject_rate,"
         "bot_rate,ci_lo,ci_hi,seconds,task,error_rate,metric,metric_value,"
         "metric_se,metric_bound";
}

std::string FormatCsv(const std::vector<SummaryRow>& rows) {
  std::string out = CsvHeader() + "\n";
  for (const SummaryRow& r : rows) {
    std::vector<std::string> f = {
        r.scenario, std::to_string(r.n), Num(r.eps), Num(r.alpha), Num(r.xi),
        Num(r.eta), r.branch, std::to_string(r.s), std::to_string(r.k),
        std::to_string(r.ell)};
    for (int v = 0; v < 3; ++v) f.push_back(r.has_verdicts ? Num(r.rates[v]) : "");
    f.push_back(r.has_verdicts ? Num(r.error_ci.lo) : "");
    f.push_back(r.has_verdicts ? Num(r.error_ci.hi) : "");
    f.push_back(Num(r.seconds));
    f.push_back(r.task);
    f.push_back(r.error_rate);
    f.push_back(r.metric);
    f.push_back(Num(r.metric_value));
    f.push_back(Num(r.metric_se));
    f.push_back(Num(r.metric_bound));
    for (size_t i = 0; i < f.size(); ++i) {
      if (i) out += ',';
      out += f[i];
    }
    out += '\n';
  }
  return out;
}

std::string FormatMetadata(const ExperimentConfig& c,
                           const std::vector<SummaryRow>& rows,
                           const std::string& sweep_axis,
                           const std::vector<double>& sweep_values) {
  using Json = nlohmann::ordered_json;
  auto num = [](double x) { return std::isnan(x) ? Json(nullptr) : Json(x); };
  Json meta;
  meta["tool"] = "augtest";
  meta["version"] = kVersion;
  meta["master_seed"] = c.master_seed;
  Json cfg;
  cfg["task"] = TaskName(c.task);
  cfg["scenario"] = ScenarioName(c.scenario);
  cfg["n"] = c.n;
  cfg["eps"] = c.eps;
  cfg["alpha"] = c.alpha;
  cfg["xi"] = c.xi;
  cfg["eta"] = c.eta;
  cfg["eps_far"] = c.eps_far;
  cfg["s"] = c.s;
  cfg["trials"] = c.trials;
  cfg["timing"] = c.timing;
  for (const auto& [name, pmf] :
       {std::pair{"p", &c.p}, std::pair{"q", &c.q}, std::pair{"p_hat", &c.p_hat}}) {
    if (*pmf) cfg[name] = (*pmf)->probs();
  }
  meta["config"] = cfg;
  if (!sweep_axis.empty()) {
    meta["sweep"] = {{"axis", sweep_axis}, {"values", sweep_values}};
  }
  meta["columns"] = CsvHeader();
  Json jrows = Json::array();
  for (const SummaryRow& r : rows) {
    Json j;
    j["task"] = r.task;
    j["scenario"] = r.scenario;
    j["branch"] = r.branch;
    j["budgets"] = {{"s", r.s}, {"k", r.k}, {"ell", r.ell}};
    j["trials"] = r.trials;
    if (r.has_verdicts) {
      const char* names[3] = {"accept", "reject", "bot"};
      for (int v = 0; v < 3; ++v) {
        j["verdicts"][names[v]] = {{"count", r.counts[v]},
                                   {"rate", r.rates[v]},
                                   {"ci", {r.rate_ci[v].lo, r.rate_ci[v].hi}}};
      }
      j["error_rate"] = r.error_rate;
    }
    j["metric"] = {{"name", r.metric},
                   {"value", num(r.metric_value)},
                   {"se", num(r.metric_se)},
                   {"bound", num(r.metric_bound)}};
    jrows.push_back(j);
  }
  meta["rows"] = jrows;
  return meta.dump(2) + "\n";
}

std::string MetadataPath(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".json");
  if (p.string() == csv_path) p += ".meta.json";
  return p.string();
}

void WriteOutputs(const std::string& path, const ExperimentConfig& config,
                  const std::vector<SummaryRow>& rows,
                  const std::string& sweep_axis,
                  const std::vector<double>& sweep_values) {
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw ConfigError("output: cannot write " + path);
  csv << FormatCsv(rows);
  std::ofstream meta(MetadataPath(path), std::ios::binary);
  if (!meta) throw ConfigError("output: cannot write " + MetadataPath(path));
  meta << FormatMetadata(config, rows, sweep_axis, sweep_values);
}

}  // namespace augtest
