// Copyright 2026 The agvctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "agv/errors.h"
#include "agv/io.h"
#include "agv/scenario.h"
#include "agv/sim.h"
#include "agv/world.h"
#include "selftest.h"

namespace agv {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string scenario;
  std::string out;
  std::vector<std::string> overrides;
  std::optional<std::int64_t> seed;
  std::string sweep_key;
  std::string sweep_values;
  int jobs = 1;
};

std::string DefaultOutRoot() {
  const char* env = std::getenv("SIM_OUT_DIR");
  return (env != nullptr && env[0] != '\0') ? env : "agvsim_out";
}

ScenarioConfig BuildConfig(const Options& opts) {
  ScenarioConfig config = LoadScenario(opts.scenario);
  for (const std::string& o : opts.overrides) ApplyOverride(o, &config);
  if (opts.seed) config.seed = *opts.seed;
  config.Validate();
  return config;
}

void WriteRunArtifacts(const fs::path& dir, const ScenarioConfig& config,
                       const RunResult& run) {
  WriteFileAtomic((dir / "trajectory.csv").string(), TrajectoryCsv(run.reference));
  WriteFileAtomic((dir / "run.csv").string(), RunCsv(run.log));
  if (config.dynamic != "none") {
    WriteFileAtomic((dir / "dynamic.csv").string(), DynamicCsv(run.log));
  }
  WriteFileAtomic((dir / "metrics.csv").string(), MetricsCsv(run.metrics));
  WriteFileAtomic((dir / "summary.txt").string(), Summary(config, run.metrics));
  WriteFileAtomic((dir / "plot.svg").string(),
                  PlotSvg(run.plan, run.reference, &run.log));
}

int DoPlan(const Options& opts, std::ostream& out) {
  const ScenarioConfig config = BuildConfig(opts);
  const PlanResult plan = PlanScenario(config);
  const fs::path dir(opts.out);
  WriteFileAtomic((dir / "trajectory.csv").string(),
                  TrajectoryCsv(plan.trajectory));
  WriteFileAtomic((dir / "plot.svg").string(),
                  PlotSvg(plan, plan.trajectory, nullptr));
  const auto& pts = plan.trajectory.points;
  out << "planned " << pts.size() << " points over "
      << FormatNumber(plan.raw.Length()) << " m of grid path, duration "
      << FormatNumber(pts.empty() ? 0.0 : pts.back().t) << " s\n"
      << "wrote " << (dir / "trajectory.csv").string() << '\n';
  return kExitOk;
}

int DoRun(const Options& opts, std::ostream& out, std::ostream& err) {
  const ScenarioConfig config = BuildConfig(opts);
  const RunResult run = RunScenario(config);
  WriteRunArtifacts(opts.out, config, run);
  out << Summary(config, run.metrics) << "wrote " << opts.out << '\n';
  if (!run.metrics.goal_reached) {
    err << "agvsim: goal not reached before the duration cap\n";
    return kExitFailure;
  }
  return kExitOk;
}

int DoCompare(const Options& opts, std::ostream& out, std::ostream& err) {
  const ScenarioConfig config = BuildConfig(opts);
  const std::vector<SchemeResult> schemes = CompareSchemes(config);
  const std::string table = CompareCsv(schemes);
  WriteFileAtomic((fs::path(opts.out) / "table.csv").string(), table);
  out << table << "wrote " << (fs::path(opts.out) / "table.csv").string()
      << '\n';
  bool all_reached = true;
  for (const SchemeResult& s : schemes) all_reached &= s.metrics.goal_reached;
  if (!all_reached) {
    err << "agvsim: at least one scheme did not reach the goal\n";
    return kExitFailure;
  }
  return kExitOk;
}

// Splits on commas that are not inside brackets, so array values survive.
std::vector<std::string> SplitValues(const std::string& text) {
  std::vector<std::string> values;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      values.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  values.push_back(current);
  for (std::string& v : values) {
    v.erase(0, v.find_first_not_of(" \t"));
    v.erase(v.find_last_not_of(" \t") + 1);
  }
  return values;
}

std::string DirName(const std::string& key, const std::string& value) {
  std::string name = key + "=" + value;
  for (char& c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
          c == '-' || c == '=' || c == '_')) {
      c = '_';
    }
  }
  return name;
}

int DoSweep(const Options& opts, std::ostream& out, std::ostream& err) {
  if (FindConfigKey(opts.sweep_key) == nullptr) {
    throw ConfigError(opts.sweep_key, 0, "unknown key");
  }
  const std::vector<std::string> values = SplitValues(opts.sweep_values);
  std::vector<ScenarioConfig> configs;
  for (const std::string& v : values) {
    Options one = opts;
    one.overrides.push_back(opts.sweep_key + "=" + v);
    configs.push_back(BuildConfig(one));
  }

  std::vector<Metrics> metrics(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        const RunResult run = RunScenario(configs[i]);
        WriteRunArtifacts(fs::path(opts.out) / DirName(opts.sweep_key, values[i]),
                          configs[i], run);
        metrics[i] = run.metrics;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::clamp(opts.jobs, 1, static_cast<int>(configs.size()));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::ostringstream csv;
  csv << "value,e_rmse,rmse_v,rmse_w,xi_error_v,xi_error_w,"
         "saturation_fraction,goal_reached\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Metrics& m = metrics[i];
    csv << '"' << values[i] << "\"," << FormatNumber(m.e_rmse) << ','
        << FormatNumber(m.rmse_v) << ',' << FormatNumber(m.rmse_w) << ','
        << FormatNumber(m.xi_error_v) << ',' << FormatNumber(m.xi_error_w)
        << ',' << FormatNumber(m.saturation_fraction) << ','
        << (m.goal_reached ? 1 : 0) << '\n';
  }
  WriteFileAtomic((fs::path(opts.out) / "sweep.csv").string(), csv.str());
  out << "sweep over " << opts.sweep_key << '\n' << csv.str();
  for (std::size_t i = 1; i < values.size(); ++i) {
    auto ratio = [](double a, double b) { return b > 0.0 ? a / b : 0.0; };
    out << "estimation-error ratio " << values[i - 1] << " / " << values[i]
        << ": v " << FormatNumber(ratio(metrics[i - 1].xi_error_v, metrics[i].xi_error_v))
        << ", w " << FormatNumber(ratio(metrics[i - 1].xi_error_w, metrics[i].xi_error_w))
        << '\n';
  }
  bool all_reached = true;
  for (const Metrics& m : metrics) all_reached &= m.goal_reached;
  if (!all_reached) {
    err << "agvsim: at least one sweep run did not reach the goal\n";
    return kExitFailure;
  }
  return kExitOk;
}

int DoSelftest(const Options& opts, std::ostream& out) {
  bool ok = true;
  for (const selftest::CheckResult& r :
       selftest::RunAll(static_cast<std::uint64_t>(opts.seed.value_or(1)))) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    ok &= r.passed;
  }
  return ok ? kExitOk : kExitInvalid;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Two-level AGV planning and tracking simulator", "agvsim");
  app.require_subcommand(1, 1);
  app.footer("Scenario keys (use with --set key=value):\n" + DescribeConfigKeys() +
             "\nExit codes: 0 success, 1 invalid input or failed check, "
             "2 runtime failure.\nSIM_OUT_DIR sets the default output root.");

  Options opts;
  opts.out = DefaultOutRoot();
  std::int64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", opts.scenario, "scenario file (TOML)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "output directory")
        ->capture_default_str();
    sub->add_option("--set", opts.overrides,
                    "override a scenario key, key=value (repeatable)");
    sub->add_option("--seed", seed, "noise seed, overrides noise.seed");
  };
  CLI::App* plan = app.add_subcommand("plan", "plan only; writes trajectory.csv and plot.svg");
  add_common(plan);
  CLI::App* run = app.add_subcommand("run", "closed-loop run of one scenario");
  add_common(run);
  CLI::App* compare = app.add_subcommand(
      "compare", "MPC+PID, A*+MPC and MPC+MPC on one scenario; writes table.csv");
  add_common(compare);
  CLI::App* sweep = app.add_subcommand("sweep", "vary one key over a list of values");
  add_common(sweep);
  sweep->add_option("--key", opts.sweep_key, "scenario key to vary")->required();
  sweep->add_option("--values", opts.sweep_values,
                    "comma-separated values, e.g. 0.04,0.02,0.01")
      ->required();
  sweep->add_option("--jobs", opts.jobs, "parallel runs")->capture_default_str();
  CLI::App* self = app.add_subcommand("selftest", "run the built-in oracle suites");
  self->add_option("--seed", seed, "random seed for the suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    if (sub->count("--seed") > 0) opts.seed = seed;
  }

  try {
    if (*plan) return DoPlan(opts, out);
    if (*run) return DoRun(opts, out, err);
    if (*compare) return DoCompare(opts, out, err);
    if (*sweep) return DoSweep(opts, out, err);
    return DoSelftest(opts, out);
  } catch (const ConfigError& e) {
    err << "agvsim: config error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "agvsim: invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const SolverFailure& e) {
    err << "agvsim: solver failure in " << e.stage() << " at window "
        << e.window() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "agvsim: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace agv
