// Copyright 2026 The Coarse SBM Authors.
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

// Experiment driver. Exit codes: 0 success, 1 failure, 2 config error,
// 3 infeasible model.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coarse_sbm/config.h"
#include "coarse_sbm/errors.h"
#include "coarse_sbm/harness.h"
#include "coarse_sbm/selftest.h"

namespace {

using coarse_sbm::ErrorCode;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  bool to_stdout = false;
};

void AddCommon(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "key = value config file");
  cmd->add_option("-s,--set", opts.overrides, "override a config key (key=value)");
  cmd->add_flag("--stdout", opts.to_stdout, "print tables to stdout instead of files");
}

coarse_sbm::ExperimentConfig LoadConfig(const CommonOptions& opts) {
  coarse_sbm::KeyValueConfig kv;
  if (!opts.config_path.empty()) kv = coarse_sbm::KeyValueConfig::Load(opts.config_path);
  for (const std::string& o : opts.overrides) kv.SetAssignment(o);
  return coarse_sbm::ExperimentConfig::FromKeyValues(kv);
}

void Emit(const CommonOptions& opts, const coarse_sbm::ExperimentConfig& config,
          const std::string& name, const std::string& content) {
  if (opts.to_stdout) {
    std::cout << content;
    return;
  }
  std::filesystem::create_directories(config.output_dir);
  const std::filesystem::path path = std::filesystem::path(config.output_dir) / name;
  std::ofstream out(path, std::ios::binary);
  coarse_sbm::Require(out.good(), ErrorCode::kIoError, "cannot write " + path.string());
  out << content;
  std::cerr << "wrote " << path.string() << "\n";
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasible:
      return kExitInfeasible;
    case ErrorCode::kConfigError:
    case ErrorCode::kDivisibilityError:
    case ErrorCode::kPriorInvalid:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDomainError:
    case ErrorCode::kUnclassifiableScaling:
      return kExitConfig;
    default:
      return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coarsened stochastic block model experiments"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto* sweep = app.add_subcommand("bound-sweep", "error bound over the L and k grids");
  auto* mc = app.add_subcommand("mc", "Monte Carlo recovery experiment");
  auto* regimes = app.add_subcommand("regimes", "scaling-regime verdict table");
  auto* gen = app.add_subcommand("gen", "write one sampled instance to files");
  auto* selftest = app.add_subcommand("selftest", "run the built-in oracle checks");
  for (CLI::App* cmd : {sweep, mc, regimes, gen}) AddCommon(cmd, opts);
  int threads = 0;
  mc->add_option("-j,--threads", threads, "worker threads (default: COARSE_SBM_THREADS)");
  uint64_t selftest_seed = 7;
  selftest->add_option("--seed", selftest_seed, "seed for the random checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    if (selftest->parsed()) {
      bool all = true;
      for (const auto& r : coarse_sbm::RunSelfTests(selftest_seed)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
        all = all && r.passed;
      }
      return all ? 0 : kExitFailure;
    }
    const coarse_sbm::ExperimentConfig config = LoadConfig(opts);
    if (sweep->parsed()) {
      Emit(opts, config, "bound_sweep.csv", coarse_sbm::RunBoundSweep(config).ToString());
    } else if (mc->parsed()) {
      Emit(opts, config, "mc.csv", coarse_sbm::RunMcExperiment(config, threads).ToString());
    } else if (regimes->parsed()) {
      const auto report = coarse_sbm::RunRegimeReport(config);
      Emit(opts, config, "regimes.csv", report.table.ToString());
      if (!opts.to_stdout) Emit(opts, config, "regimes.json", report.json.dump(2) + "\n");
    } else if (gen->parsed()) {
      for (const std::string& path : coarse_sbm::GenerateInstance(config, config.output_dir)) {
        std::cerr << "wrote " << path << "\n";
      }
    }
    // Timing goes to stderr so the tables stay byte-identical across runs.
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "wall time " << elapsed.count() << " s\n";
  } catch (const coarse_sbm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
