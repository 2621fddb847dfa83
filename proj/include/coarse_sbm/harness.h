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

#ifndef COARSE_SBM_HARNESS_H_
#define COARSE_SBM_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse_sbm/coarsening.h"
#include "coarse_sbm/config.h"
#include "coarse_sbm/sbm.h"

namespace coarse_sbm {

// Comma-separated, LF line endings, header first.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string ToString() const;
  // Column lookup by header name; throws kInvalidArgument when absent.
  size_t Column(const std::string& name) const;
};

// One coarse instance for a sweep point.
struct Instance {
  CoarseGraph coarse;
  ProfileMatrix truth;
  std::optional<FineGraph> fine;  // two-stage sampler only
};

// Seed of trial t under the master seed.
uint64_t TrialSeed(uint64_t master_seed, int trial);

// Direct sampling draws the truth profile from the prior and C from its
// binomial law. Two-stage sampling draws communities, a plan, the fine edges
// on the plan's supports, and coarsens. Throws kInfeasible if L * k > N.
Instance SampleInstance(const ExperimentConfig& config, int l, int coverage,
                        uint64_t trial_seed);

// One row per (L, k) point with the CO-nu error bound under all U variants.
CsvTable RunBoundSweep(const ExperimentConfig& config);

// Empirical failure and node-error rates for the MAP oracle (when within the
// enumeration cap) and the spectral baseline. threads <= 0 means
// ThreadCountFromEnv().
CsvTable RunMcExperiment(const ExperimentConfig& config, int threads = 0);

struct RegimeReport {
  CsvTable table;
  nlohmann::json json;
};

// Canonical table rows when no scalings are configured, else one row per
// configured (rho_coarse, rho, k) triple.
RegimeReport RunRegimeReport(const ExperimentConfig& config);

// Writes coarse.csv, coarse.json, binarized.csv, extended_model.json and, for
// the two-stage sampler, fine_edges.txt into `dir`. Returns the paths.
std::vector<std::string> GenerateInstance(const ExperimentConfig& config,
                                          const std::string& dir);

// COARSE_SBM_THREADS if set and positive, else the hardware concurrency.
int ThreadCountFromEnv();

}  // namespace coarse_sbm

#endif  // COARSE_SBM_HARNESS_H_
