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

#ifndef COARSE_SBM_CONFIG_H_
#define COARSE_SBM_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coarse_sbm/extended_model.h"

namespace coarse_sbm {

// Flat "key = value" store. Lines starting with '#' are comments. Unknown keys
// are rejected when an ExperimentConfig is built from the store.
class KeyValueConfig {
 public:
  static KeyValueConfig Parse(std::string_view text, std::string_view origin = "<string>");
  static KeyValueConfig Load(const std::string& path);

  // "key=value" override, as passed by --set.
  void SetAssignment(std::string_view assignment);
  void Set(const std::string& key, const std::string& value) { values_[key] = value; }

  bool Has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> Get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

enum class Sampler { kDirect, kTwoStage };

struct ExperimentConfig {
  // model.*
  int64_t n = 30000;
  int k_communities = 5;
  double alpha = 500.0;
  double beta = 50.0;
  double rho = 1e-3;
  // coarse.*
  std::vector<int> l_values{100};
  std::vector<int> coverage_values{50};
  int nu = 2;
  double tau = 0.25;
  // prior.*
  PriorSpec prior;
  // mc.*
  int trials = 0;
  uint64_t seed = 1;
  Sampler sampler = Sampler::kDirect;
  // caps.*
  int64_t exact_dp_cap = kDefaultExactCap;
  int64_t enumeration_cap = 10'000'000;
  int64_t dense_node_cap = 50000;
  // output.*
  std::string output_dir = "out";
  // regimes.*
  std::string regimes_table = "both";
  std::vector<std::string> regimes_rho_coarse;
  std::vector<std::string> regimes_rho;
  std::vector<std::string> regimes_k;
  std::optional<double> regimes_alpha;
  std::optional<double> regimes_beta;
  std::optional<int> regimes_k_communities;
  std::optional<double> regimes_delta;

  double p() const { return alpha * rho; }
  double q() const { return beta * rho; }

  // Throws kConfigError with the offending key in the message.
  static ExperimentConfig FromKeyValues(const KeyValueConfig& kv);
  // Module preconditions that do not depend on a particular sweep value.
  void Validate() const;
  // Echo of every key, in key order, as strings.
  std::map<std::string, std::string> Echo() const;
};

// "100:400:50" (inclusive range) or "10,20,30" or "50".
std::vector<int> ParseIntList(std::string_view text);

// %.17g, the CSV float format.
std::string FormatDouble(double x);

}  // namespace coarse_sbm

#endif  // COARSE_SBM_CONFIG_H_
