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

#ifndef COARSE_SBM_RECOVERY_H_
#define COARSE_SBM_RECOVERY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "coarse_sbm/coarsening.h"
#include "coarse_sbm/extended_model.h"

namespace coarse_sbm {

inline constexpr int64_t kDefaultEnumerationCap = 10'000'000;

// One extended-community index per c-node.
struct ProfileEstimate {
  std::vector<int> assignments;
  double score = 0.0;  // log-posterior under the extended SBM
  std::vector<std::string> warnings;
};

struct EvalResult {
  bool exact_recovery = false;
  double node_error_rate = 0.0;
  int mismatches = 0;
  std::vector<int> best_permutation;  // truth community c is read as best_permutation[c]
};

// sum_i log s_{x_i} + sum_{i>j} [A_ij log U + (1 - A_ij) log(1 - U)], with U
// clipped to [1e-12, 1 - 1e-12].
double LogPosterior(const BinarizedGraph& graph, const ExtendedSbm& model,
                    const std::vector<int>& labels, UVariant variant = UVariant::kMean);

// Exhaustive MAP over all K_nu^L labelings. Ties keep the lexicographically
// smallest labeling. Throws kCapExceeded when K_nu^L exceeds `cap`.
ProfileEstimate MapExhaustive(const BinarizedGraph& graph, const ExtendedSbm& model,
                              int64_t cap = kDefaultEnumerationCap);

struct SpectralOptions {
  uint64_t seed = 0;
  int restarts = 100;
  int max_iterations = 300;
};

// Top-K_nu eigenvectors of D^{-1/2} A D^{-1/2}, k-means++ on the rows, then a
// greedy cluster-to-profile mapping that maximizes the log-posterior.
ProfileEstimate SpectralBaseline(const BinarizedGraph& graph, const ExtendedSbm& model,
                                 const SpectralOptions& options = {});

// Best match over the K! relabelings of the original communities. Throws
// kTooManyCommunities for K > 8 and kLengthMismatch on size disagreement.
EvalResult Evaluate(const ProfileEstimate& estimate, const ProfileMatrix& truth,
                    const std::vector<Profile>& profiles);

}  // namespace coarse_sbm

#endif  // COARSE_SBM_RECOVERY_H_
