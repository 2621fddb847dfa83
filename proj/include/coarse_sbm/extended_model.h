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

#ifndef COARSE_SBM_EXTENDED_MODEL_H_
#define COARSE_SBM_EXTENDED_MODEL_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "coarse_sbm/coarsening.h"
#include "coarse_sbm/distributions.h"

namespace coarse_sbm {

// Thresholded coarse graph: edge iff C_ij >= k^2 (tau p + (1 - tau) q).
struct BinarizedGraph {
  int l = 0;
  std::vector<uint8_t> adj;
  double tau = 0.0;
  double threshold_value = 0.0;

  bool edge(int i, int j) const { return adj[static_cast<size_t>(i) * l + j] != 0; }
};

double BinarizationThreshold(int coverage, double p, double q, double tau);

BinarizedGraph Binarize(const CoarseGraph& coarse, double p, double q, double tau);

enum class UVariant { kMean, kLower, kUpper };

std::string_view UVariantName(UVariant variant);

struct PriorSpec {
  enum class Kind { kUniform, kExplicit };
  Kind kind = Kind::kUniform;
  std::vector<double> weights;

  static PriorSpec Uniform() { return {}; }
  static PriorSpec Explicit(std::vector<double> w) {
    return {Kind::kExplicit, std::move(w)};
  }
};

// The binarized coarse graph viewed as a non-overlapping SBM over extended
// communities (one per balanced profile).
struct ExtendedSbm {
  int k_communities = 0;
  int coverage = 0;
  int nu = 0;
  double p = 0.0;
  double q = 0.0;
  double tau = 0.0;
  int64_t exact_cap = kDefaultExactCap;
  TailMethod method = TailMethod::kExactDp;

  std::vector<Profile> profiles;
  std::map<Profile, int> index;
  std::vector<double> prior;
  Eigen::MatrixXd u_mean;
  Eigen::MatrixXd u_lower;
  Eigen::MatrixXd u_upper;

  int size() const { return static_cast<int>(profiles.size()); }
  // Extended-community index of a profile; throws if it is not in the set.
  int IndexOf(const Profile& profile) const;
  const Eigen::MatrixXd& U(UVariant variant) const;
};

// Throws kDivisibilityError, kPriorInvalid, kDomainError.
ExtendedSbm BuildExtendedSbm(int k_communities, int coverage, int nu, double p,
                             double q, double tau, const PriorSpec& prior,
                             int64_t exact_cap = kDefaultExactCap);

// a^T a' for every pair of profiles.
Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> ProfileInnerProducts(
    const std::vector<Profile>& profiles);

// JSON dump: profiles, prior and the three U matrices row-major.
std::string ExtendedSbmJson(const ExtendedSbm& model);

}  // namespace coarse_sbm

#endif  // COARSE_SBM_EXTENDED_MODEL_H_
