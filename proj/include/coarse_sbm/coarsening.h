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

#ifndef COARSE_SBM_COARSENING_H_
#define COARSE_SBM_COARSENING_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "coarse_sbm/sbm.h"

namespace coarse_sbm {

// Per-community node counts of one c-node.
using Profile = std::vector<int>;

struct MeasurementConstraints {
  bool homogeneous = false;
  bool balanced = false;
  bool co_nu = false;

  bool operator==(const MeasurementConstraints&) const = default;
};

// L disjoint supports of `coverage` fine nodes each.
struct MeasurementPlan {
  int64_t n = 0;
  int l = 0;
  int coverage = 0;
  int nu = 1;
  std::vector<std::vector<int64_t>> supports;
  MeasurementConstraints constraints;

  // Disjointness, equal sizes and L * coverage <= N.
  void Validate() const;
  std::vector<int64_t> AllSupportNodes() const;
};

// L x K counts, Pi = B Z^T.
class ProfileMatrix {
 public:
  ProfileMatrix() = default;
  ProfileMatrix(int l, int k_communities);
  static ProfileMatrix FromRows(const std::vector<Profile>& rows, int k_communities);

  int l() const { return l_; }
  int k_communities() const { return k_; }
  int& at(int i, int c) { return counts_[static_cast<size_t>(i) * k_ + c]; }
  int at(int i, int c) const { return counts_[static_cast<size_t>(i) * k_ + c]; }
  Profile Row(int i) const;
  int64_t InnerProduct(int i, int j) const;

  // Which of the homogeneous / balanced / CO-nu properties hold.
  MeasurementConstraints Check(int coverage, int nu) const;

  bool operator==(const ProfileMatrix&) const = default;

 private:
  int l_ = 0;
  int k_ = 0;
  std::vector<int> counts_;
};

// Balanced profiles with support size 1..nu and entries coverage / |support|,
// ordered by support size then lexicographic support. Throws
// kDivisibilityError unless coverage is divisible by every size 1..nu.
std::vector<Profile> ProfileSet(int k_communities, int coverage, int nu);

// Number of profiles: sum_{l=1}^{nu} C(K, l).
int64_t ExtendedCommunityCount(int k_communities, int nu);

// L rows drawn i.i.d. from `prior` over ProfileSet(K, coverage, nu).
ProfileMatrix SampleProfileMatrix(int k_communities, int coverage, int nu, int l,
                                  std::span<const double> prior, uint64_t seed);

ProfileMatrix ComputeProfileMatrix(const MeasurementPlan& plan,
                                   const CommunityAssignment& assignment);

// Either an explicit profile matrix or a prior over the profile set.
using PlanTarget = std::variant<ProfileMatrix, std::vector<double>>;

struct PlanResult {
  MeasurementPlan plan;
  ProfileMatrix profile;
};

// Draws each c-node's nodes without replacement from the communities of its
// profile. Throws kInfeasible when a community runs out of nodes.
PlanResult BuildPlan(int64_t n, int l, int coverage, int nu,
                     const PlanTarget& target,
                     const CommunityAssignment& assignment, uint64_t seed);

// Symmetric L x L weights C = B F B^T. Only entries i > j are inferential; the
// diagonal b_i F b_i^T is kept for completeness.
struct CoarseGraph {
  int l = 0;
  int coverage = 0;
  std::vector<int64_t> weights;
  std::optional<MeasurementPlan> plan;
  ProfileMatrix truth;

  int64_t weight(int i, int j) const {
    return weights[static_cast<size_t>(i) * l + j];
  }
  int64_t& weight(int i, int j) { return weights[static_cast<size_t>(i) * l + j]; }
};

CoarseGraph Coarsen(const FineGraph& fine, const MeasurementPlan& plan);

// Each C_ij, i > j, drawn directly as Binomial(a_i.a_j, p) + Binomial(k^2 -
// a_i.a_j, q) with a per-pair derived stream.
CoarseGraph SampleCoarseDirect(const SsbmParams& params,
                               const ProfileMatrix& profile, int coverage,
                               uint64_t seed);

// CSV with header "i,j,weight", rows i > j in row-major order.
void WriteCoarseCsv(const CoarseGraph& graph, std::ostream& out);
// JSON sidecar with l, coverage, diagonal, truth profile and plan.
std::string CoarseSidecarJson(const CoarseGraph& graph);
CoarseGraph ReadCoarse(std::istream& csv, std::istream& sidecar_json);

}  // namespace coarse_sbm

#endif  // COARSE_SBM_COARSENING_H_
