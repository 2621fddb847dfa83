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


#include "coarse_sbm/coarsening.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "coarse_sbm/errors.h"
#include "coarse_sbm/rng.h"
#include "coarse_sbm/sbm.h"

namespace coarse_sbm {
namespace {

SsbmParams Params(int64_t n, int k, double p, double q) {
  SsbmParams s;
  s.n = n;
  s.k_communities = k;
  s.alpha = p;
  s.beta = q;
  s.rho = 1.0;
  return s;
}

MeasurementPlan ContiguousPlan(int64_t n, int l, int coverage) {
  MeasurementPlan plan;
  plan.n = n;
  plan.l = l;
  plan.coverage = coverage;
  plan.supports.resize(l);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < coverage; ++j) plan.supports[i].push_back(int64_t{i} * coverage + j);
  }
  return plan;
}

TEST(ProfileSet, CountsAndContents) {
  EXPECT_EQ(ProfileSet(5, 2, 2).size(), 15u);
  EXPECT_EQ(ExtendedCommunityCount(5, 2), 15);
  const std::vector<Profile> single{{4, 0, 0}, {0, 4, 0}, {0, 0, 4}};
  EXPECT_EQ(ProfileSet(3, 4, 1), single);
  const auto all = ProfileSet(3, 6, 3);
  ASSERT_EQ(all.size(), 7u);
  EXPECT_EQ(all.back(), (Profile{2, 2, 2}));
  EXPECT_EQ(std::set<Profile>(all.begin(), all.end()).size(), 7u);
}

TEST(ProfileSet, CoverageMustBeDivisible) {
  try {
    ProfileSet(3, 4, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivisibilityError);
  }
}

TEST(BuildPlan, WorkedExampleIsBalancedCoTwo) {
  const auto pi = ProfileMatrix::FromRows({{0, 4, 0}, {2, 0, 2}, {4, 0, 0}, {0, 2, 2}}, 3);
  const auto params = Params(60, 3, 0.5, 0.1);
  const auto a = SampleAssignment(params, 3);
  const PlanResult r = BuildPlan(60, 4, 4, 2, pi, a, 5);
  EXPECT_EQ(r.profile, pi);
  EXPECT_EQ(ComputeProfileMatrix(r.plan, a), pi);
  EXPECT_TRUE(r.plan.constraints.homogeneous);
  EXPECT_TRUE(r.plan.constraints.balanced);
  EXPECT_TRUE(r.plan.constraints.co_nu);
  EXPECT_NO_THROW(r.plan.Validate());
}

TEST(BuildPlan, SingleCommunityRows) {
  const auto params = Params(40, 1, 0.5, 0.5);
  const auto a = SampleAssignment(params, 3);
  const PlanResult r = BuildPlan(40, 5, 6, 1, std::vector<double>{1.0}, a, 2);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(r.profile.Row(i), Profile{6});
}

TEST(BuildPlan, SampledRowsComeFromTheProfileSet) {
  const auto params = Params(400, 5, 0.5, 0.1);
  const auto a = SampleAssignment(params, 3);
  const auto set = ProfileSet(5, 6, 2);
  const std::set<Profile> allowed(set.begin(), set.end());
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const PlanResult r = BuildPlan(400, 4, 6, 2, std::vector<double>(15, 1.0 / 15), a, seed);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(allowed.count(r.profile.Row(i)));
    EXPECT_EQ(ComputeProfileMatrix(r.plan, a), r.profile);
  }
}

TEST(BuildPlan, InfeasibleWhenCommunityRunsOut) {
  const auto params = Params(20, 2, 0.5, 0.1);
  CommunityAssignment a;
  a.k_communities = 2;
  a.membership.assign(20, 1);
  a.membership[0] = 0;
  const auto pi = ProfileMatrix::FromRows({{2, 0}, {0, 2}}, 2);
  try {
    BuildPlan(20, 2, 2, 1, pi, a, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
  EXPECT_THROW(BuildPlan(20, 11, 2, 1, pi, a, 1), Error);
}

TEST(Coarsen, EmptyAndCompleteGraphs) {
  SsbmParams empty = Params(12, 2, 1e-300, 0.0);
  SsbmParams full = Params(12, 2, 1.0, 1.0);
  const auto a = SampleAssignment(full, 1);
  const auto plan = ContiguousPlan(12, 4, 3);
  const CoarseGraph c0 = Coarsen(SampleFineGraph(empty, a, 1), plan);
  const CoarseGraph c1 = Coarsen(SampleFineGraph(full, a, 1), plan);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      EXPECT_EQ(c0.weight(i, j), 0);
      EXPECT_EQ(c1.weight(i, j), 9);
    }
  }
}

TEST(Coarsen, MatchesDoubleSumOverIndicatorVectors) {
  const auto params = Params(20, 2, 0.6, 0.3);
  const auto a = SampleAssignment(params, 4);
  const FineGraph g = SampleFineGraph(params, a, 8);
  CounterRng rng(5);
  std::vector<int64_t> perm(20);
  for (int i = 0; i < 20; ++i) perm[i] = i;
  for (int i = 19; i > 0; --i) std::swap(perm[i], perm[rng.Index(i + 1)]);
  MeasurementPlan plan;
  plan.n = 20;
  plan.l = 4;
  plan.coverage = 5;
  plan.supports.resize(4);
  for (int i = 0; i < 20; ++i) plan.supports[i / 5].push_back(perm[i]);
  const CoarseGraph c = Coarsen(g, plan);
  // C = B F B^T with B the 0/1 support indicator matrix.
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      int64_t want = 0;
      for (int64_t u = 0; u < 20; ++u) {
        for (int64_t v = 0; v < 20; ++v) {
          const bool bu = std::count(plan.supports[i].begin(), plan.supports[i].end(), u);
          const bool bv = std::count(plan.supports[j].begin(), plan.supports[j].end(), v);
          want += bu && bv && g.HasEdge(u, v);
        }
      }
      EXPECT_EQ(c.weight(i, j), want) << i << "," << j;
    }
  }
}

TEST(Coarsen, RestrictedSampleGivesSameCoarseGraph) {
  const auto params = Params(300, 3, 0.4, 0.1);
  const auto a = SampleAssignment(params, 2);
  const PlanResult r = BuildPlan(300, 6, 4, 1, std::vector<double>(3, 1.0 / 3), a, 7);
  const auto support = r.plan.AllSupportNodes();
  const CoarseGraph dense = Coarsen(SampleFineGraph(params, a, 9), r.plan);
  const CoarseGraph sparse = Coarsen(SampleFineGraphRestricted(params, a, support, 9), r.plan);
  EXPECT_EQ(dense.weights, sparse.weights);
}

TEST(SampleCoarseDirect, WeightsStayInRangeAndSymmetric) {
  const auto pi = ProfileMatrix::FromRows({{4, 0}, {2, 2}, {0, 4}, {4, 0}}, 2);
  const CoarseGraph c = SampleCoarseDirect(Params(100, 2, 0.7, 0.2), pi, 4, 3);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      EXPECT_EQ(c.weight(i, j), c.weight(j, i));
      EXPECT_GE(c.weight(i, j), 0);
      EXPECT_LE(c.weight(i, j), 16);
    }
  }
  EXPECT_EQ(c.truth, pi);
}

TEST(SampleCoarseDirect, CertainEdgesGiveFullWeight) {
  const auto pi = ProfileMatrix::FromRows({{3, 0}, {3, 0}, {0, 3}}, 2);
  const CoarseGraph c = SampleCoarseDirect(Params(100, 2, 1.0, 1.0), pi, 3, 1);
  EXPECT_EQ(c.weight(1, 0), 9);
  EXPECT_EQ(c.weight(2, 0), 9);
}

TEST(CoarseCsv, RoundTrip) {
  const auto params = Params(100, 2, 0.5, 0.2);
  const auto a = SampleAssignment(params, 1);
  const PlanResult r = BuildPlan(100, 5, 4, 2, std::vector<double>(3, 1.0 / 3), a, 2);
  const CoarseGraph c = Coarsen(SampleFineGraph(params, a, 3), r.plan);
  std::stringstream csv;
  WriteCoarseCsv(c, csv);
  std::stringstream sidecar(CoarseSidecarJson(c));
  const CoarseGraph back = ReadCoarse(csv, sidecar);
  EXPECT_EQ(back.weights, c.weights);
  EXPECT_EQ(back.truth, c.truth);
  ASSERT_TRUE(back.plan.has_value());
  EXPECT_EQ(back.plan->supports, c.plan->supports);
}

}  // namespace
}  // namespace coarse_sbm
