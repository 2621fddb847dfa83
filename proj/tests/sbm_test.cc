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


#include "coarse_sbm/sbm.h"

#include <algorithm>
#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "coarse_sbm/errors.h"
#include "coarse_sbm/rng.h"

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

// Pools intra- and cross-community pair outcomes among the given nodes.
struct Densities {
  int64_t intra_pairs = 0, intra_edges = 0, cross_pairs = 0, cross_edges = 0;
  void Add(const FineGraph& g, const std::vector<int64_t>& nodes) {
    const auto& member = g.assignment().membership;
    for (size_t i = 0; i < nodes.size(); ++i) {
      for (size_t j = i + 1; j < nodes.size(); ++j) {
        const bool same = member[nodes[i]] == member[nodes[j]];
        const bool e = g.HasEdge(nodes[i], nodes[j]);
        (same ? intra_pairs : cross_pairs) += 1;
        (same ? intra_edges : cross_edges) += e;
      }
    }
  }
};

void ExpectWithin3Sigma(int64_t hits, int64_t n, double prob) {
  const double sigma = std::sqrt(prob * (1.0 - prob) / n);
  EXPECT_NEAR(static_cast<double>(hits) / n, prob, 3.0 * sigma) << hits << "/" << n;
}

TEST(SampleAssignment, SingleCommunity) {
  const auto a = SampleAssignment(Params(50, 1, 0.5, 0.5), 3);
  for (int c : a.membership) EXPECT_EQ(c, 0);
}

TEST(SampleAssignment, SizesConcentrate) {
  const auto a = SampleAssignment(Params(100000, 5, 0.5, 0.1), 11);
  const double mean = 100000.0 / 5;
  const double sd = std::sqrt(100000.0 * 0.2 * 0.8);
  for (int64_t size : a.CommunitySizes()) EXPECT_NEAR(size, mean, 4.0 * sd);
}

TEST(SampleAssignment, Deterministic) {
  const auto p = Params(1000, 3, 0.5, 0.1);
  EXPECT_EQ(SampleAssignment(p, 5).membership, SampleAssignment(p, 5).membership);
  EXPECT_NE(SampleAssignment(p, 5).membership, SampleAssignment(p, 6).membership);
}

TEST(SampleFineGraph, NoEdgesWhenBothProbabilitiesVanish) {
  SsbmParams p = Params(60, 3, 0.0, 0.0);
  p.alpha = 1e-300;  // alpha and beta may not both be zero
  const auto a = SampleAssignment(p, 1);
  EXPECT_EQ(SampleFineGraph(p, a, 2).NumEdges(), 0);
}

TEST(SampleFineGraph, CertainWithinAndNeverAcrossGivesCliques) {
  const auto p = Params(80, 4, 1.0, 0.0);
  const auto a = SampleAssignment(p, 1);
  const auto g = SampleFineGraph(p, a, 2);
  for (int64_t u = 0; u < 80; ++u) {
    for (int64_t v = u + 1; v < 80; ++v) {
      EXPECT_EQ(g.HasEdge(u, v), a.membership[u] == a.membership[v]);
    }
  }
}

TEST(SampleFineGraph, DensitiesMatchProbabilities) {
  const auto p = Params(2000, 4, 0.5, 0.1);
  const auto a = SampleAssignment(p, 4);
  const auto g = SampleFineGraph(p, a, 9);
  std::vector<int64_t> all(2000);
  std::iota(all.begin(), all.end(), 0);
  Densities d;
  d.Add(g, all);
  ExpectWithin3Sigma(d.intra_edges, d.intra_pairs, 0.5);
  ExpectWithin3Sigma(d.cross_edges, d.cross_pairs, 0.1);
}

TEST(SampleFineGraph, SizeCap) {
  const auto p = Params(500, 2, 0.5, 0.1);
  const auto a = SampleAssignment(p, 1);
  try {
    SampleFineGraph(p, a, 1, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeCap);
  }
}

TEST(SampleFineGraphRestricted, FullSupportEqualsDenseSample) {
  const auto p = Params(120, 3, 0.4, 0.2);
  const auto a = SampleAssignment(p, 2);
  std::vector<int64_t> all(120);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(SampleFineGraphRestricted(p, a, all, 8).Edges(), SampleFineGraph(p, a, 8).Edges());
}

TEST(SampleFineGraphRestricted, EmptySupport) {
  const auto p = Params(30, 2, 0.9, 0.9);
  const auto a = SampleAssignment(p, 2);
  EXPECT_EQ(SampleFineGraphRestricted(p, a, {}, 1).NumEdges(), 0);
}

TEST(SampleFineGraphRestricted, SubsetOfLargeGraphHasSsbmMarginals) {
  SsbmParams p = Params(30000, 5, 0.0, 0.0);
  p.alpha = 300;
  p.beta = 60;
  p.rho = 1e-3;
  const auto a = SampleAssignment(p, 6);
  CounterRng rng(77);
  std::vector<int64_t> support;
  for (int i = 0; i < 200; ++i) support.push_back(static_cast<int64_t>(rng.Index(30000)));
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  Densities d;
  for (uint64_t trial = 0; trial < 10000; ++trial) {
    d.Add(SampleFineGraphRestricted(p, a, support, DeriveSeed(123, trial)), support);
  }
  ExpectWithin3Sigma(d.intra_edges, d.intra_pairs, 0.3);
  ExpectWithin3Sigma(d.cross_edges, d.cross_pairs, 0.06);
}

TEST(SsbmParams, RejectsOutOfRangeProbabilities) {
  SsbmParams p = Params(10, 2, 500, 50);
  p.rho = 0.01;
  EXPECT_THROW(p.Validate(), Error);
  EXPECT_THROW(Params(1, 2, 0.5, 0.5).Validate(), Error);
}

}  // namespace
}  // namespace coarse_sbm
