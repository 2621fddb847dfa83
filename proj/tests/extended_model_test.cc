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


#include "coarse_sbm/extended_model.h"

#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>
#include <nlohmann/json.hpp>

#include "coarse_sbm/coarsening.h"
#include "coarse_sbm/errors.h"

namespace coarse_sbm {
namespace {

CoarseGraph Weights(int l, int coverage, const std::vector<std::vector<int64_t>>& w) {
  CoarseGraph g;
  g.l = l;
  g.coverage = coverage;
  g.weights.assign(static_cast<size_t>(l) * l, 0);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) g.weight(i, j) = w[i][j];
  }
  return g;
}

TEST(Binarize, ThresholdArithmetic) {
  EXPECT_DOUBLE_EQ(BinarizationThreshold(2, 0.5, 0.1, 0.5), 1.2);
  const CoarseGraph g = Weights(3, 2, {{0, 1, 2}, {1, 0, 2}, {2, 2, 0}});
  const BinarizedGraph b = Binarize(g, 0.5, 0.1, 0.5);
  EXPECT_FALSE(b.edge(1, 0));
  EXPECT_TRUE(b.edge(2, 0));
  EXPECT_TRUE(b.edge(0, 2));
  EXPECT_FALSE(b.edge(0, 0));
}

TEST(Binarize, ZeroThresholdConnectsEverything) {
  const CoarseGraph g = Weights(3, 2, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  const BinarizedGraph b = Binarize(g, 0.5, 0.0, 0.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(b.edge(i, j), i != j);
  }
}

TEST(Binarize, IdempotentOnRescaledAdjacency) {
  const CoarseGraph g = Weights(4, 3, {{0, 5, 1, 9}, {5, 0, 3, 2}, {1, 3, 0, 7}, {9, 2, 7, 0}});
  const BinarizedGraph once = Binarize(g, 0.6, 0.2, 0.4);
  CoarseGraph rescaled = g;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) rescaled.weight(i, j) = once.edge(i, j) ? 9 : 0;
  }
  EXPECT_EQ(Binarize(rescaled, 0.6, 0.2, 0.4).adj, once.adj);
}

TEST(BuildExtendedSbm, TwoCommunityExactEntries) {
  const ExtendedSbm m = BuildExtendedSbm(2, 2, 1, 0.9, 0.1, 0.5, PriorSpec::Uniform());
  ASSERT_EQ(m.size(), 2);
  const boost::math::binomial_distribution<double> hi(4, 0.9);
  const boost::math::binomial_distribution<double> lo(4, 0.1);
  // Threshold 4 * 0.5 = 2, so U = P(X >= 2) = 1 - P(X <= 1).
  const double diag = boost::math::cdf(boost::math::complement(hi, 1.0));
  const double off = boost::math::cdf(boost::math::complement(lo, 1.0));
  EXPECT_NEAR(m.u_mean(0, 0), diag, 1e-14);
  EXPECT_NEAR(m.u_mean(1, 1), diag, 1e-14);
  EXPECT_NEAR(m.u_mean(0, 1), off, 1e-14);
  EXPECT_NEAR(m.u_mean(1, 0), off, 1e-14);
  EXPECT_EQ(m.u_lower, m.u_mean);
  EXPECT_EQ(m.u_upper, m.u_mean);
}

TEST(BuildExtendedSbm, EqualProbabilitiesGiveConstantU) {
  const ExtendedSbm m = BuildExtendedSbm(3, 4, 2, 0.3, 0.3, 0.5, PriorSpec::Uniform());
  EXPECT_NEAR(m.u_mean.maxCoeff(), m.u_mean.minCoeff(), 1e-15);
}

TEST(BuildExtendedSbm, FifteenProfileInvariants) {
  const ExtendedSbm m = BuildExtendedSbm(5, 50, 2, 0.5, 0.05, 0.25, PriorSpec::Uniform(), 0);
  EXPECT_EQ(m.size(), 15);
  EXPECT_EQ(m.u_mean.rows(), 15);
  EXPECT_TRUE(m.u_mean.isApprox(m.u_mean.transpose(), 0.0));
  EXPECT_TRUE((m.u_lower.array() <= m.u_mean.array()).all());
  EXPECT_TRUE((m.u_mean.array() <= m.u_upper.array()).all());
  double total = 0.0;
  for (double s : m.prior) total += s;
  EXPECT_NEAR(total, 1.0, 1e-12);
  // Entries depend on the pair only through the inner product.
  const auto ip = ProfileInnerProducts(m.profiles);
  for (int a = 0; a < 15; ++a) {
    for (int b = 0; b < 15; ++b) {
      for (int c = 0; c < 15; ++c) {
        for (int d = 0; d < 15; ++d) {
          if (ip(a, b) == ip(c, d)) EXPECT_EQ(m.u_mean(a, b), m.u_mean(c, d));
        }
      }
    }
  }
}

TEST(BuildExtendedSbm, RejectsBadPriors) {
  for (const std::vector<double>& w :
       {std::vector<double>{0.5, 0.5}, std::vector<double>{0.7, 0.7, -0.4},
        std::vector<double>{0.2, 0.2, 0.2}}) {
    try {
      BuildExtendedSbm(3, 2, 1, 0.5, 0.1, 0.5, PriorSpec::Explicit(w));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kPriorInvalid);
    }
  }
}

TEST(ProfileInnerProducts, DotProducts) {
  const auto ip = ProfileInnerProducts({{3, 3, 0}, {3, 0, 3}, {0, 0, 6}, {6, 0, 0}});
  EXPECT_EQ(ip(0, 1), 9);
  EXPECT_EQ(ip(2, 3), 0);
  EXPECT_EQ(ip(3, 3), 36);
}

TEST(ExtendedSbmJson, CarriesAllMatrices) {
  const ExtendedSbm m = BuildExtendedSbm(2, 2, 2, 0.6, 0.2, 0.5, PriorSpec::Uniform());
  const auto j = nlohmann::json::parse(ExtendedSbmJson(m));
  EXPECT_EQ(j.at("profiles").size(), 3u);
  EXPECT_TRUE(j.contains("u_mean"));
  EXPECT_TRUE(j.contains("u_lower"));
  EXPECT_TRUE(j.contains("u_upper"));
}

}  // namespace
}  // namespace coarse_sbm
