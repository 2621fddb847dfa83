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


#include "coarse_sbm/regimes.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "coarse_sbm/errors.h"

namespace coarse_sbm {
namespace {

RegimeInput Input(RegimeTable table, const char* rho_coarse, const char* k) {
  RegimeInput in;
  in.table = table;
  in.rho = ParseMonomial("1/N");
  in.rho_coarse = ParseMonomial(rho_coarse);
  in.coverage = ParseMonomial(k, in.rho);
  return in;
}

TEST(ParseMonomial, ExponentsAndCoefficients) {
  const Monomial m = ParseMonomial("3*L^2*logL^-0.5/N");
  EXPECT_DOUBLE_EQ(m.coeff, 3.0);
  EXPECT_DOUBLE_EQ(m.l, 2.0);
  EXPECT_DOUBLE_EQ(m.log_l, -0.5);
  EXPECT_DOUBLE_EQ(m.n, -1.0);
  const Monomial r = ParseMonomial("rho^-0.5", ParseMonomial("4/N^2"));
  EXPECT_DOUBLE_EQ(r.coeff, 0.5);
  EXPECT_DOUBLE_EQ(r.n, 1.0);
}

TEST(ParseMonomial, RejectsUnknownSymbols) {
  EXPECT_THROW(ParseMonomial("log(L)"), Error);
  EXPECT_THROW(ParseMonomial("rho"), Error);
  EXPECT_THROW(ParseMonomial(""), Error);
  EXPECT_THROW(ParseMonomial("L+1"), Error);
}

TEST(CompareOrder, FineSizeDominatesThenLThenLogL) {
  EXPECT_EQ(CompareOrder(ParseMonomial("N"), ParseMonomial("L^5")), Order::kOmega);
  EXPECT_EQ(CompareOrder(ParseMonomial("L"), ParseMonomial("logL^9")), Order::kOmega);
  EXPECT_EQ(CompareOrder(ParseMonomial("logL/L"), ParseMonomial("1/L")), Order::kOmega);
  EXPECT_EQ(CompareOrder(ParseMonomial("2*L"), ParseMonomial("7*L")), Order::kTheta);
  EXPECT_EQ(CompareOrder(ParseMonomial("1/L"), ParseMonomial("logL/L")), Order::kLittleO);
}

TEST(ClassifyRegime, SparseCoarseGraphWithSmallCoverage) {
  const RegimeVerdict v = ClassifyRegime(Input(RegimeTable::kCoNu, "1/L", "rho^-0.5/logL"));
  EXPECT_EQ(v.VerdictText(), "Impossible");
  EXPECT_EQ(v.rho_block, "o(log L/L)");
}

TEST(ClassifyRegime, LogarithmicBlockConstantCoverage) {
  RegimeInput in = Input(RegimeTable::kCo1, "2*logL/L", "3");
  const RegimeVerdict v = ClassifyRegime(in);
  EXPECT_EQ(v.VerdictText(),
            "Possible if (alpha+beta)/2 - sqrt(alpha beta) >= K/(2 lambda k^2), "
            "rho >= k^2 L log L/N^2");
  EXPECT_FALSE(v.all_hold.has_value());
  // With constants: gap 116.9 against K/(2 * 2 * 9).
  in.alpha = 500;
  in.beta = 50;
  in.k_communities = 5;
  const RegimeVerdict w = ClassifyRegime(in);
  ASSERT_TRUE(w.conditions[0].evaluated.has_value());
  EXPECT_TRUE(*w.conditions[0].evaluated);
  EXPECT_TRUE(*w.conditions[1].evaluated);  // 1/N outgrows 9 L log L/N^2
}

TEST(ClassifyRegime, DenseBlockLargeCoverage) {
  const RegimeVerdict v =
      ClassifyRegime(Input(RegimeTable::kCo1, "logL^2/L", "rho^-0.5*logL*L^-0.5"));
  EXPECT_EQ(v.VerdictText(), "Possible if alpha != beta, rho = omega(L log L/N^2)");
}

TEST(ClassifyRegime, ConstantsAreEvaluatedWhenSupplied) {
  RegimeInput in = Input(RegimeTable::kCoNu, "logL^2/L", "3*rho^-0.5");
  in.alpha = 2;
  in.beta = 1;
  in.delta = 2.5;
  const RegimeVerdict v = ClassifyRegime(in);
  ASSERT_EQ(v.conditions.size(), 3u);
  EXPECT_TRUE(*v.conditions[0].evaluated);
  EXPECT_TRUE(*v.conditions[1].evaluated);   // c1 = 3 > 2.5
  EXPECT_TRUE(*v.conditions[2].evaluated);   // 1/N beats L^2/N^2
  EXPECT_TRUE(*v.all_hold);
  in.delta = 3.5;
  EXPECT_FALSE(*ClassifyRegime(in).all_hold);
}

TEST(ClassifyRegime, Unclassifiable) {
  RegimeInput in = Input(RegimeTable::kCoNu, "1/L", "1");
  in.rho_coarse.coeff = -1.0;
  try {
    ClassifyRegime(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnclassifiableScaling);
  }
  in = Input(RegimeTable::kCo1, "L", "1");
  EXPECT_THROW(ClassifyRegime(in), Error);
  in = Input(RegimeTable::kCo1, "1/L", "1");
  in.coverage.l = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(ClassifyRegime(in), Error);
}

TEST(CanonicalRegimePresets, NineRowsPerTable) {
  for (RegimeTable t : {RegimeTable::kCoNu, RegimeTable::kCo1}) {
    const auto presets = CanonicalRegimePresets(t);
    ASSERT_EQ(presets.size(), 9u);
    for (size_t i = 0; i < 9; ++i) {
      const RegimeVerdict v = ClassifyRegime(presets[i].input);
      EXPECT_EQ(v.kind == RegimeVerdict::Kind::kImpossible, i % 3 == 0) << presets[i].label;
    }
  }
}

}  // namespace
}  // namespace coarse_sbm
