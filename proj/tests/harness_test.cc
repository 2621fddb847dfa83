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


#include "coarse_sbm/harness.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "coarse_sbm/config.h"
#include "coarse_sbm/errors.h"

namespace coarse_sbm {
namespace {

ExperimentConfig Tiny(int trials) {
  KeyValueConfig kv = KeyValueConfig::Load(COARSE_SBM_SOURCE_DIR "/configs/tiny_mc.cfg");
  kv.Set("mc.trials", std::to_string(trials));
  return ExperimentConfig::FromKeyValues(kv);
}

TEST(KeyValueConfig, ParsesCommentsAndOverrides) {
  KeyValueConfig kv = KeyValueConfig::Parse("# c\nmodel.n = 10  # trailing\n\ncoarse.l=1,2\n");
  EXPECT_EQ(*kv.Get("model.n"), "10");
  kv.SetAssignment("model.n=20");
  EXPECT_EQ(*kv.Get("model.n"), "20");
  EXPECT_THROW(kv.SetAssignment("no-equals"), Error);
}

TEST(ExperimentConfig, RejectsUnknownKeysAndBadValues) {
  for (const char* text : {"model.bogus = 1", "model.n = ten", "coarse.tau = 2",
                           "model.alpha = 5000", "prior.kind = explicit"}) {
    try {
      ExperimentConfig::FromKeyValues(KeyValueConfig::Parse(text)).Validate();
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfigError) << text;
    }
  }
}

TEST(ParseIntList, RangesAndLists) {
  EXPECT_EQ(ParseIntList("100:400:50"),
            (std::vector<int>{100, 150, 200, 250, 300, 350, 400}));
  EXPECT_EQ(ParseIntList("3, 5,8"), (std::vector<int>{3, 5, 8}));
  EXPECT_THROW(ParseIntList("1:5:0"), Error);
}

TEST(FormatDouble, SeventeenDigits) {
  EXPECT_EQ(FormatDouble(0.1), "0.10000000000000001");
  EXPECT_EQ(FormatDouble(500), "500");
}

TEST(RunMcExperiment, ZeroTrialsGivesHeaderOnly) {
  const CsvTable t = RunMcExperiment(Tiny(0), 1);
  EXPECT_TRUE(t.rows.empty());
  EXPECT_EQ(t.ToString().find('\n'), t.ToString().size() - 1);
}

TEST(RunMcExperiment, DeterministicAcrossThreadCounts) {
  const ExperimentConfig c = Tiny(60);
  const std::string one = RunMcExperiment(c, 1).ToString();
  EXPECT_EQ(one, RunMcExperiment(c, 4).ToString());
  EXPECT_EQ(one.find('\r'), std::string::npos);
}

TEST(RunMcExperiment, TwoStageSamplerRuns) {
  ExperimentConfig c = Tiny(20);
  c.sampler = Sampler::kTwoStage;
  const CsvTable t = RunMcExperiment(c, 2);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][t.Column("sampler")], "two-stage");
}

TEST(RunBoundSweep, SinglePointAndBandOrder) {
  const CsvTable t = RunBoundSweep(Tiny(0));
  ASSERT_EQ(t.rows.size(), 1u);
  const double lo = std::stod(t.rows[0][t.Column("bound_lower")]);
  const double mid = std::stod(t.rows[0][t.Column("bound_mean")]);
  const double hi = std::stod(t.rows[0][t.Column("bound_upper")]);
  EXPECT_LE(lo, mid);
  EXPECT_LE(mid, hi);
  EXPECT_LE(hi, 1.0);
}

TEST(SampleInstance, InfeasibleSizes) {
  ExperimentConfig c = Tiny(1);
  c.n = 10;
  try {
    SampleInstance(c, 5, 4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(RunRegimeReport, CanonicalRowsPlusExplicitUnclassifiable) {
  ExperimentConfig c = Tiny(0);
  c.regimes_rho_coarse = {"L^2"};
  c.regimes_rho = {"1/N"};
  c.regimes_k = {"1"};
  const RegimeReport r = RunRegimeReport(c);
  // Custom rows replace the canonical ones, once per table.
  ASSERT_EQ(r.table.rows.size(), 2u);
  EXPECT_EQ(r.table.rows[0][r.table.Column("verdict")], "Unclassifiable");
  EXPECT_FALSE(r.table.rows[0][r.table.Column("error")].empty());

  const RegimeReport canonical = RunRegimeReport(Tiny(0));
  EXPECT_EQ(canonical.table.rows.size(), 18u);
}

TEST(GenerateInstance, WritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "coarse_sbm_gen_test";
  std::filesystem::remove_all(dir);
  const auto paths = GenerateInstance(Tiny(1), dir.string());
  EXPECT_FALSE(paths.empty());
  for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p)) << p;
}

TEST(ThreadCountFromEnv, ReadsVariable) {
  setenv("COARSE_SBM_THREADS", "3", 1);
  EXPECT_EQ(ThreadCountFromEnv(), 3);
  unsetenv("COARSE_SBM_THREADS");
  EXPECT_GE(ThreadCountFromEnv(), 1);
}

}  // namespace
}  // namespace coarse_sbm
