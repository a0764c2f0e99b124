// Copyright 2026 The ldp_relax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldp_relax/experiment.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_split.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace ldp_relax {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

PrivacyLevel Eps(double nats) { return PrivacyLevel::Create(nats).value(); }

SimulationSetup SmallSetup() {
  SimulationSetup s;
  s.m = 3;
  s.counts = {20, 30, 50};
  s.schedule = {Eps(0.2), Eps(0.6), Eps(1.0)};
  s.trials = 6;
  s.seed = 99;
  return s;
}

std::string SimulationCsv(const SimulationSetup& s) {
  std::ostringstream out;
  WriteSimulationCsv(*RunSimulation(s), out);
  WriteAttackCsv(*RunSimulation(s), out);
  return out.str();
}

TEST(PopulationFromCountsTest, LaysOutByValue) {
  EXPECT_EQ(*PopulationFromCounts(std::vector<std::int64_t>{2, 1, 3}),
            std::vector<int>({0, 0, 1, 2, 2, 2}));
  EXPECT_EQ(PopulationFromCounts(std::vector<std::int64_t>{2, 0}).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(RunSimulationTest, ShapeAndTheory) {
  const SimulationResult r = *RunSimulation(SmallSetup());
  ASSERT_EQ(r.rounds.size(), 3u);
  const PerturbationMatrix p = *MakePerturbationMatrix(Eps(0.6), 3);
  const Matrix cov = EstimateCovariance(p, r.true_frequency, 100);
  for (int v = 0; v < 3; ++v) {
    EXPECT_DOUBLE_EQ(r.rounds[1].theoretical_variance[v], cov(v, v));
  }
  EXPECT_DOUBLE_EQ(r.rounds[2].min_error_rate, *MinErrorRate(Eps(1.0), 3));
  for (const RoundSummary& row : r.rounds) {
    ASSERT_EQ(row.attacks.size(), 4u);
    EXPECT_EQ(row.attacks[0].evaluated, 6 * 60);
    EXPECT_EQ(row.last_output_mle_mismatches, 0);
    EXPECT_DOUBLE_EQ(row.attacks[0].error_pooled, row.attacks[1].error_pooled);
  }
  // Round 1 has a single output: every method returns it.
  for (const MethodSummary& m : r.rounds[0].attacks) {
    EXPECT_DOUBLE_EQ(m.error_pooled, r.rounds[0].attacks[0].error_pooled);
  }
}

TEST(RunSimulationTest, IdenticalAcrossRunsAndThreadCounts) {
  SimulationSetup s = SmallSetup();
  const std::string one = SimulationCsv(s);
  EXPECT_EQ(one, SimulationCsv(s));
  s.threads = 4;
  EXPECT_EQ(one, SimulationCsv(s));
  s.seed = 100;
  EXPECT_NE(one, SimulationCsv(s));
}

TEST(RunSimulationTest, SingleTrialRerun) {
  SimulationSetup s = SmallSetup();
  s.trials = 1;
  EXPECT_EQ(SimulationCsv(s), SimulationCsv(s));
  EXPECT_EQ(RunSimulation(s)->rounds[0].estimate_variance[0], 0.0);
}

TEST(RunSimulationTest, Errors) {
  SimulationSetup s = SmallSetup();
  s.trials = 0;
  EXPECT_EQ(RunSimulation(s).status().code(), absl::StatusCode::kInvalidArgument);
  s = SmallSetup();
  s.counts = {1, 2};
  EXPECT_EQ(RunSimulation(s).status().code(), absl::StatusCode::kInvalidArgument);
  s = SmallSetup();
  s.schedule = {Eps(1.0), Eps(0.5)};
  EXPECT_EQ(RunSimulation(s).status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(WriteSimulationCsvTest, FixedHeaderAndSeventeenDigits) {
  std::ostringstream out;
  WriteSimulationCsv(*RunSimulation(SmallSetup()), out);
  const std::vector<std::string> lines = absl::StrSplit(out.str(), '\n');
  EXPECT_EQ(lines[0],
            "round,epsilon,true_freq_0,est_mean_0,est_var_0,theory_var_0,"
            "true_freq_1,est_mean_1,est_var_1,theory_var_1,true_freq_2,"
            "est_mean_2,est_var_2,theory_var_2,err_mean_LastOutput,"
            "err_std_LastOutput,err_mean_MLE,err_std_MLE,"
            "err_mean_HighestFrequency,err_std_HighestFrequency,"
            "err_mean_WeightedHighestFrequency,"
            "err_std_WeightedHighestFrequency,min_error_rate");
  EXPECT_THAT(lines[1], StartsWith("1,0.20000000000000001,0.20000000000000001,"));
}

TEST(RapporComparisonTest, RowsAndTheory) {
  RapporSetup s;
  s.counts = {40, 60};
  s.spec = RapporSpec{1.0, 0.5, 5};
  s.trials = 8;
  s.seed = 3;
  const RapporComparison c = *RunRapporComparison(s);
  ASSERT_EQ(c.rows.size(), 5u);
  const RapporParams p = RapporParams::FromEpsilons(Eps(1.0), Eps(0.5));
  for (const RapporRow& row : c.rows) {
    EXPECT_DOUBLE_EQ(row.eps_noisy_sampling, *EpsNoisySampling(row.k, p));
    EXPECT_DOUBLE_EQ(row.noisy_sampling_theory, *VarianceNoisySampling(p, 100, row.k));
    EXPECT_LE(row.relaxation_theory, row.noisy_sampling_theory * (1 + 1e-12));
  }
  std::ostringstream a, b;
  WriteRapporCsv(c, a);
  s.threads = 3;
  WriteRapporCsv(*RunRapporComparison(s), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(RapporComparisonTest, ConfigNeedsBinaryDomain) {
  ExperimentConfig cfg;
  cfg.m = 3;
  cfg.counts = {1, 2, 3};
  EXPECT_EQ(RapporSetupFromConfig(cfg).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(KernelTableTest, Examples) {
  const std::vector<double> grid = {0.1, 0.5, 1.0, 2.0, 10.0};
  const std::vector<int> ms = {3, 10};
  const std::vector<KernelTableRow> rows = *KernelTable(grid, ms);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].m, 3);
  EXPECT_NEAR(rows[0].p_aa, 0.584, 5e-4);
  EXPECT_NEAR(rows[0].p_bb, 0.392, 5e-4);
  EXPECT_NEAR(rows[0].p_ba, 0.379, 5e-4);
  EXPECT_EQ(rows[7].m, 10);
  EXPECT_NEAR(rows[7].p_aa, 1.000, 5e-4);

  const std::vector<double> flat = {0.7, 0.7};
  const KernelTableRow id = KernelTable(flat, ms)->front();
  EXPECT_EQ(id.p_aa, 1.0);
  EXPECT_EQ(id.p_bb, 1.0);
  EXPECT_EQ(id.p_ba, 0.0);

  const std::vector<double> down = {1.0, 0.5};
  EXPECT_EQ(KernelTable(down, ms).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(RunAuditTest, SmallGridPasses) {
  AuditSpec spec;
  spec.eps_values = {0.5, 1.0};
  spec.max_length = 3;
  spec.m_values = {2, 3};
  spec.noisy_sampling_k_max = 4;
  const AuditReport report = *RunAudit(spec, RapporSpec{});
  EXPECT_TRUE(report.AllPass());
  std::ostringstream out;
  WriteAuditCsv(report, out);
  EXPECT_THAT(out.str(), StartsWith("check,m,subject,value,expected,tolerance,pass\n"));
  EXPECT_THAT(out.str(), HasSubstr("composition_ldp,3,0.5;1;1,"));
  EXPECT_THAT(out.str(), HasSubstr("noisy_sampling_epsilon,2,K=4,"));
}

TEST(RunAuditTest, MismatchedPriorsAreSkippedAndInvalidOnesRejected) {
  AuditSpec spec;
  spec.eps_values = {1.0};
  spec.max_length = 1;
  spec.m_values = {2};
  spec.priors = {{0.2, 0.3, 0.5}};
  EXPECT_TRUE(RunAudit(spec, RapporSpec{})->AllPass());
  spec.priors = {{0.2, 0.3}};
  EXPECT_EQ(RunAudit(spec, RapporSpec{}).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(DefaultSkewedPriorsTest, FiveDistinctDistributions) {
  for (int m = 2; m <= 4; ++m) {
    const auto priors = DefaultSkewedPriors(m);
    ASSERT_EQ(priors.size(), 5u);
    for (const auto& p : priors) EXPECT_TRUE(Prior::Create(p).ok());
  }
}

}  // namespace
}  // namespace ldp_relax
