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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Tolerances and seeds are fixed here.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "ldp_relax/audit.hpp"
#include "ldp_relax/estimation.hpp"
#include "ldp_relax/experiment.hpp"
#include "ldp_relax/inference.hpp"
#include "ldp_relax/mechanism.hpp"
#include "ldp_relax/rappor.hpp"

namespace ldp_relax {
namespace {

constexpr std::uint64_t kSeedExperiment1 = 20240601;
constexpr std::uint64_t kSeedExperiment2 = 20240602;
constexpr std::uint64_t kSeedRappor = 20240603;
constexpr std::int64_t kTrials = 100;

PrivacyLevel Eps(double nats) { return PrivacyLevel::Create(nats).value(); }

// Outcome of one criterion: pass flag plus a short account of the numbers.
struct Verdict {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail.clear();
      pass = false;
      absl::StrAppend(&detail, detail.empty() ? "" : "; ", what);
    }
  }
  void Note(const std::string& what) {
    if (pass) absl::StrAppend(&detail, detail.empty() ? "" : "; ", what);
  }
};

// Printed kernel tables: rows m = 3..10, columns are the relaxations
// 0.1->0.5, 0.5->1.0, 1.0->2.0, 2.0->10.
constexpr double kTableAa[8][4] = {
    {0.584, 0.840, 0.943, 1.000}, {0.511, 0.802, 0.922, 1.000},
    {0.463, 0.775, 0.906, 1.000}, {0.430, 0.755, 0.891, 1.000},
    {0.405, 0.740, 0.879, 1.000}, {0.386, 0.728, 0.869, 1.000},
    {0.371, 0.718, 0.860, 1.000}, {0.359, 0.710, 0.852, 1.000}};
constexpr double kTableBb[8][4] = {
    {0.392, 0.509, 0.347, 0.000}, {0.342, 0.486, 0.339, 0.000},
    {0.310, 0.470, 0.333, 0.000}, {0.288, 0.458, 0.328, 0.000},
    {0.272, 0.449, 0.324, 0.000}, {0.259, 0.442, 0.320, 0.000},
    {0.249, 0.436, 0.316, 0.000}, {0.241, 0.431, 0.314, 0.000}};
constexpr double kTableBa[8][4] = {
    {0.379, 0.359, 0.575, 1.000}, {0.297, 0.296, 0.520, 1.000},
    {0.245, 0.252, 0.474, 1.000}, {0.208, 0.219, 0.436, 0.999},
    {0.181, 0.194, 0.403, 0.999}, {0.160, 0.174, 0.375, 0.999},
    {0.143, 0.158, 0.351, 0.999}, {0.130, 0.144, 0.330, 0.999}};

Verdict KernelGoldenTable() {
  Verdict v;
  const std::vector<double> grid = {0.1, 0.5, 1.0, 2.0, 10.0};
  const std::vector<int> ms = {3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<KernelTableRow> rows = KernelTable(grid, ms).value();
  double worst = 0.0;
  int cells = 0;
  for (const KernelTableRow& r : rows) {
    int col = 0;
    while (grid[col] != r.eps_prev) ++col;
    const int row = r.m - 3;
    for (auto [got, want] : {std::pair{r.p_aa, kTableAa[row][col]},
                             std::pair{r.p_bb, kTableBb[row][col]},
                             std::pair{r.p_ba, kTableBa[row][col]}}) {
      worst = std::max(worst, std::abs(got - want));
      ++cells;
    }
  }
  v.Require(cells == 96, absl::StrCat("expected 96 cells, got ", cells));
  v.Require(worst <= 5e-4, absl::StrFormat("max |diff| %.3g > 5e-4", worst));
  v.Note(absl::StrFormat("%d cells, max |diff| %.3g", cells, worst));
  return v;
}

Verdict MarginalInvariance() {
  Verdict v;
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.1 * i);
  double worst = 0.0;
  int pairs = 0;
  auto check = [&](double prev, double next, int m) {
    const RelaxKernel k = MakeRelaxKernel(Eps(prev), Eps(next), m).value();
    const ResponseDistribution want = MakeResponseDistribution(Eps(next), m).value();
    const FoldedMarginal got = FoldKernel(k);
    worst = std::max({worst, std::abs(got.p_retain - want.p_retain),
                      std::abs(got.p_other - want.p_other)});
    ++pairs;
  };
  for (int m = 2; m <= 10; ++m) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = i; j < grid.size(); ++j) check(grid[i], grid[j], m);
      check(grid[i], 10.0, m);
    }
  }
  v.Require(worst <= 1e-12, absl::StrFormat("max |diff| %.3g > 1e-12", worst));
  v.Note(absl::StrFormat("%d kernels, max |diff| %.3g", pairs, worst));
  return v;
}

std::vector<std::vector<PrivacyLevel>> AuditSchedules() {
  return internal::MonotoneSchedules({Eps(0.1), Eps(0.5), Eps(1.0), Eps(2.0)}, 4);
}

Verdict ExhaustiveComposition() {
  Verdict v;
  double worst_excess = -INFINITY;
  double worst_gap = 0.0;
  int audited = 0;
  for (int m : {2, 3, 4}) {
    for (const auto& schedule : AuditSchedules()) {
      const CompositionAudit a = AuditCompositionLdp(schedule, m).value();
      for (std::size_t i = 0; i < a.bound.size(); ++i) {
        worst_excess = std::max(worst_excess, a.worst_log_ratio[i] - a.bound[i]);
        worst_gap = std::max(worst_gap, std::abs(a.worst_log_ratio[i] - a.bound[i]));
      }
      v.Require(a.WithinBound(1e-10), absl::StrCat("exceeds bound at m=", m, " ",
                                                   internal::ScheduleLabel(schedule)));
      v.Require(a.Attained(1e-10), absl::StrCat("bound not attained at m=", m, " ",
                                                internal::ScheduleLabel(schedule)));
      ++audited;
    }
  }
  v.Note(absl::StrFormat("%d schedules, max (worst - eps_n) %.3g, max |gap| %.3g",
                         audited, worst_excess, worst_gap));
  return v;
}

Verdict LastOutputAndCollusion() {
  Verdict v;
  double worst_ratio = 0.0;
  double worst_posterior = 0.0;
  int priors_checked = 0;
  for (int m : {2, 3, 4}) {
    std::vector<std::vector<double>> priors = DefaultSkewedPriors(m);
    priors.insert(priors.begin(), std::vector<double>(m, 1.0 / m));
    for (const auto& schedule : AuditSchedules()) {
      worst_ratio = std::max(worst_ratio, AuditLastOutputRatio(schedule, m).value());
      for (const auto& prior : priors) {
        worst_posterior =
            std::max(worst_posterior, AuditCollusion(schedule, prior).value());
        ++priors_checked;
      }
    }
  }
  v.Require(worst_ratio <= 1e-10,
            absl::StrFormat("ratio identity off by %.3g", worst_ratio));
  v.Require(worst_posterior <= 1e-10,
            absl::StrFormat("posterior gap %.3g", worst_posterior));
  v.Note(absl::StrFormat(
      "max ratio deviation %.3g, max posterior gap %.3g over %d (schedule, prior) "
      "pairs incl. 5 non-uniform priors per m",
      worst_ratio, worst_posterior, priors_checked));
  return v;
}

SimulationSetup Experiment1(int threads) {
  ScheduleSpec spec;
  spec.kind = ScheduleSpec::Kind::kNoisySampling;
  spec.eps_alpha = 1.0;
  spec.eps_beta = 0.5;
  spec.rounds = 10;
  return SimulationSetup{2, {400, 600}, ExpandSchedule(spec).value(), kTrials,
                         kSeedExperiment1, threads};
}

SimulationSetup Experiment2(int threads) {
  ScheduleSpec spec;
  spec.kind = ScheduleSpec::Kind::kLinear;
  spec.start = 0.1;
  spec.stop = 1.0;
  spec.stride = 0.1;
  return SimulationSetup{5, {100, 200, 300, 400, 500}, ExpandSchedule(spec).value(),
                         kTrials, kSeedExperiment2, threads};
}

RapporSetup RapporExperiment(double eps_beta, int threads) {
  return RapporSetup{{400, 600}, RapporSpec{1.0, eps_beta, 10}, kTrials, kSeedRappor,
                     threads};
}

Verdict CheckExperiment1(const SimulationResult& r) {
  Verdict v;
  double worst_z = 0.0;
  double lo_ratio = INFINITY;
  double hi_ratio = 0.0;
  for (const RoundSummary& row : r.rounds) {
    const double sigma2 = VarianceBinaryEstimate(row.epsilon, 1000);
    const double band = 4.0 * std::sqrt(sigma2) / std::sqrt(kTrials);
    const double dev = std::abs(row.estimate_mean[1] - 0.6);
    worst_z = std::max(worst_z, dev / band * 4.0);
    v.Require(dev <= band, absl::StrFormat("round %d mean %.5f outside 0.6 +- %.5f",
                                           row.round, row.estimate_mean[1], band));
    const double ratio = row.estimate_variance[1] / sigma2;
    lo_ratio = std::min(lo_ratio, ratio);
    hi_ratio = std::max(hi_ratio, ratio);
    v.Require(ratio >= 0.55 && ratio <= 1.6,
              absl::StrFormat("round %d variance ratio %.3f", row.round, ratio));
  }
  v.Note(absl::StrFormat(
      "10 rounds, max |mean-0.6| = %.2f sigma/sqrt(T), var/theory in [%.3f, %.3f]",
      worst_z, lo_ratio, hi_ratio));
  return v;
}

Verdict CheckExperiment2(const SimulationResult& r) {
  Verdict v;
  double worst_z = 0.0;
  for (const RoundSummary& row : r.rounds) {
    for (int x = 0; x < 5; ++x) {
      const double sd = std::sqrt(row.theoretical_variance[x]);
      const double band = 4.0 * sd / std::sqrt(kTrials);
      const double dev = std::abs(row.estimate_mean[x] - r.true_frequency[x]);
      worst_z = std::max(worst_z, dev / band * 4.0);
      v.Require(dev <= band, absl::StrFormat("round %d value %d mean %.5f, truth %.5f",
                                             row.round, x, row.estimate_mean[x],
                                             r.true_frequency[x]));
    }
  }
  v.Note(absl::StrFormat("10 rounds x 5 values, max |mean-truth| = %.2f sigma/sqrt(T)",
                         worst_z));
  return v;
}

void CheckAttackFloor(const SimulationResult& r, const std::string& name, Verdict& v) {
  double min_margin = INFINITY;
  std::int64_t mismatches = 0;
  for (const RoundSummary& row : r.rounds) {
    mismatches += row.last_output_mle_mismatches;
    for (const MethodSummary& a : row.attacks) {
      min_margin = std::min(min_margin, a.error_pooled - row.PooledFloor());
      v.Require(a.error_pooled >= row.PooledFloor(),
                absl::StrFormat("%s round %d %s pooled error %.4f < %.4f", name,
                                row.round, std::string(AttackMethodName(a.method)), a.error_pooled,
                                row.PooledFloor()));
    }
  }
  v.Require(mismatches == 0,
            absl::StrCat(name, ": ", mismatches, " LastOutput/MLE disagreements"));
  v.Note(absl::StrFormat("%s: min (pooled error - (floor - 3 sd)) %.4f, %d disagreements",
                         name, min_margin, mismatches));
}

Verdict RapporDominance(const RapporComparison& empirical) {
  Verdict v;
  int theory_cells = 0;
  double min_ratio_k2 = INFINITY;
  for (int b = 1; b <= 10; ++b) {
    const RapporParams p = RapporParams::FromEpsilons(Eps(1.0), Eps(0.1 * b));
    for (std::int64_t k = 1; k <= 20; ++k) {
      const double relax = VarianceBinaryEstimate(Eps(*EpsNoisySampling(k, p)), 1);
      const double ns = *VarianceNoisySampling(p, 1, k);
      // At K = 1 the two are the same mechanism; allow rounding only.
      v.Require(relax <= ns * (1 + 1e-12),
                absl::StrFormat("theory eps_beta=%.1f K=%d: %.6g > %.6g", 0.1 * b, k,
                                relax, ns));
      if (k >= 2) min_ratio_k2 = std::min(min_ratio_k2, ns / relax);
      ++theory_cells;
    }
  }
  double min_emp_ratio = INFINITY;
  for (const RapporRow& row : empirical.rows) {
    if (row.k == 1) {
      // Identical mechanisms at K = 1: both must agree with the common theory.
      for (double var : {row.relaxation_variance, row.noisy_sampling_variance}) {
        const double ratio = var / row.relaxation_theory;
        v.Require(ratio >= 0.55 && ratio <= 1.6,
                  absl::StrFormat("K=1 variance ratio %.3f", ratio));
      }
      continue;
    }
    min_emp_ratio =
        std::min(min_emp_ratio, row.noisy_sampling_variance / row.relaxation_variance);
    v.Require(row.relaxation_variance < row.noisy_sampling_variance,
              absl::StrFormat("empirical K=%d: relaxation %.4g >= noisy sampling %.4g",
                              row.k, row.relaxation_variance,
                              row.noisy_sampling_variance));
  }
  v.Note(absl::StrFormat(
      "%d theory cells, min theory ratio (K>=2) %.3f; empirical min ns/relax (K>=2) "
      "%.3f",
      theory_cells, min_ratio_k2, min_emp_ratio));
  return v;
}

Verdict NoisySamplingCrossCheck() {
  Verdict v;
  double worst = 0.0;
  for (int b = 1; b <= 10; ++b) {
    const RapporParams p = RapporParams::FromEpsilons(Eps(1.0), Eps(0.1 * b));
    for (std::int64_t k = 1; k <= 10; ++k) {
      worst = std::max(worst, std::abs(*AuditNoisySamplingEpsilon(k, p) -
                                       *EpsNoisySampling(k, p)));
    }
  }
  v.Require(worst <= 1e-10, absl::StrFormat("max |diff| %.3g", worst));
  v.Note(absl::StrFormat("eps_alpha=1, eps_beta in 0.1..1.0, K<=10, max |diff| %.3g",
                         worst));
  return v;
}

// CSVs of criteria 5-8 for one thread count.
std::string ExperimentCsvs(int threads) {
  std::ostringstream out;
  for (const SimulationSetup& s : {Experiment1(threads), Experiment2(threads)}) {
    const SimulationResult r = RunSimulation(s).value();
    WriteSimulationCsv(r, out);
    WriteAttackCsv(r, out);
  }
  WriteRapporCsv(RunRapporComparison(RapporExperiment(0.5, threads)).value(), out);
  return out.str();
}

class Runner {
 public:
  void Run(int id, const std::string& title, double budget_seconds,
           const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v = body();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.Require(seconds < budget_seconds,
              absl::StrFormat("took %.2fs, budget %.0fs", seconds, budget_seconds));
    all_pass_ = all_pass_ && v.pass;
    std::printf("CRITERION %2d %s  %s (%.2fs) -- %s\n", id, v.pass ? "PASS" : "FAIL",
                title.c_str(), seconds, v.detail.c_str());
    std::fflush(stdout);
  }

  bool all_pass() const { return all_pass_; }

 private:
  bool all_pass_ = true;
};

int Main() {
  Runner runner;
  runner.Run(1, "kernel golden table", 1, KernelGoldenTable);
  runner.Run(2, "marginal invariance", 1, MarginalInvariance);
  runner.Run(3, "exhaustive composition LDP", 5, ExhaustiveComposition);
  runner.Run(4, "last-output ratio and collusion-proofness", 5, LastOutputAndCollusion);

  SimulationResult exp1;
  SimulationResult exp2;
  runner.Run(5, "experiment 1 reproduction", 30, [&] {
    exp1 = RunSimulation(Experiment1(1)).value();
    return CheckExperiment1(exp1);
  });
  runner.Run(6, "experiment 2 reproduction", 60, [&] {
    exp2 = RunSimulation(Experiment2(1)).value();
    return CheckExperiment2(exp2);
  });
  runner.Run(7, "attack error floor", 60, [&] {
    Verdict v;
    CheckAttackFloor(exp1, "experiment 1", v);
    CheckAttackFloor(exp2, "experiment 2", v);
    return v;
  });
  runner.Run(8, "RAPPOR dominance", 30, [&] {
    return RapporDominance(RunRapporComparison(RapporExperiment(0.5, 1)).value());
  });
  runner.Run(9, "noisy-sampling epsilon cross-check", 1, NoisySamplingCrossCheck);
  runner.Run(10, "determinism", 120, [&] {
    Verdict v;
    const std::string first = ExperimentCsvs(1);
    const std::string again = ExperimentCsvs(1);
    const std::string threaded = ExperimentCsvs(4);
    v.Require(first == again, "rerun with the same seed differs");
    v.Require(first == threaded, "4-thread run differs from 1-thread run");
    v.Note(absl::StrFormat("%d bytes identical across reruns and 1/4 threads",
                           first.size()));
    return v;
  });
  std::printf("%s\n", runner.all_pass() ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return runner.all_pass() ? 0 : 1;
}

}  // namespace
}  // namespace ldp_relax

int main() { return ldp_relax::Main(); }
