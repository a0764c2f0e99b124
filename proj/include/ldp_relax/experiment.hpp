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

// Monte Carlo experiment drivers and their CSV output.
//
// Random streams are addressed by coordinates under the master seed:
//   {0, trial, object}  relaxation chain of one object
//   {1, trial}          balanced evaluation subset of one trial
//   {2, trial, client}  RAPPOR reports of one client
// Trials run in parallel, each trial writes only its own slot, and slots are
// reduced in trial order, so results do not depend on the thread count.

#ifndef LDP_RELAX_EXPERIMENT_HPP_
#define LDP_RELAX_EXPERIMENT_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "ldp_relax/audit.hpp"
#include "ldp_relax/config.hpp"
#include "ldp_relax/estimation.hpp"
#include "ldp_relax/inference.hpp"
#include "ldp_relax/mechanism.hpp"
#include "ldp_relax/random.hpp"
#include "ldp_relax/rappor.hpp"

namespace ldp_relax {

namespace internal {

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first error in
// index order wins.
inline absl::Status ParallelFor(std::int64_t n, int threads,
                                const std::function<absl::Status(std::int64_t)>& fn) {
  std::vector<absl::Status> status(static_cast<std::size_t>(n));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t i = next++; i < n; i = next++) status[i] = fn(i);
  };
  const int workers =
      static_cast<int>(std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(n, 1)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const absl::Status& s : status) {
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;  // unbiased, 0 for fewer than two samples
};

inline MeanVariance Summarize(std::span<const double> xs) {
  MeanVariance out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  for (double x : xs) out.variance += (x - out.mean) * (x - out.mean);
  out.variance /= static_cast<double>(xs.size() - 1);
  return out;
}

inline std::string FormatDouble(double v) { return absl::StrFormat("%.17g", v); }

}  // namespace internal

// True values laid out by value: counts[0] objects hold 0, then counts[1]
// objects hold 1, and so on.
inline absl::StatusOr<std::vector<int>> PopulationFromCounts(
    std::span<const std::int64_t> counts) {
  if (absl::Status s = ValidateDomainSize(static_cast<int>(counts.size()));
      !s.ok()) {
    return s;
  }
  std::vector<int> truth;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("count for value ", v, " must be at least 1"));
    }
    truth.insert(truth.end(), static_cast<std::size_t>(counts[v]),
                 static_cast<int>(v));
  }
  return truth;
}

struct SimulationSetup {
  int m = 2;
  std::vector<std::int64_t> counts;
  std::vector<PrivacyLevel> schedule;
  std::int64_t trials = 100;
  std::uint64_t seed = 1;
  int threads = 1;
};

inline absl::StatusOr<SimulationSetup> SimulationSetupFromConfig(
    const ExperimentConfig& cfg) {
  if (!cfg.m) return absl::InvalidArgumentError("config needs 'm'");
  if (cfg.counts.empty()) return absl::InvalidArgumentError("config needs 'counts'");
  if (!cfg.schedule) return absl::InvalidArgumentError("config needs 'schedule'");
  absl::StatusOr<std::vector<PrivacyLevel>> schedule =
      ExpandSchedule(*cfg.schedule);
  if (!schedule.ok()) return schedule.status();
  return SimulationSetup{*cfg.m,      cfg.counts, *std::move(schedule),
                         cfg.trials, cfg.seed,   cfg.threads};
}

struct MethodSummary {
  AttackMethod method;
  double error_mean;    // mean of per-trial error rates
  double error_stddev;  // across trials
  double error_pooled;  // all wrong guesses / all evaluated guesses
  std::int64_t evaluated;
};

struct RoundSummary {
  int round;  // 1-based
  PrivacyLevel epsilon;
  std::vector<double> estimate_mean;    // per value, across trials
  std::vector<double> estimate_variance;
  std::vector<double> theoretical_variance;
  std::vector<MethodSummary> attacks;  // in kAllAttackMethods order
  double min_error_rate;
  std::int64_t last_output_mle_mismatches;

  // Floor minus three binomial standard deviations of the pooled rate.
  double PooledFloor() const {
    const std::int64_t n = attacks.front().evaluated;
    const double q = min_error_rate;
    return q - 3.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(n));
  }
};

struct SimulationResult {
  SimulationSetup setup;
  std::vector<double> true_frequency;
  std::vector<RoundSummary> rounds;
};

namespace internal {

struct TrialRecord {
  std::vector<double> estimates;       // rounds x m
  std::vector<std::int64_t> wrong;     // rounds x methods
  std::int64_t evaluated = 0;
  std::vector<std::int64_t> mismatches;  // per round
};

}  // namespace internal

inline absl::StatusOr<SimulationResult> RunSimulation(
    const SimulationSetup& setup) {
  if (setup.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (static_cast<int>(setup.counts.size()) != setup.m) {
    return absl::InvalidArgumentError("counts must have m entries");
  }
  absl::StatusOr<std::vector<int>> truth = PopulationFromCounts(setup.counts);
  if (!truth.ok()) return truth.status();
  absl::StatusOr<ScheduleKernels> kernels =
      PrecomputeKernels(setup.schedule, setup.m);
  if (!kernels.ok()) return kernels.status();
  std::vector<PerturbationMatrix> perturbation;
  for (PrivacyLevel eps : setup.schedule) {
    absl::StatusOr<PerturbationMatrix> p = MakePerturbationMatrix(eps, setup.m);
    if (!p.ok()) return p.status();
    perturbation.push_back(*p);
  }

  const int m = setup.m;
  const std::size_t rounds = setup.schedule.size();
  const std::size_t n_objects = truth->size();
  constexpr std::size_t kMethods = kAllAttackMethods.size();
  std::vector<internal::TrialRecord> records(
      static_cast<std::size_t>(setup.trials));

  absl::Status status = internal::ParallelFor(
      setup.trials, setup.threads, [&](std::int64_t trial) -> absl::Status {
        internal::TrialRecord& rec = records[trial];
        std::vector<int> outputs(n_objects * rounds);
        const auto t = static_cast<std::uint64_t>(trial);
        for (std::size_t i = 0; i < n_objects; ++i) {
          StreamRng rng = StreamRng::ForStream(setup.seed, {0, t, i});
          SampleChainUnchecked(
              *kernels, (*truth)[i], rng,
              std::span<int>(outputs).subspan(i * rounds, rounds));
        }
        StreamRng subset_rng = StreamRng::ForStream(setup.seed, {1, t});
        absl::StatusOr<std::vector<std::size_t>> subset =
            BalancedSubset(*truth, m, subset_rng);
        if (!subset.ok()) return subset.status();
        rec.evaluated = static_cast<std::int64_t>(subset->size());

        rec.estimates.resize(rounds * m);
        rec.wrong.assign(rounds * kMethods, 0);
        rec.mismatches.assign(rounds, 0);
        std::vector<double> observed(static_cast<std::size_t>(m));
        for (std::size_t r = 0; r < rounds; ++r) {
          std::fill(observed.begin(), observed.end(), 0.0);
          for (std::size_t i = 0; i < n_objects; ++i) {
            observed[outputs[i * rounds + r]] += 1.0;
          }
          for (double& o : observed) o /= static_cast<double>(n_objects);
          const std::vector<double> est = perturbation[r].ApplyInverse(observed);
          std::copy(est.begin(), est.end(), rec.estimates.begin() + r * m);

          for (std::size_t i : *subset) {
            const std::span<const int> prefix(outputs.data() + i * rounds,
                                              r + 1);
            int guesses[kMethods];
            for (std::size_t k = 0; k < kMethods; ++k) {
              guesses[k] = GuessUnchecked(kAllAttackMethods[k], *kernels, prefix);
              rec.wrong[r * kMethods + k] += guesses[k] != (*truth)[i];
            }
            rec.mismatches[r] += guesses[0] != guesses[1];
          }
        }
        return absl::OkStatus();
      });
  if (!status.ok()) return status;

  SimulationResult result{setup, {}, {}};
  for (std::int64_t c : setup.counts) {
    result.true_frequency.push_back(static_cast<double>(c) / n_objects);
  }
  std::vector<double> column(static_cast<std::size_t>(setup.trials));
  for (std::size_t r = 0; r < rounds; ++r) {
    RoundSummary row{static_cast<int>(r + 1), setup.schedule[r], {}, {}, {}, {},
                     0.0, 0};
    const Matrix cov = EstimateCovariance(perturbation[r], result.true_frequency,
                                          static_cast<std::int64_t>(n_objects));
    for (int v = 0; v < m; ++v) {
      for (std::int64_t t = 0; t < setup.trials; ++t) {
        column[t] = records[t].estimates[r * m + v];
      }
      const internal::MeanVariance mv = internal::Summarize(column);
      row.estimate_mean.push_back(mv.mean);
      row.estimate_variance.push_back(mv.variance);
      row.theoretical_variance.push_back(cov(v, v));
    }
    for (std::size_t k = 0; k < kMethods; ++k) {
      std::int64_t wrong = 0;
      std::int64_t evaluated = 0;
      for (std::int64_t t = 0; t < setup.trials; ++t) {
        column[t] = static_cast<double>(records[t].wrong[r * kMethods + k]) /
                    records[t].evaluated;
        wrong += records[t].wrong[r * kMethods + k];
        evaluated += records[t].evaluated;
      }
      const internal::MeanVariance mv = internal::Summarize(column);
      row.attacks.push_back(MethodSummary{
          kAllAttackMethods[k], mv.mean, std::sqrt(mv.variance),
          static_cast<double>(wrong) / evaluated, evaluated});
    }
    row.min_error_rate = MinErrorRate(setup.schedule[r], m).value();
    for (const internal::TrialRecord& rec : records) {
      row.last_output_mle_mismatches += rec.mismatches[r];
    }
    result.rounds.push_back(std::move(row));
  }
  return result;
}

inline void WriteSimulationCsv(const SimulationResult& result,
                               std::ostream& out) {
  using internal::FormatDouble;
  const int m = result.setup.m;
  std::vector<std::string> header = {"round", "epsilon"};
  for (int v = 0; v < m; ++v) {
    header.push_back(absl::StrCat("true_freq_", v));
    header.push_back(absl::StrCat("est_mean_", v));
    header.push_back(absl::StrCat("est_var_", v));
    header.push_back(absl::StrCat("theory_var_", v));
  }
  for (AttackMethod method : kAllAttackMethods) {
    const std::string name(AttackMethodName(method));
    header.push_back(absl::StrCat("err_mean_", name));
    header.push_back(absl::StrCat("err_std_", name));
  }
  header.push_back("min_error_rate");
  out << absl::StrJoin(header, ",") << "\n";
  for (const RoundSummary& row : result.rounds) {
    std::vector<std::string> cells = {absl::StrCat(row.round),
                                      FormatDouble(row.epsilon.nats())};
    for (int v = 0; v < m; ++v) {
      cells.push_back(FormatDouble(result.true_frequency[v]));
      cells.push_back(FormatDouble(row.estimate_mean[v]));
      cells.push_back(FormatDouble(row.estimate_variance[v]));
      cells.push_back(FormatDouble(row.theoretical_variance[v]));
    }
    for (const MethodSummary& a : row.attacks) {
      cells.push_back(FormatDouble(a.error_mean));
      cells.push_back(FormatDouble(a.error_stddev));
    }
    cells.push_back(FormatDouble(row.min_error_rate));
    out << absl::StrJoin(cells, ",") << "\n";
  }
}

// One row per (round, method), with the pooled floor check.
inline void WriteAttackCsv(const SimulationResult& result, std::ostream& out) {
  using internal::FormatDouble;
  out << "round,epsilon,method,error_mean,error_std,error_pooled,evaluated,"
         "min_error_rate,pooled_floor,above_floor,last_output_mle_mismatches\n";
  for (const RoundSummary& row : result.rounds) {
    for (const MethodSummary& a : row.attacks) {
      out << absl::StrJoin(
                 {absl::StrCat(row.round), FormatDouble(row.epsilon.nats()),
                  std::string(AttackMethodName(a.method)),
                  FormatDouble(a.error_mean), FormatDouble(a.error_stddev),
                  FormatDouble(a.error_pooled), absl::StrCat(a.evaluated),
                  FormatDouble(row.min_error_rate),
                  FormatDouble(row.PooledFloor()),
                  std::string(a.error_pooled >= row.PooledFloor() ? "1" : "0"),
                  absl::StrCat(row.last_output_mle_mismatches)},
                 ",")
          << "\n";
    }
  }
}

struct RapporSetup {
  std::vector<std::int64_t> counts;  // [zeros, ones]
  RapporSpec spec;
  std::int64_t trials = 100;
  std::uint64_t seed = 1;
  int threads = 1;
};

inline absl::StatusOr<RapporSetup> RapporSetupFromConfig(
    const ExperimentConfig& cfg) {
  if (cfg.counts.size() != 2 || cfg.m != 2) {
    return absl::InvalidArgumentError(
        "compare-rappor needs m = 2 and counts [zeros, ones]");
  }
  return RapporSetup{cfg.counts, cfg.rappor.value_or(RapporSpec{}), cfg.trials,
                     cfg.seed, cfg.threads};
}

struct RapporRow {
  std::int64_t k;
  double eps_noisy_sampling;
  double relaxation_mean;
  double relaxation_variance;
  double relaxation_theory;
  double noisy_sampling_mean;
  double noisy_sampling_variance;
  double noisy_sampling_theory;
};

struct RapporComparison {
  RapporSetup setup;
  double true_frequency;  // of ones
  std::vector<RapporRow> rows;
};

// For K = 1..k_max, estimates the frequency of ones (a) from a relaxation
// chain whose round K is released at eps_ns(K), and (b) from K RAPPOR
// instantaneous reports per client at the same privacy level.
inline absl::StatusOr<RapporComparison> RunRapporComparison(
    const RapporSetup& setup) {
  absl::StatusOr<PrivacyLevel> ea = PrivacyLevel::Create(setup.spec.eps_alpha);
  if (!ea.ok()) return ea.status();
  absl::StatusOr<PrivacyLevel> eb = PrivacyLevel::Create(setup.spec.eps_beta);
  if (!eb.ok()) return eb.status();
  if (setup.spec.k_max < 1) return absl::InvalidArgumentError("k_max must be >= 1");
  const RapporParams params = RapporParams::FromEpsilons(*ea, *eb);
  ScheduleSpec spec;
  spec.kind = ScheduleSpec::Kind::kNoisySampling;
  spec.eps_alpha = setup.spec.eps_alpha;
  spec.eps_beta = setup.spec.eps_beta;
  spec.rounds = setup.spec.k_max;
  absl::StatusOr<std::vector<PrivacyLevel>> schedule = ExpandSchedule(spec);
  if (!schedule.ok()) return schedule.status();

  absl::StatusOr<std::vector<int>> truth = PopulationFromCounts(setup.counts);
  if (!truth.ok()) return truth.status();
  absl::StatusOr<ScheduleKernels> kernels = PrecomputeKernels(*schedule, 2);
  if (!kernels.ok()) return kernels.status();

  const std::size_t k_max = static_cast<std::size_t>(setup.spec.k_max);
  const std::size_t n = truth->size();
  // Per trial: relaxation estimate and noisy-sampling estimate per K.
  std::vector<std::vector<double>> relax_est(setup.trials);
  std::vector<std::vector<double>> ns_est(setup.trials);
  absl::Status status = internal::ParallelFor(
      setup.trials, setup.threads, [&](std::int64_t trial) -> absl::Status {
        const auto t = static_cast<std::uint64_t>(trial);
        std::vector<std::int64_t> relax_ones(k_max, 0);
        std::vector<double> debiased_sum(k_max, 0.0);
        std::vector<int> outputs(k_max);
        for (std::size_t i = 0; i < n; ++i) {
          StreamRng rng = StreamRng::ForStream(setup.seed, {0, t, i});
          SampleChainUnchecked(*kernels, (*truth)[i], rng, outputs);
          for (std::size_t k = 0; k < k_max; ++k) relax_ones[k] += outputs[k];

          StreamRng client = StreamRng::ForStream(setup.seed, {2, t, i});
          const NoisySampler sampler((*truth)[i], params, client);
          std::int64_t ones = 0;
          for (std::size_t k = 0; k < k_max; ++k) {
            ones += sampler.Sample(client);
            debiased_sum[k] += EstimateBinary(
                static_cast<double>(ones) / static_cast<double>(k + 1),
                params.eps_beta);
          }
        }
        for (std::size_t k = 0; k < k_max; ++k) {
          relax_est[trial].push_back(EstimateBinary(
              static_cast<double>(relax_ones[k]) / n, (*schedule)[k]));
          ns_est[trial].push_back(
              EstimateBinary(debiased_sum[k] / n, params.eps_alpha));
        }
        return absl::OkStatus();
      });
  if (!status.ok()) return status;

  RapporComparison out{setup, static_cast<double>(setup.counts[1]) / n, {}};
  std::vector<double> column(static_cast<std::size_t>(setup.trials));
  const auto nn = static_cast<std::int64_t>(n);
  for (std::size_t k = 0; k < k_max; ++k) {
    RapporRow row;
    row.k = static_cast<std::int64_t>(k + 1);
    row.eps_noisy_sampling = (*schedule)[k].nats();
    for (std::int64_t t = 0; t < setup.trials; ++t) column[t] = relax_est[t][k];
    internal::MeanVariance mv = internal::Summarize(column);
    row.relaxation_mean = mv.mean;
    row.relaxation_variance = mv.variance;
    row.relaxation_theory = VarianceBinaryEstimate((*schedule)[k], nn);
    for (std::int64_t t = 0; t < setup.trials; ++t) column[t] = ns_est[t][k];
    mv = internal::Summarize(column);
    row.noisy_sampling_mean = mv.mean;
    row.noisy_sampling_variance = mv.variance;
    absl::StatusOr<double> theory = VarianceNoisySampling(params, nn, row.k);
    if (!theory.ok()) return theory.status();
    row.noisy_sampling_theory = *theory;
    out.rows.push_back(row);
  }
  return out;
}

inline void WriteRapporCsv(const RapporComparison& c, std::ostream& out) {
  using internal::FormatDouble;
  out << "k,eps_noisy_sampling,true_freq,relax_mean,relax_var,relax_theory_var,"
         "ns_mean,ns_var,ns_theory_var\n";
  for (const RapporRow& r : c.rows) {
    out << absl::StrJoin(
               {absl::StrCat(r.k), FormatDouble(r.eps_noisy_sampling),
                FormatDouble(c.true_frequency), FormatDouble(r.relaxation_mean),
                FormatDouble(r.relaxation_variance),
                FormatDouble(r.relaxation_theory),
                FormatDouble(r.noisy_sampling_mean),
                FormatDouble(r.noisy_sampling_variance),
                FormatDouble(r.noisy_sampling_theory)},
               ",")
        << "\n";
  }
}

struct KernelTableRow {
  int m;
  double eps_prev;
  double eps_next;
  double p_aa;
  double p_bb;
  double p_ba;
};

// One row per m and consecutive pair of the (non-decreasing) grid.
inline absl::StatusOr<std::vector<KernelTableRow>> KernelTable(
    std::span<const double> eps_grid, std::span<const int> m_grid) {
  std::vector<PrivacyLevel> levels;
  for (double e : eps_grid) {
    absl::StatusOr<PrivacyLevel> level = PrivacyLevel::Create(e);
    if (!level.ok()) return level.status();
    levels.push_back(*level);
  }
  std::vector<KernelTableRow> rows;
  for (int m : m_grid) {
    for (std::size_t i = 1; i < levels.size(); ++i) {
      absl::StatusOr<RelaxKernel> k = MakeRelaxKernel(levels[i - 1], levels[i], m);
      if (!k.ok()) return k.status();
      rows.push_back({m, eps_grid[i - 1], eps_grid[i], k->p_aa, k->p_bb, k->p_ba});
    }
  }
  return rows;
}

inline void WriteKernelTableCsv(std::span<const KernelTableRow> rows,
                                std::ostream& out) {
  using internal::FormatDouble;
  out << "m,eps_prev,eps_next,p_aa,p_bb,p_ba\n";
  for (const KernelTableRow& r : rows) {
    out << absl::StrJoin({absl::StrCat(r.m), FormatDouble(r.eps_prev),
                          FormatDouble(r.eps_next), FormatDouble(r.p_aa),
                          FormatDouble(r.p_bb), FormatDouble(r.p_ba)},
                         ",")
        << "\n";
  }
}

struct AuditRow {
  std::string check;
  int m;
  std::string subject;  // schedule, prior or K
  double value;
  double expected;
  double tolerance;
  bool pass;
};

struct AuditReport {
  std::vector<AuditRow> rows;

  bool AllPass() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const AuditRow& r) { return r.pass; });
  }
};

// Five fixed non-uniform priors over m values.
inline std::vector<std::vector<double>> DefaultSkewedPriors(int m) {
  std::vector<std::vector<double>> out;
  auto normalized = [](std::vector<double> w) {
    double total = 0.0;
    for (double v : w) total += v;
    for (double& v : w) v /= total;
    return w;
  };
  std::vector<double> linear, reversed, square, geometric, spike;
  for (int i = 0; i < m; ++i) {
    linear.push_back(i + 1.0);
    reversed.push_back(static_cast<double>(m - i));
    square.push_back((i + 1.0) * (i + 1.0));
    geometric.push_back(std::pow(0.3, i));
    spike.push_back(i == m / 2 ? 10.0 : 1.0);
  }
  for (auto* w : {&linear, &reversed, &square, &geometric, &spike}) {
    out.push_back(normalized(*w));
  }
  return out;
}

namespace internal {

// All non-decreasing sequences of length 1..max_length over sorted values.
inline std::vector<std::vector<PrivacyLevel>> MonotoneSchedules(
    std::vector<PrivacyLevel> values, int max_length) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::vector<PrivacyLevel>> out;
  std::vector<PrivacyLevel> current;
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (!current.empty()) out.push_back(current);
    if (static_cast<int>(current.size()) == max_length) return;
    for (std::size_t i = from; i < values.size(); ++i) {
      current.push_back(values[i]);
      extend(i);
      current.pop_back();
    }
  };
  extend(0);
  return out;
}

inline std::string ScheduleLabel(std::span<const PrivacyLevel> schedule) {
  return absl::StrJoin(schedule, ";", [](std::string* out, PrivacyLevel e) {
    absl::StrAppend(out, absl::StrFormat("%g", e.nats()));
  });
}

}  // namespace internal

inline constexpr double kAuditTolerance = 1e-10;
inline constexpr double kMarginalTolerance = 1e-12;

// Runs every exhaustive check over the configured grid.
inline absl::StatusOr<AuditReport> RunAudit(const AuditSpec& spec,
                                            const RapporSpec& rappor) {
  std::vector<PrivacyLevel> values;
  for (double e : spec.eps_values) {
    absl::StatusOr<PrivacyLevel> level = PrivacyLevel::Create(e);
    if (!level.ok()) return level.status();
    values.push_back(*level);
  }
  const std::vector<std::vector<PrivacyLevel>> schedules =
      internal::MonotoneSchedules(values, spec.max_length);
  AuditReport report;
  auto add = [&](std::string check, int m, std::string subject, double value,
                 double expected, double tolerance, bool pass) {
    report.rows.push_back(AuditRow{std::move(check), m, std::move(subject),
                                   value, expected, tolerance, pass});
  };

  for (int m : spec.m_values) {
    std::vector<std::vector<double>> priors = {
        std::vector<double>(static_cast<std::size_t>(m), 1.0 / m)};
    if (spec.priors.empty()) {
      for (auto& p : DefaultSkewedPriors(m)) priors.push_back(std::move(p));
    } else {
      for (const auto& p : spec.priors) {
        if (static_cast<int>(p.size()) != m) continue;
        absl::StatusOr<Prior> checked = Prior::Create(p);
        if (!checked.ok()) return checked.status();
        priors.push_back(p);
      }
    }

    for (const std::vector<PrivacyLevel>& schedule : schedules) {
      const std::string label = internal::ScheduleLabel(schedule);
      const double eps_n = schedule.back().effective();

      absl::StatusOr<CompositionAudit> comp = AuditCompositionLdp(schedule, m);
      if (!comp.ok()) return comp.status();
      add("composition_ldp", m, label, comp->worst(), eps_n, kAuditTolerance,
          comp->WithinBound(kAuditTolerance) && comp->Attained(kAuditTolerance));

      absl::StatusOr<double> ratio = AuditLastOutputRatio(schedule, m);
      if (!ratio.ok()) return ratio.status();
      add("last_output_ratio", m, label, *ratio, 0.0, kAuditTolerance,
          *ratio <= kAuditTolerance);

      for (std::size_t j = 0; j < priors.size(); ++j) {
        absl::StatusOr<double> gap = AuditCollusion(schedule, priors[j]);
        if (!gap.ok()) return gap.status();
        add(absl::StrCat("collusion_prior_", j), m, label, *gap, 0.0,
            kAuditTolerance, *gap <= kAuditTolerance);
      }

      absl::StatusOr<double> marg = AuditMarginals(schedule, m);
      if (!marg.ok()) return marg.status();
      add("marginals", m, label, *marg, 0.0, kMarginalTolerance,
          *marg <= kMarginalTolerance);
    }

    // Single-step leakage: exactly eps_prev + eps_next for m = 2, at least
    // eps_next otherwise, 0 for the identity step.
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = i; j < values.size(); ++j) {
        absl::StatusOr<double> step = AuditStepEpsilon(values[i], values[j], m);
        if (!step.ok()) return step.status();
        const std::string label =
            internal::ScheduleLabel(std::vector<PrivacyLevel>{values[i], values[j]});
        if (i == j || values[i] == values[j]) {
          add("step_epsilon", m, label, *step, 0.0, kAuditTolerance,
              std::abs(*step) <= kAuditTolerance);
        } else if (m == 2) {
          const double expected = values[i].effective() + values[j].effective();
          add("step_epsilon", m, label, *step, expected, kAuditTolerance,
              std::abs(*step - expected) <= kAuditTolerance);
        } else {
          add("step_epsilon_lower", m, label, *step, values[j].effective(),
              kAuditTolerance, *step >= values[j].effective() - kAuditTolerance);
        }
      }
    }
  }

  absl::StatusOr<PrivacyLevel> ea = PrivacyLevel::Create(rappor.eps_alpha);
  if (!ea.ok()) return ea.status();
  absl::StatusOr<PrivacyLevel> eb = PrivacyLevel::Create(rappor.eps_beta);
  if (!eb.ok()) return eb.status();
  const RapporParams params = RapporParams::FromEpsilons(*ea, *eb);
  for (std::int64_t k = 1; k <= spec.noisy_sampling_k_max; ++k) {
    absl::StatusOr<double> enumerated = AuditNoisySamplingEpsilon(k, params);
    if (!enumerated.ok()) return enumerated.status();
    const double closed = EpsNoisySampling(k, params).value();
    add("noisy_sampling_epsilon", 2, absl::StrCat("K=", k), *enumerated, closed,
        kAuditTolerance, std::abs(*enumerated - closed) <= kAuditTolerance);
  }
  return report;
}

inline void WriteAuditCsv(const AuditReport& report, std::ostream& out) {
  using internal::FormatDouble;
  out << "check,m,subject,value,expected,tolerance,pass\n";
  for (const AuditRow& r : report.rows) {
    out << absl::StrJoin({r.check, absl::StrCat(r.m), r.subject,
                          FormatDouble(r.value), FormatDouble(r.expected),
                          FormatDouble(r.tolerance),
                          std::string(r.pass ? "1" : "0")},
                         ",")
        << "\n";
  }
}

}  // namespace ldp_relax

#endif  // LDP_RELAX_EXPERIMENT_HPP_
