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

// Exhaustive checks of the privacy claims on small instances. Every check
// enumerates all m^n output sequences and works from the exact joint law,
// so none of them share code with the sampling path.
//
// Joint probabilities are accumulated in log space. Ratios are only taken
// over outcomes that are possible under both inputs; an outcome possible for
// one input and impossible for another counts as an unbounded ratio.

#ifndef LDP_RELAX_AUDIT_HPP_
#define LDP_RELAX_AUDIT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "ldp_relax/mechanism.hpp"
#include "ldp_relax/rappor.hpp"

namespace ldp_relax {

inline constexpr std::int64_t kMaxEnumeratedSequences = 1'000'000;

// Exact Pr(o_1..o_n | x) for every sequence. Sequences are coded in base m
// with o_1 as the most significant digit.
struct ChainDistribution {
  int m;
  int n;
  int true_value;
  std::vector<double> log_prob;

  std::size_t size() const { return log_prob.size(); }
  double probability(std::size_t code) const { return std::exp(log_prob[code]); }
  int last_output(std::size_t code) const { return static_cast<int>(code % m); }

  std::vector<int> Decode(std::size_t code) const {
    std::vector<int> seq(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      seq[i] = static_cast<int>(code % m);
      code /= m;
    }
    return seq;
  }
};

inline absl::Status CheckEnumerationSize(std::size_t n, int m) {
  double total = 1.0;
  for (std::size_t i = 0; i < n; ++i) total *= m;
  if (total > static_cast<double>(kMaxEnumeratedSequences)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "m^n = ", m, "^", n, " exceeds the enumeration cap of ",
        kMaxEnumeratedSequences));
  }
  return absl::OkStatus();
}

inline absl::StatusOr<ChainDistribution> EnumerateChainDistribution(
    std::span<const PrivacyLevel> schedule, int m, int x) {
  absl::StatusOr<ScheduleKernels> kernels = PrecomputeKernels(schedule, m);
  if (!kernels.ok()) return kernels.status();
  if (absl::Status s = ValidateValue(x, m, "x"); !s.ok()) return s;
  if (absl::Status s = CheckEnumerationSize(schedule.size(), m); !s.ok()) {
    return s;
  }

  std::vector<double> current(static_cast<std::size_t>(m));
  for (int o = 0; o < m; ++o) {
    current[o] = std::log(kernels->initial.Probability(x, o));
  }
  for (const RelaxKernel& k : kernels->steps) {
    std::vector<double> next(current.size() * m);
    for (std::size_t code = 0; code < current.size(); ++code) {
      const int prev = static_cast<int>(code % m);
      for (int o = 0; o < m; ++o) {
        next[code * m + o] =
            current[code] + std::log(KernelProbability(k, x, prev, o));
      }
    }
    current = std::move(next);
  }
  return ChainDistribution{m, static_cast<int>(schedule.size()), x,
                           std::move(current)};
}

namespace internal {

inline absl::StatusOr<std::vector<ChainDistribution>> EnumerateAllInputs(
    std::span<const PrivacyLevel> schedule, int m) {
  std::vector<ChainDistribution> out;
  for (int x = 0; x < m; ++x) {
    absl::StatusOr<ChainDistribution> d =
        EnumerateChainDistribution(schedule, m, x);
    if (!d.ok()) return d.status();
    out.push_back(*std::move(d));
  }
  return out;
}

// max_x ln p_x - min_x ln p_x over inputs where the sequence is possible;
// +inf when some input makes it impossible and another does not.
inline double WorstLogRatio(std::span<const ChainDistribution> by_input,
                            std::size_t code) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double hi = -kInf;
  double lo = kInf;
  for (const ChainDistribution& d : by_input) {
    hi = std::max(hi, d.log_prob[code]);
    lo = std::min(lo, d.log_prob[code]);
  }
  if (hi == -kInf) return -kInf;  // impossible for every input
  return hi - lo;
}

}  // namespace internal

struct CompositionAudit {
  std::vector<double> worst_log_ratio;  // per prefix length 1..n
  std::vector<double> bound;            // eps_i for the same prefix

  double worst() const { return worst_log_ratio.back(); }

  bool WithinBound(double tol) const {
    for (std::size_t i = 0; i < bound.size(); ++i) {
      if (!(worst_log_ratio[i] <= bound[i] + tol)) return false;
    }
    return true;
  }

  bool Attained(double tol) const {
    for (std::size_t i = 0; i < bound.size(); ++i) {
      if (!(std::abs(worst_log_ratio[i] - bound[i]) <= tol)) return false;
    }
    return true;
  }
};

// Worst-case privacy loss of every prefix o_1..o_i of the released sequence.
inline absl::StatusOr<CompositionAudit> AuditCompositionLdp(
    std::span<const PrivacyLevel> schedule, int m) {
  if (absl::Status s = ValidateSchedule(schedule); !s.ok()) return s;
  CompositionAudit audit;
  for (std::size_t len = 1; len <= schedule.size(); ++len) {
    absl::StatusOr<std::vector<ChainDistribution>> by_input =
        internal::EnumerateAllInputs(schedule.first(len), m);
    if (!by_input.ok()) return by_input.status();
    double worst = 0.0;
    for (std::size_t code = 0; code < by_input->front().size(); ++code) {
      worst = std::max(worst, internal::WorstLogRatio(*by_input, code));
    }
    audit.worst_log_ratio.push_back(worst);
    audit.bound.push_back(schedule[len - 1].effective());
  }
  return audit;
}

// max over sequences and input pairs of
//   | [Pr(seq|x) / Pr(seq|x')] / [Pr(o_n|x) / Pr(o_n|x')] - 1 |.
inline absl::StatusOr<double> AuditLastOutputRatio(
    std::span<const PrivacyLevel> schedule, int m) {
  absl::StatusOr<std::vector<ChainDistribution>> by_input =
      internal::EnumerateAllInputs(schedule, m);
  if (!by_input.ok()) return by_input.status();
  const ResponseDistribution last =
      MakeResponseDistribution(schedule.back(), m).value();
  double worst = 0.0;
  for (std::size_t code = 0; code < by_input->front().size(); ++code) {
    const int o_n = by_input->front().last_output(code);
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < m; ++y) {
        if (x == y) continue;
        const double lx = (*by_input)[x].log_prob[code];
        const double ly = (*by_input)[y].log_prob[code];
        if (std::isinf(lx) && std::isinf(ly)) continue;
        const double chain_log_ratio = lx - ly;
        const double last_log_ratio = std::log(last.Probability(x, o_n)) -
                                      std::log(last.Probability(y, o_n));
        worst = std::max(
            worst, std::abs(std::expm1(chain_log_ratio - last_log_ratio)));
      }
    }
  }
  return worst;
}

// max over sequences of max_x |Q(x | o_1..o_n) - Q(x | o_n)| for a prior Q.
inline absl::StatusOr<double> AuditCollusion(
    std::span<const PrivacyLevel> schedule, std::span<const double> prior) {
  const int m = static_cast<int>(prior.size());
  absl::StatusOr<std::vector<ChainDistribution>> by_input =
      internal::EnumerateAllInputs(schedule, m);
  if (!by_input.ok()) return by_input.status();
  const ResponseDistribution last =
      MakeResponseDistribution(schedule.back(), m).value();
  std::vector<double> full(static_cast<std::size_t>(m));
  std::vector<double> only_last(static_cast<std::size_t>(m));
  double worst = 0.0;
  for (std::size_t code = 0; code < by_input->front().size(); ++code) {
    const int o_n = by_input->front().last_output(code);
    double full_total = 0.0;
    double last_total = 0.0;
    for (int x = 0; x < m; ++x) {
      full[x] = prior[x] * (*by_input)[x].probability(code);
      only_last[x] = prior[x] * last.Probability(x, o_n);
      full_total += full[x];
      last_total += only_last[x];
    }
    if (full_total == 0.0) continue;  // sequence cannot occur
    for (int x = 0; x < m; ++x) {
      worst = std::max(worst,
                       std::abs(full[x] / full_total - only_last[x] / last_total));
    }
  }
  return worst;
}

// max over rounds i, inputs x and values v of
// |Pr(o_i = v | x) - Pr_RR(eps_i)(v | x)|, marginals summed from the joint.
inline absl::StatusOr<double> AuditMarginals(
    std::span<const PrivacyLevel> schedule, int m) {
  if (absl::Status s = ValidateSchedule(schedule); !s.ok()) return s;
  double worst = 0.0;
  for (int x = 0; x < m; ++x) {
    absl::StatusOr<ChainDistribution> d =
        EnumerateChainDistribution(schedule, m, x);
    if (!d.ok()) return d.status();
    for (int round = 0; round < d->n; ++round) {
      const ResponseDistribution rr =
          MakeResponseDistribution(schedule[round], m).value();
      std::vector<double> marginal(static_cast<std::size_t>(m), 0.0);
      for (std::size_t code = 0; code < d->size(); ++code) {
        std::size_t digit = code;
        for (int k = d->n - 1; k > round; --k) digit /= m;
        marginal[digit % m] += d->probability(code);
      }
      for (int v = 0; v < m; ++v) {
        worst = std::max(worst, std::abs(marginal[v] - rr.Probability(x, v)));
      }
    }
  }
  return worst;
}

// Privacy level of the single step o_prev -> o_next viewed as its own query:
// max ln Pr(o_next | o_prev, x) / Pr(o_next | o_prev, x') over jointly
// possible outcomes. 0 for the identity step.
inline absl::StatusOr<double> AuditStepEpsilon(PrivacyLevel eps_prev,
                                               PrivacyLevel eps_next, int m) {
  absl::StatusOr<RelaxKernel> k = MakeRelaxKernel(eps_prev, eps_next, m);
  if (!k.ok()) return k.status();
  double worst = 0.0;
  for (int o_prev = 0; o_prev < m; ++o_prev) {
    for (int o_next = 0; o_next < m; ++o_next) {
      for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y) {
          const double px = KernelProbability(*k, x, o_prev, o_next);
          const double py = KernelProbability(*k, y, o_prev, o_next);
          if (px > 0.0 && py > 0.0) {
            worst = std::max(worst, std::log(px) - std::log(py));
          }
        }
      }
    }
  }
  return worst;
}

// Worst |ln Pr(k | B=1) / Pr(k | B=0)| over k = 0..K for the RAPPOR
// permanent-then-instantaneous pipeline, by direct binomial-mixture sums.
inline absl::StatusOr<double> AuditNoisySamplingEpsilon(
    std::int64_t k_reports, const RapporParams& params) {
  if (k_reports < 1) return absl::InvalidArgumentError("K must be at least 1");
  const double log_a = std::log(params.alpha);
  const double log_na = std::log1p(-params.alpha);
  const double log_b = std::log(params.beta);
  const double log_nb = std::log1p(-params.beta);
  double worst = 0.0;
  for (std::int64_t k = 0; k <= k_reports; ++k) {
    // The binomial coefficient cancels in the ratio but is kept so both sides
    // are true probabilities.
    const double log_choose = std::lgamma(k_reports + 1.0) -
                              std::lgamma(k + 1.0) -
                              std::lgamma(k_reports - k + 1.0);
    const double kk = static_cast<double>(k);
    const double rest = static_cast<double>(k_reports - k);
    const double kept = kk * log_b + rest * log_nb;     // B' = 1
    const double flipped = rest * log_b + kk * log_nb;  // B' = 0
    const double given_one =
        log_choose + internal::LogAddExp(log_a + kept, log_na + flipped);
    const double given_zero =
        log_choose + internal::LogAddExp(log_na + kept, log_a + flipped);
    worst = std::max(worst, std::abs(given_one - given_zero));
  }
  return worst;
}

}  // namespace ldp_relax

#endif  // LDP_RELAX_AUDIT_HPP_
