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

// Adversaries that try to recover true values from released output
// sequences, Bayesian posteriors over the true value, and the error-rate
// floor that any adversary without side information must respect.
//
// Ties are always broken towards the smallest value index.

#ifndef LDP_RELAX_INFERENCE_HPP_
#define LDP_RELAX_INFERENCE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "ldp_relax/mechanism.hpp"
#include "ldp_relax/random.hpp"

namespace ldp_relax {

class Prior {
 public:
  static absl::StatusOr<Prior> Create(std::vector<double> probabilities) {
    if (absl::Status s =
            ValidateDomainSize(static_cast<int>(probabilities.size()));
        !s.ok()) {
      return s;
    }
    double total = 0.0;
    for (double p : probabilities) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        return absl::InvalidArgumentError("prior entries must be non-negative");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      return absl::InvalidArgumentError(
          absl::StrCat("prior must sum to 1, sums to ", total));
    }
    return Prior(std::move(probabilities));
  }

  static Prior Uniform(int m) {
    return Prior(std::vector<double>(static_cast<std::size_t>(m), 1.0 / m));
  }

  int m() const { return static_cast<int>(p_.size()); }
  double operator[](int x) const { return p_[x]; }
  std::span<const double> probabilities() const { return p_; }

 private:
  explicit Prior(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

enum class AttackMethod {
  kLastOutput,
  kMle,
  kHighestFrequency,
  kWeightedHighestFrequency,
};

inline constexpr std::array<AttackMethod, 4> kAllAttackMethods = {
    AttackMethod::kLastOutput, AttackMethod::kMle,
    AttackMethod::kHighestFrequency, AttackMethod::kWeightedHighestFrequency};

inline std::string_view AttackMethodName(AttackMethod method) {
  switch (method) {
    case AttackMethod::kLastOutput:
      return "LastOutput";
    case AttackMethod::kMle:
      return "MLE";
    case AttackMethod::kHighestFrequency:
      return "HighestFrequency";
    case AttackMethod::kWeightedHighestFrequency:
      return "WeightedHighestFrequency";
  }
  return "unknown";
}

struct AttackResult {
  AttackMethod method;
  std::vector<int> guesses;        // one per object, balanced or not
  double error_rate;               // over the balanced subset only
  std::int64_t evaluated;          // size of the balanced subset
};

namespace internal {

template <typename T>
int ArgMaxFirst(std::span<const T> scores) {
  int best = 0;
  for (int v = 1; v < static_cast<int>(scores.size()); ++v) {
    if (scores[v] > scores[best]) best = v;
  }
  return best;
}

}  // namespace internal

// Posterior over the true value given the first outputs.size() rounds.
inline std::vector<double> PosteriorUnchecked(const ScheduleKernels& kernels,
                                              std::span<const int> outputs,
                                              const Prior& prior) {
  std::vector<double> log_joint(static_cast<std::size_t>(kernels.m));
  double hi = -std::numeric_limits<double>::infinity();
  for (int x = 0; x < kernels.m; ++x) {
    log_joint[x] = std::log(prior[x]) + ChainLogLikelihood(kernels, outputs, x);
    hi = std::max(hi, log_joint[x]);
  }
  double total = 0.0;
  for (double& v : log_joint) {
    v = std::exp(v - hi);
    total += v;
  }
  for (double& v : log_joint) v /= total;
  return log_joint;
}

inline absl::Status ValidateChain(const RelaxationChain& chain) {
  if (absl::Status s = ValidateDomainSize(chain.m); !s.ok()) return s;
  if (chain.outputs.size() != chain.schedule.size()) {
    return absl::InvalidArgumentError("chain outputs and schedule differ in length");
  }
  return ValidateOutputs(chain.outputs, chain.schedule.size(), chain.m);
}

inline absl::StatusOr<std::vector<double>> Posterior(
    const RelaxationChain& chain, const Prior& prior) {
  if (absl::Status s = ValidateChain(chain); !s.ok()) return s;
  if (prior.m() != chain.m) {
    return absl::InvalidArgumentError("prior and chain domain sizes differ");
  }
  absl::StatusOr<ScheduleKernels> kernels =
      PrecomputeKernels(chain.schedule, chain.m);
  if (!kernels.ok()) return kernels.status();
  std::vector<double> post = PosteriorUnchecked(*kernels, chain.outputs, prior);
  if (!std::isfinite(post[0])) {
    return absl::FailedPreconditionError("posterior normalizer is zero");
  }
  return post;
}

inline int MleGuess(const ScheduleKernels& kernels,
                    std::span<const int> outputs) {
  std::vector<double> log_lik(static_cast<std::size_t>(kernels.m));
  for (int x = 0; x < kernels.m; ++x) {
    log_lik[x] = ChainLogLikelihood(kernels, outputs, x);
  }
  return internal::ArgMaxFirst<double>(log_lik);
}

inline int HighestFrequencyGuess(std::span<const int> outputs, int m) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
  for (int o : outputs) ++counts[o];
  return internal::ArgMaxFirst<std::int64_t>(counts);
}

// Each output votes with the privacy level (nats) it was released at.
inline int WeightedHighestFrequencyGuess(std::span<const int> outputs,
                                         std::span<const PrivacyLevel> schedule,
                                         int m) {
  std::vector<double> weights(static_cast<std::size_t>(m), 0.0);
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    weights[outputs[i]] += schedule[i].nats();
  }
  return internal::ArgMaxFirst<double>(weights);
}

// Guess for the first outputs.size() rounds; no validation.
inline int GuessUnchecked(AttackMethod method, const ScheduleKernels& kernels,
                          std::span<const int> outputs) {
  switch (method) {
    case AttackMethod::kLastOutput:
      return outputs.back();
    case AttackMethod::kMle:
      return MleGuess(kernels, outputs);
    case AttackMethod::kHighestFrequency:
      return HighestFrequencyGuess(outputs, kernels.m);
    case AttackMethod::kWeightedHighestFrequency:
      return WeightedHighestFrequencyGuess(outputs, kernels.schedule, kernels.m);
  }
  return outputs.back();
}

inline absl::StatusOr<int> Attack(AttackMethod method,
                                  const RelaxationChain& chain) {
  if (chain.outputs.empty()) return absl::InvalidArgumentError("empty chain");
  if (absl::Status s = ValidateChain(chain); !s.ok()) return s;
  absl::StatusOr<ScheduleKernels> kernels =
      PrecomputeKernels(chain.schedule, chain.m);
  if (!kernels.ok()) return kernels.status();
  return GuessUnchecked(method, *kernels, chain.outputs);
}

inline absl::StatusOr<int> AttackLastOutput(const RelaxationChain& chain) {
  return Attack(AttackMethod::kLastOutput, chain);
}
inline absl::StatusOr<int> AttackMle(const RelaxationChain& chain) {
  return Attack(AttackMethod::kMle, chain);
}
inline absl::StatusOr<int> AttackHighestFrequency(const RelaxationChain& chain) {
  return Attack(AttackMethod::kHighestFrequency, chain);
}
inline absl::StatusOr<int> AttackWeightedHighestFrequency(
    const RelaxationChain& chain) {
  return Attack(AttackMethod::kWeightedHighestFrequency, chain);
}

// Lowest achievable error rate when X is uniform over m values and only an
// eps randomized response of X is observed.
inline absl::StatusOr<double> MinErrorRate(PrivacyLevel eps, int m) {
  absl::StatusOr<ResponseDistribution> dist = MakeResponseDistribution(eps, m);
  if (!dist.ok()) return dist.status();
  return (m - 1) * dist->p_other;
}

// Picks, for every value, as many objects as the rarest value has, uniformly
// at random. Returns object indices grouped by value.
template <RandomStream G>
absl::StatusOr<std::vector<std::size_t>> BalancedSubset(
    std::span<const int> truth, int m, G& rng) {
  if (absl::Status s = ValidateDomainSize(m); !s.ok()) return s;
  std::vector<std::vector<std::size_t>> by_value(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (absl::Status s = ValidateValue(truth[i], m, "true value"); !s.ok()) {
      return s;
    }
    by_value[truth[i]].push_back(i);
  }
  std::size_t per_value = truth.size();
  for (const auto& group : by_value) per_value = std::min(per_value, group.size());
  if (per_value == 0) {
    return absl::FailedPreconditionError(
        "cannot build a balanced subset: some value has no objects");
  }
  std::vector<std::size_t> out;
  out.reserve(per_value * m);
  for (auto& group : by_value) {
    // Partial Fisher-Yates: the first per_value slots become the sample.
    for (std::size_t i = 0; i < per_value; ++i) {
      const std::size_t j = i + UniformIndex(rng, group.size() - i);
      std::swap(group[i], group[j]);
      out.push_back(group[i]);
    }
  }
  return out;
}

// Error rate of each method over a balanced subset of the given chains. All
// chains must have been released under `schedule`.
template <RandomStream G>
absl::StatusOr<std::vector<AttackResult>> EvaluateAttacks(
    std::span<const RelaxationChain> chains, std::span<const int> truth,
    std::span<const PrivacyLevel> schedule, G& rng) {
  if (chains.empty()) return absl::InvalidArgumentError("no chains");
  if (chains.size() != truth.size()) {
    return absl::InvalidArgumentError("chains and truth differ in length");
  }
  const int m = chains.front().m;
  absl::StatusOr<ScheduleKernels> kernels = PrecomputeKernels(schedule, m);
  if (!kernels.ok()) return kernels.status();
  for (const RelaxationChain& c : chains) {
    if (c.m != m || c.outputs.size() != schedule.size()) {
      return absl::InvalidArgumentError(
          "every chain must have the evaluation schedule and domain");
    }
    if (absl::Status s = ValidateOutputs(c.outputs, schedule.size(), m);
        !s.ok()) {
      return s;
    }
  }
  absl::StatusOr<std::vector<std::size_t>> subset =
      BalancedSubset(truth, m, rng);
  if (!subset.ok()) return subset.status();

  std::vector<AttackResult> results;
  for (AttackMethod method : kAllAttackMethods) {
    AttackResult r{method, {}, 0.0, static_cast<std::int64_t>(subset->size())};
    r.guesses.reserve(chains.size());
    for (const RelaxationChain& c : chains) {
      r.guesses.push_back(GuessUnchecked(method, *kernels, c.outputs));
    }
    std::int64_t wrong = 0;
    for (std::size_t i : *subset) wrong += r.guesses[i] != truth[i];
    r.error_rate = static_cast<double>(wrong) / subset->size();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace ldp_relax

#endif  // LDP_RELAX_INFERENCE_HPP_
