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

// Randomized response over a finite domain and the kernels that relax its
// privacy level step by step while keeping the whole output sequence at the
// latest level.
//
// Values are 0-based indices in [0, m). For a relaxation step from eps_prev
// to eps_next on true value x, the conditional law of the new output given
// the previous output o_prev takes only five distinct values:
//
//   o_prev == x:  p_aa at x, p_ab at every other index
//   o_prev != x:  p_ba at x, p_bb at o_prev, p_bc at every remaining index
//
// All probabilities are evaluated in expm1-based forms, so they stay accurate
// when eps_next - eps_prev or eps itself is small.

#ifndef LDP_RELAX_MECHANISM_HPP_
#define LDP_RELAX_MECHANISM_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "ldp_relax/random.hpp"

namespace ldp_relax {

// Probability formulas saturate here; beyond this p_retain is 1 in double.
inline constexpr double kMaxEpsilon = 50.0;

// A positive, finite pure-LDP parameter in nats.
class PrivacyLevel {
 public:
  static absl::StatusOr<PrivacyLevel> Create(double nats) {
    if (!std::isfinite(nats) || !(nats > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("epsilon must be positive and finite, got ", nats));
    }
    return PrivacyLevel(nats);
  }

  double nats() const { return nats_; }
  // The value fed to the probability formulas.
  double effective() const { return std::min(nats_, kMaxEpsilon); }

  friend auto operator<=>(const PrivacyLevel&, const PrivacyLevel&) = default;

 private:
  explicit PrivacyLevel(double nats) : nats_(nats) {}
  double nats_;
};

inline absl::Status ValidateDomainSize(int m) {
  if (m < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("domain size m must be at least 2, got ", m));
  }
  return absl::OkStatus();
}

inline absl::Status ValidateValue(int value, int m, const char* what) {
  if (value < 0 || value >= m) {
    return absl::OutOfRangeError(
        absl::StrCat(what, " = ", value, " is outside [0, ", m, ")"));
  }
  return absl::OkStatus();
}

// Output law of an eps-LDP randomized response over m values.
struct ResponseDistribution {
  PrivacyLevel epsilon;
  int m;
  double p_retain;
  double p_other;

  double Probability(int x, int y) const { return x == y ? p_retain : p_other; }
};

inline absl::StatusOr<ResponseDistribution> MakeResponseDistribution(
    PrivacyLevel eps, int m) {
  if (absl::Status s = ValidateDomainSize(m); !s.ok()) return s;
  // e^eps / (e^eps + m - 1) rewritten in e^-eps to avoid overflow.
  const double inv = std::exp(-eps.effective());
  const double denom = 1.0 + (m - 1) * inv;
  return ResponseDistribution{eps, m, 1.0 / denom, inv / denom};
}

namespace internal {

// Maps the residual u of an inverse-CDF draw onto `count` equally weighted
// indices (weight `each`), skipping the already-handled ones in `skipped`.
inline int PickSkipping(double u, double each, int count,
                        std::initializer_list<int> skipped) {
  int slot = each > 0.0 ? static_cast<int>(u / each) : 0;
  slot = std::clamp(slot, 0, count - 1);
  // Map slot-th non-skipped index; `skipped` is sorted ascending.
  int value = slot;
  for (int s : skipped) {
    if (value >= s) ++value;
  }
  return value;
}

}  // namespace internal

template <RandomStream G>
absl::StatusOr<int> SampleRandomizedResponse(int x,
                                             const ResponseDistribution& dist,
                                             G& rng) {
  if (absl::Status s = ValidateValue(x, dist.m, "x"); !s.ok()) return s;
  const double u = UniformUnit(rng);
  if (u < dist.p_retain) return x;
  return internal::PickSkipping(u - dist.p_retain, dist.p_other, dist.m - 1,
                                {x});
}

// One relaxation step eps_prev -> eps_next. p_bc is only meaningful for
// m > 2; for m == 2 it is 0 and has_c_class is false.
struct RelaxKernel {
  PrivacyLevel eps_prev;
  PrivacyLevel eps_next;
  int m;
  double p_aa;
  double p_ba;
  double p_bb;
  double p_ab;
  double p_bc;
  bool has_c_class;

  bool is_identity() const { return p_ab == 0.0 && p_ba == 0.0; }
};

inline absl::Status ValidateRelaxation(PrivacyLevel eps_prev,
                                       PrivacyLevel eps_next) {
  if (eps_next < eps_prev) {
    return absl::FailedPreconditionError(absl::StrCat(
        "privacy budget cannot decrease: eps_next = ", eps_next.nats(),
        " < eps_prev = ", eps_prev.nats()));
  }
  return absl::OkStatus();
}

inline absl::StatusOr<RelaxKernel> MakeRelaxKernel(PrivacyLevel eps_prev,
                                                   PrivacyLevel eps_next,
                                                   int m) {
  if (absl::Status s = ValidateDomainSize(m); !s.ok()) return s;
  if (absl::Status s = ValidateRelaxation(eps_prev, eps_next); !s.ok()) {
    return s;
  }
  const double e1 = eps_prev.effective();
  const double e2 = eps_next.effective();
  RelaxKernel k{eps_prev, eps_next, m, 1.0, 0.0, 1.0, 0.0, 0.0, m > 2};
  if (e1 == e2) return k;

  // Everything is scaled by e^-e2 so that e^e2 never appears alone.
  //   S2 = e^e2 + m - 1,  D = e^e2 - 1,  G = e^(e2 - e1) - 1
  const double inv2 = std::exp(-e2);
  const double s2_scaled = 1.0 + (m - 1) * inv2;         // S2 e^-e2
  const double d = std::expm1(e2);                       // D
  const double g = std::expm1(e2 - e1);                  // G
  const double one_minus_inv1 = -std::expm1(-e1);        // 1 - e^-e1
  const double ratio1 = std::expm1(e1) / d;              // (e^e1 - 1) / D

  // p_aa = e^e2/S2 * (1 + (m-1)(1 - e^-e1)/D)
  k.p_aa = (1.0 + (m - 1) * one_minus_inv1 / d) / s2_scaled;
  // p_ab = G / (D S2)
  k.p_ab = g * inv2 / (d * s2_scaled);
  // p_ba = e^(e1+e2) G / (D S2) = e^(e1+e2) p_ab
  k.p_ba = std::exp(e1) * g / (d * s2_scaled);
  // p_bb = (e^e1 + (m-1)(e^e1 - 1)/D) / S2
  k.p_bb = std::exp(e1 - e2) / s2_scaled + (m - 1) * ratio1 * inv2 / s2_scaled;
  // p_bc = p_ba e^-e2, i.e. the (ca, cb) support constraint with equality.
  if (m > 2) k.p_bc = std::exp(e1 - e2) * g / (d * s2_scaled);
  return k;
}

// Pr(o_next | o_prev, x); no range checks.
inline double KernelProbability(const RelaxKernel& k, int x, int o_prev,
                                int o_next) {
  if (o_prev == x) return o_next == x ? k.p_aa : k.p_ab;
  if (o_next == x) return k.p_ba;
  if (o_next == o_prev) return k.p_bb;
  return k.p_bc;
}

inline absl::StatusOr<std::vector<double>> KernelConditional(
    const RelaxKernel& k, int x, int o_prev) {
  if (absl::Status s = ValidateValue(x, k.m, "x"); !s.ok()) return s;
  if (absl::Status s = ValidateValue(o_prev, k.m, "o_prev"); !s.ok()) {
    return s;
  }
  std::vector<double> row(static_cast<std::size_t>(k.m));
  for (int v = 0; v < k.m; ++v) row[v] = KernelProbability(k, x, o_prev, v);
  return row;
}

// Inverse-CDF draw from Pr(. | o_prev, x) with one uniform; no range checks.
template <RandomStream G>
int SampleRelaxedUnchecked(const RelaxKernel& k, int x, int o_prev, G& rng) {
  const double u = UniformUnit(rng);
  if (o_prev == x) {
    if (u < k.p_aa) return x;
    return internal::PickSkipping(u - k.p_aa, k.p_ab, k.m - 1, {x});
  }
  if (u < k.p_ba) return x;
  if (u < k.p_ba + k.p_bb || k.m == 2) return o_prev;
  return internal::PickSkipping(u - k.p_ba - k.p_bb, k.p_bc, k.m - 2,
                                {std::min(x, o_prev), std::max(x, o_prev)});
}

// Closed-form marginal of the new output when the previous output came from
// an eps_prev randomized response.
struct FoldedMarginal {
  double p_retain;
  double p_other;
};

inline FoldedMarginal FoldKernel(const RelaxKernel& k) {
  const ResponseDistribution prev =
      MakeResponseDistribution(k.eps_prev, k.m).value();
  FoldedMarginal out;
  out.p_retain = prev.p_retain * k.p_aa + (k.m - 1) * prev.p_other * k.p_ba;
  out.p_other = prev.p_retain * k.p_ab + prev.p_other * k.p_bb +
                (k.m - 2) * prev.p_other * k.p_bc;
  return out;
}

inline absl::Status ValidateSchedule(std::span<const PrivacyLevel> schedule) {
  if (schedule.empty()) {
    return absl::InvalidArgumentError("schedule must not be empty");
  }
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (absl::Status s = ValidateRelaxation(schedule[i - 1], schedule[i]);
        !s.ok()) {
      return absl::FailedPreconditionError(
          absl::StrCat("schedule entry ", i, ": ", s.message()));
    }
  }
  return absl::OkStatus();
}

// The initial response plus one kernel per relaxation step, computed once for
// a whole schedule. steps[i] maps output i to output i+1 (0-based rounds).
struct ScheduleKernels {
  int m;
  std::vector<PrivacyLevel> schedule;
  ResponseDistribution initial;
  std::vector<RelaxKernel> steps;

  std::size_t rounds() const { return schedule.size(); }
};

inline absl::StatusOr<ScheduleKernels> PrecomputeKernels(
    std::span<const PrivacyLevel> schedule, int m) {
  if (absl::Status s = ValidateDomainSize(m); !s.ok()) return s;
  if (absl::Status s = ValidateSchedule(schedule); !s.ok()) return s;
  ScheduleKernels out{m, {schedule.begin(), schedule.end()},
                      MakeResponseDistribution(schedule[0], m).value(),
                      {}};
  out.steps.reserve(schedule.size() - 1);
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    out.steps.push_back(MakeRelaxKernel(schedule[i - 1], schedule[i], m).value());
  }
  return out;
}

// One object's true value, its privacy schedule so far, and all outputs
// released for it. outputs[i] was released at level schedule[i].
struct RelaxationChain {
  int true_value;
  int m;
  std::vector<PrivacyLevel> schedule;
  std::vector<int> outputs;
};

// Runs the initial eps-LDP randomized response.
template <RandomStream G>
absl::StatusOr<RelaxationChain> StartChain(int true_value, PrivacyLevel eps,
                                           int m, G& rng) {
  absl::StatusOr<ResponseDistribution> dist = MakeResponseDistribution(eps, m);
  if (!dist.ok()) return dist.status();
  absl::StatusOr<int> o1 = SampleRandomizedResponse(true_value, *dist, rng);
  if (!o1.ok()) return o1.status();
  return RelaxationChain{true_value, m, {eps}, {*o1}};
}

// Relaxes the chain to eps_next and appends the new output.
template <RandomStream G>
absl::StatusOr<RelaxationChain> RelaxStep(RelaxationChain chain,
                                          PrivacyLevel eps_next, G& rng) {
  if (chain.outputs.empty() || chain.outputs.size() != chain.schedule.size()) {
    return absl::InvalidArgumentError("chain has no initial response");
  }
  absl::StatusOr<RelaxKernel> k =
      MakeRelaxKernel(chain.schedule.back(), eps_next, chain.m);
  if (!k.ok()) return k.status();
  chain.outputs.push_back(
      SampleRelaxedUnchecked(*k, chain.true_value, chain.outputs.back(), rng));
  chain.schedule.push_back(eps_next);
  return chain;
}

// Runs the initial response and every step of a precomputed schedule, writing
// outputs[0..rounds). No range checks.
template <RandomStream G>
void SampleChainUnchecked(const ScheduleKernels& kernels, int true_value,
                          G& rng, std::span<int> outputs) {
  outputs[0] =
      SampleRandomizedResponse(true_value, kernels.initial, rng).value();
  for (std::size_t i = 1; i < kernels.rounds(); ++i) {
    outputs[i] = SampleRelaxedUnchecked(kernels.steps[i - 1], true_value,
                                        outputs[i - 1], rng);
  }
}

// ln Pr(o_1..o_n | x) for the first n = outputs.size() rounds. -inf when an
// identity step makes the sequence impossible. No range checks.
inline double ChainLogLikelihood(const ScheduleKernels& kernels,
                                 std::span<const int> outputs, int x) {
  double log_p = std::log(kernels.initial.Probability(x, outputs[0]));
  for (std::size_t i = 1; i < outputs.size(); ++i) {
    log_p += std::log(
        KernelProbability(kernels.steps[i - 1], x, outputs[i - 1], outputs[i]));
  }
  return log_p;
}

inline absl::Status ValidateOutputs(std::span<const int> outputs,
                                    std::size_t rounds, int m) {
  if (outputs.empty()) return absl::InvalidArgumentError("empty output sequence");
  if (outputs.size() > rounds) {
    return absl::InvalidArgumentError(
        absl::StrCat("got ", outputs.size(), " outputs for a schedule of ",
                     rounds, " rounds"));
  }
  for (int o : outputs) {
    if (absl::Status s = ValidateValue(o, m, "output"); !s.ok()) return s;
  }
  return absl::OkStatus();
}

// Pr(o_1..o_n | x) under the relaxation process.
inline absl::StatusOr<double> ChainLikelihood(
    std::span<const int> outputs, std::span<const PrivacyLevel> schedule, int m,
    int x) {
  if (outputs.size() != schedule.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("length mismatch: ", outputs.size(), " outputs vs ",
                     schedule.size(), " schedule entries"));
  }
  absl::StatusOr<ScheduleKernels> kernels = PrecomputeKernels(schedule, m);
  if (!kernels.ok()) return kernels.status();
  if (absl::Status s = ValidateOutputs(outputs, schedule.size(), m); !s.ok()) {
    return s;
  }
  if (absl::Status s = ValidateValue(x, m, "x"); !s.ok()) return s;
  return std::exp(ChainLogLikelihood(*kernels, outputs, x));
}

}  // namespace ldp_relax

#endif  // LDP_RELAX_MECHANISM_HPP_
