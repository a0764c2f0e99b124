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

// Per-bit RAPPOR pipeline used as a baseline: a permanent randomized response
// B' of the true bit B, followed by K instantaneous responses S of B'. Only
// the symmetric instantaneous case Pr(S = B') = beta is modelled.

#ifndef LDP_RELAX_RAPPOR_HPP_
#define LDP_RELAX_RAPPOR_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "ldp_relax/estimation.hpp"
#include "ldp_relax/mechanism.hpp"
#include "ldp_relax/random.hpp"

namespace ldp_relax {

struct RapporParams {
  double alpha;  // Pr(B' = B)
  double beta;   // Pr(S = B')
  PrivacyLevel eps_alpha;
  PrivacyLevel eps_beta;

  static RapporParams FromEpsilons(PrivacyLevel eps_alpha,
                                   PrivacyLevel eps_beta) {
    auto retain = [](PrivacyLevel e) {
      return 1.0 / (1.0 + std::exp(-e.effective()));
    };
    return RapporParams{retain(eps_alpha), retain(eps_beta), eps_alpha,
                        eps_beta};
  }
};

struct NoisyReport {
  std::int64_t k_ones;
  std::int64_t k;
};

namespace internal {

// ln(e^a + e^b)
inline double LogAddExp(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace internal

// Privacy level of the K reports of one client, jointly:
//   ln((e^ea e^(K eb) + 1) / (e^ea + e^(K eb))).
inline absl::StatusOr<double> EpsNoisySampling(std::int64_t k,
                                               const RapporParams& params) {
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("K must be at least 1, got ", k));
  }
  const double ea = params.eps_alpha.effective();
  const double keb = static_cast<double>(k) * params.eps_beta.effective();
  return internal::LogAddExp(ea + keb, 0.0) - internal::LogAddExp(ea, keb);
}

// Keeps the memoized permanent bit of one client and emits instantaneous
// reports of it.
class NoisySampler {
 public:
  template <RandomStream G>
  NoisySampler(int bit, const RapporParams& params, G& rng)
      : beta_(params.beta),
        permanent_(UniformUnit(rng) < params.alpha ? bit : 1 - bit) {}

  int permanent_bit() const { return permanent_; }

  template <RandomStream G>
  int Sample(G& rng) const {
    return UniformUnit(rng) < beta_ ? permanent_ : 1 - permanent_;
  }

 private:
  double beta_;
  int permanent_;
};

template <RandomStream G>
absl::StatusOr<NoisyReport> SimulateNoisySampling(int bit,
                                                  const RapporParams& params,
                                                  std::int64_t k, G& rng) {
  if (bit != 0 && bit != 1) {
    return absl::OutOfRangeError(absl::StrCat("bit must be 0 or 1, got ", bit));
  }
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("K must be at least 1, got ", k));
  }
  NoisySampler sampler(bit, params, rng);
  NoisyReport report{0, k};
  for (std::int64_t i = 0; i < k; ++i) report.k_ones += sampler.Sample(rng);
  return report;
}

// Two-stage decode: each client's B' is debiased from its k_ones / K, then
// the mean of those is debiased for the permanent response.
inline absl::StatusOr<double> DecodeNoisySampling(
    std::span<const NoisyReport> reports, const RapporParams& params) {
  if (reports.empty()) return absl::InvalidArgumentError("no reports");
  const std::int64_t k = reports.front().k;
  double sum = 0.0;
  for (const NoisyReport& r : reports) {
    if (r.k != k) {
      return absl::InvalidArgumentError("reports must share the same K");
    }
    if (r.k < 1 || r.k_ones < 0 || r.k_ones > r.k) {
      return absl::InvalidArgumentError(
          absl::StrCat("invalid report ", r.k_ones, "/", r.k));
    }
    sum += EstimateBinary(static_cast<double>(r.k_ones) / r.k, params.eps_beta);
  }
  return EstimateBinary(sum / reports.size(), params.eps_alpha);
}

// Variance of the decoded frequency of B = 1 over N clients with K reports:
//   b(1-b) / (N K (1-2b)^2 (1-2a)^2) + a(1-a) / (N (1-2a)^2).
inline absl::StatusOr<double> VarianceNoisySampling(const RapporParams& params,
                                                    std::int64_t n,
                                                    std::int64_t k) {
  if (n < 1 || k < 1) {
    return absl::InvalidArgumentError("N and K must be at least 1");
  }
  const double a = params.alpha;
  const double b = params.beta;
  const double da = (1.0 - 2.0 * a) * (1.0 - 2.0 * a);
  const double db = (1.0 - 2.0 * b) * (1.0 - 2.0 * b);
  if (da == 0.0 || db == 0.0) {
    return absl::InvalidArgumentError(
        "alpha and beta must differ from 0.5 for the decoder to exist");
  }
  const double nn = static_cast<double>(n);
  return b * (1.0 - b) / (nn * static_cast<double>(k) * db * da) +
         a * (1.0 - a) / (nn * da);
}

}  // namespace ldp_relax

#endif  // LDP_RELAX_RAPPOR_HPP_
