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

// Unbiased frequency and mean estimators for randomized responses. Because a
// relaxed output has exactly the marginal law of a fresh randomized response
// at the relaxed level, the same estimators apply after every relaxation
// round.
//
// Estimates are never clamped to [0, 1]; clamping would bias them.

#ifndef LDP_RELAX_ESTIMATION_HPP_
#define LDP_RELAX_ESTIMATION_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "ldp_relax/mechanism.hpp"
#include "ldp_relax/random.hpp"

namespace ldp_relax {

// Small dense row-major matrix. Only what the estimators need.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  static Matrix Identity(int n) {
    Matrix out(n, n);
    for (int i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return data_[Index(r, c)]; }
  double operator()(int r, int c) const { return data_[Index(r, c)]; }

  Matrix Transpose() const {
    Matrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r)
      for (int k = 0; k < a.cols_; ++k) {
        const double lhs = a(r, k);
        for (int c = 0; c < b.cols_; ++c) out(r, c) += lhs * b(k, c);
      }
    return out;
  }

  Matrix& operator+=(const Matrix& other) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  Matrix& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

 private:
  std::size_t Index(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Output histogram over [0, m).
struct Histogram {
  std::vector<std::int64_t> counts;
  std::int64_t n = 0;

  int m() const { return static_cast<int>(counts.size()); }

  static absl::StatusOr<Histogram> FromCounts(std::vector<std::int64_t> counts) {
    if (absl::Status s = ValidateDomainSize(static_cast<int>(counts.size()));
        !s.ok()) {
      return s;
    }
    std::int64_t n = 0;
    for (std::int64_t c : counts) {
      if (c < 0) return absl::InvalidArgumentError("negative histogram count");
      n += c;
    }
    if (n < 1) return absl::InvalidArgumentError("histogram is empty");
    return Histogram{std::move(counts), n};
  }

  static absl::StatusOr<Histogram> FromOutputs(std::span<const int> outputs,
                                               int m) {
    if (absl::Status s = ValidateDomainSize(m); !s.ok()) return s;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
    for (int o : outputs) {
      if (absl::Status s = ValidateValue(o, m, "output"); !s.ok()) return s;
      ++counts[o];
    }
    return FromCounts(std::move(counts));
  }
};

// Debiasing above this inverse scale (e^eps + m - 1) / (e^eps - 1) is refused.
inline constexpr double kMaxInverseScale = 1e12;

// P_ij = Pr(y_i | x = j) for an eps randomized response. P = ((e^eps - 1) I +
// J) / (e^eps + m - 1), so P^-1 = (I - J / (e^eps + m - 1)) (e^eps + m - 1) /
// (e^eps - 1) with J the all-ones matrix.
struct PerturbationMatrix {
  PrivacyLevel epsilon;
  int m;
  double diagonal;
  double off_diagonal;
  double inverse_diagonal;
  double inverse_off_diagonal;

  Matrix Dense() const { return Fill(diagonal, off_diagonal); }
  Matrix Inverse() const { return Fill(inverse_diagonal, inverse_off_diagonal); }

  // P^-1 v, using the diagonal-plus-rank-one structure.
  std::vector<double> ApplyInverse(std::span<const double> v) const {
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[i] = (inverse_diagonal - inverse_off_diagonal) * v[i] +
               inverse_off_diagonal * total;
    }
    return out;
  }

 private:
  Matrix Fill(double diag, double off) const {
    Matrix out(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out(i, j) = i == j ? diag : off;
    return out;
  }
};

inline absl::StatusOr<PerturbationMatrix> MakePerturbationMatrix(
    PrivacyLevel eps, int m) {
  absl::StatusOr<ResponseDistribution> dist = MakeResponseDistribution(eps, m);
  if (!dist.ok()) return dist.status();
  const double e = eps.effective();
  const double d = std::expm1(e);
  // (e^eps + m - 1) / (e^eps - 1) = 1 + m / (e^eps - 1)
  const double scale = 1.0 + m / d;
  if (!std::isfinite(scale) || scale > kMaxInverseScale) {
    return absl::FailedPreconditionError(absl::StrCat(
        "perturbation matrix is ill-conditioned at eps = ", eps.nats()));
  }
  return PerturbationMatrix{eps,
                            m,
                            dist->p_retain,
                            dist->p_other,
                            (std::exp(e) + m - 2) / d,
                            -1.0 / d};
}

// Unbiased estimate of the fraction of objects whose bit is b, from the
// fraction lambda_b of responses equal to b.
inline double EstimateBinary(double lambda_b, PrivacyLevel eps) {
  const double e = eps.effective();
  return ((std::exp(e) + 1.0) * lambda_b - 1.0) / std::expm1(e);
}

// Var(estimate) = e^eps / (n (1 - e^eps)^2).
inline double VarianceBinaryEstimate(PrivacyLevel eps, std::int64_t n) {
  const double e = eps.effective();
  const double d = std::expm1(e);
  return std::exp(e) / (static_cast<double>(n) * d * d);
}

// Covariance of the one-hot response vector given true value x.
inline absl::StatusOr<Matrix> ResponseCovariance(PrivacyLevel eps, int m,
                                                 int x) {
  absl::StatusOr<ResponseDistribution> dist = MakeResponseDistribution(eps, m);
  if (!dist.ok()) return dist.status();
  if (absl::Status s = ValidateValue(x, m, "x"); !s.ok()) return s;
  Matrix cov(m, m);
  for (int i = 0; i < m; ++i) {
    const double pi = dist->Probability(x, i);
    for (int j = 0; j < m; ++j) {
      cov(i, j) = (i == j ? pi : 0.0) - pi * dist->Probability(x, j);
    }
  }
  return cov;
}

// Covariance of P^-1 (H / n) when a fraction weights[x] of the n objects
// holds value x. Use the true frequencies for theoretical bands, or a point
// estimate when the truth is unknown.
inline Matrix EstimateCovariance(const PerturbationMatrix& p,
                                 std::span<const double> weights,
                                 std::int64_t n) {
  Matrix per_object(p.m, p.m);
  for (int x = 0; x < p.m; ++x) {
    Matrix cov = ResponseCovariance(p.epsilon, p.m, x).value();
    cov *= weights[x];
    per_object += cov;
  }
  const Matrix inv = p.Inverse();
  Matrix out = inv * per_object * inv.Transpose();
  out *= 1.0 / static_cast<double>(n);
  return out;
}

struct FrequencyEstimate {
  std::vector<double> estimate;
  Matrix covariance;
  PrivacyLevel epsilon;
  std::int64_t n;
};

// Debiases observed response frequencies (any real vector summing to 1).
inline absl::StatusOr<std::vector<double>> EstimateFrequencies(
    std::span<const double> observed, PrivacyLevel eps) {
  absl::StatusOr<PerturbationMatrix> p =
      MakePerturbationMatrix(eps, static_cast<int>(observed.size()));
  if (!p.ok()) return p.status();
  return p->ApplyInverse(observed);
}

inline absl::StatusOr<FrequencyEstimate> EstimatePoly(const Histogram& hist,
                                                      PrivacyLevel eps) {
  absl::StatusOr<PerturbationMatrix> p = MakePerturbationMatrix(eps, hist.m());
  if (!p.ok()) return p.status();
  if (hist.n < 1) return absl::InvalidArgumentError("histogram is empty");
  std::vector<double> observed(hist.counts.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    observed[i] = static_cast<double>(hist.counts[i]) / hist.n;
  }
  std::vector<double> estimate = p->ApplyInverse(observed);
  Matrix covariance = EstimateCovariance(*p, estimate, hist.n);
  return FrequencyEstimate{std::move(estimate), std::move(covariance), eps,
                           hist.n};
}

inline absl::Status ValidateInterval(double l, double h) {
  if (!(l < h)) {
    return absl::InvalidArgumentError(
        absl::StrCat("need l < h, got l = ", l, ", h = ", h));
  }
  return absl::OkStatus();
}

// Rounds value in [l, h] to h with probability (value - l) / (h - l), else l.
template <RandomStream G>
absl::StatusOr<double> DiscretizeMean(double value, double l, double h,
                                      G& rng) {
  if (absl::Status s = ValidateInterval(l, h); !s.ok()) return s;
  if (!(value >= l && value <= h)) {
    return absl::OutOfRangeError(
        absl::StrCat("value ", value, " is outside [", l, ", ", h, "]"));
  }
  return UniformUnit(rng) < (value - l) / (h - l) ? h : l;
}

// Mean of f(X) from the fraction lambda_h of responses equal to h.
inline absl::StatusOr<double> EstimateMean(double lambda_h, PrivacyLevel eps,
                                           double l, double h) {
  if (absl::Status s = ValidateInterval(l, h); !s.ok()) return s;
  return l + (h - l) * EstimateBinary(lambda_h, eps);
}

}  // namespace ldp_relax

#endif  // LDP_RELAX_ESTIMATION_HPP_
