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

#include "coarse_sbm/distributions.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "coarse_sbm/errors.h"

namespace coarse_sbm {
namespace {

constexpr double kFlushBelow = 1e-300;

bool IsProbability(double x) { return x >= 0.0 && x <= 1.0; }

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double Value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double Clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

std::string_view TailMethodName(TailMethod method) {
  switch (method) {
    case TailMethod::kExactDp:
      return "exact_dp";
    case TailMethod::kNormalApprox:
      return "normal_approx";
  }
  return "unknown";
}

void PoissonBinomialSpec::Validate() const {
  Require(n_total >= 0 && m >= 0 && m <= n_total, ErrorCode::kInvalidArgument,
          "Poisson-Binomial spec needs 0 <= m <= n_total (m=" +
              std::to_string(m) + ", n_total=" + std::to_string(n_total) + ")");
  Require(IsProbability(p) && IsProbability(q), ErrorCode::kInvalidArgument,
          "Poisson-Binomial success probabilities must lie in [0, 1]");
}

double PoissonBinomialSpec::Mean() const {
  return p * static_cast<double>(m) + q * static_cast<double>(n_total - m);
}

double PoissonBinomialSpec::Variance() const {
  return p * (1.0 - p) * static_cast<double>(m) +
         q * (1.0 - q) * static_cast<double>(n_total - m);
}

std::vector<double> PoissonBinomialPmf(const PoissonBinomialSpec& spec,
                                       int64_t exact_cap) {
  spec.Validate();
  Require(spec.n_total <= exact_cap, ErrorCode::kCapExceeded,
          "n_total=" + std::to_string(spec.n_total) +
              " exceeds the exact-computation cap " + std::to_string(exact_cap));

  const auto n = static_cast<size_t>(spec.n_total);
  // Extended precision keeps the tails meaningful for a few thousand trials.
  std::vector<long double> dp(n + 1, 0.0L);
  dp[0] = 1.0L;
  size_t trials = 0;
  auto convolve = [&](long double r, int64_t count) {
    const long double s = 1.0L - r;
    for (int64_t c = 0; c < count; ++c) {
      ++trials;
      dp[trials] = dp[trials - 1] * r;
      for (size_t j = trials - 1; j >= 1; --j) {
        dp[j] = dp[j] * s + dp[j - 1] * r;
      }
      dp[0] *= s;
    }
  };
  convolve(spec.p, spec.m);
  convolve(spec.q, spec.n_total - spec.m);

  std::vector<double> pmf(n + 1);
  for (size_t j = 0; j <= n; ++j) {
    const double v = static_cast<double>(dp[j]);
    pmf[j] = v < kFlushBelow ? 0.0 : v;
  }
  return pmf;
}

TailResult PoissonBinomialTail(const PoissonBinomialSpec& spec,
                               double threshold, int64_t exact_cap) {
  spec.Validate();
  Require(!std::isnan(threshold), ErrorCode::kInvalidArgument,
          "tail threshold is NaN");

  const double variance = spec.Variance();
  if (variance <= 0.0) {
    // Every trial is deterministic, so X equals its mean.
    const double v = spec.Mean() >= threshold ? 1.0 : 0.0;
    return {v, v, v, TailMethod::kExactDp};
  }

  if (spec.n_total <= exact_cap) {
    double tail = 0.0;
    if (threshold <= 0.0) {
      tail = 1.0;
    } else if (threshold <= static_cast<double>(spec.n_total)) {
      const std::vector<double> pmf = PoissonBinomialPmf(spec, exact_cap);
      const auto first = static_cast<size_t>(std::ceil(threshold));
      CompensatedSum sum;
      // Smallest terms first.
      for (size_t j = pmf.size(); j-- > first;) sum.Add(pmf[j]);
      tail = Clamp01(sum.Value());
    }
    return {tail, tail, tail, TailMethod::kExactDp};
  }

  const double sigma = std::sqrt(variance);
  const double mean = NormalCdf((spec.Mean() - threshold) / sigma);
  const double slack = kBerryEsseenConstant / sigma;
  return {mean, Clamp01(mean - slack), Clamp01(mean + slack),
          TailMethod::kNormalApprox};
}

double NormalCdf(double x) {
  // glibc erfc is accurate to about one ulp over the whole real line.
  return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double RenyiHalfBinomial(int coverage, double p, double q) {
  Require(coverage >= 1, ErrorCode::kDomainError, "coverage must be >= 1");
  Require(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0, ErrorCode::kDomainError,
          "Renyi divergence needs p, q strictly inside (0, 1)");
  const double affinity = std::sqrt((1.0 - p) * (1.0 - q)) + std::sqrt(p * q);
  const double k2 = static_cast<double>(coverage) * coverage;
  return std::max(0.0, -2.0 * k2 * std::log(affinity));
}

}  // namespace coarse_sbm
