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

#ifndef COARSE_SBM_DISTRIBUTIONS_H_
#define COARSE_SBM_DISTRIBUTIONS_H_

#include <cstdint>
#include <string_view>
#include <vector>

namespace coarse_sbm {

// Exact PMF evaluation is O(n_total^2); above this many trials the tail falls
// back to the Berry-Esseen bracketed normal approximation.
inline constexpr int64_t kDefaultExactCap = 4096;

// Berry-Esseen constant for Poisson-Binomial sums (Tang & Tang, Thm. 3.5).
inline constexpr double kBerryEsseenConstant = 0.7915;

// Sum of `m` Bernoulli(p) trials and `n_total - m` Bernoulli(q) trials.
struct PoissonBinomialSpec {
  int64_t m = 0;
  int64_t n_total = 0;
  double p = 0.0;
  double q = 0.0;

  void Validate() const;
  double Mean() const;
  double Variance() const;
};

enum class TailMethod { kExactDp, kNormalApprox };

std::string_view TailMethodName(TailMethod method);

struct TailResult {
  double mean_estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  TailMethod method = TailMethod::kExactDp;
};

// Exact PMF indexed 0..n_total. Throws kCapExceeded above `exact_cap`.
std::vector<double> PoissonBinomialPmf(const PoissonBinomialSpec& spec,
                                       int64_t exact_cap = kDefaultExactCap);

// P(X >= threshold). Exact when n_total <= exact_cap, otherwise the normal
// approximation Psi((mu - threshold) / sigma) bracketed by +-0.7915 / sigma.
// A zero-variance spec always yields the exact point-mass tail.
TailResult PoissonBinomialTail(const PoissonBinomialSpec& spec,
                               double threshold,
                               int64_t exact_cap = kDefaultExactCap);

// Standard normal CDF.
double NormalCdf(double x);

// Order-1/2 Renyi divergence between Binomial(k^2, p) and Binomial(k^2, q):
// -2 k^2 log(sqrt((1-p)(1-q)) + sqrt(pq)).
double RenyiHalfBinomial(int coverage, double p, double q);

}  // namespace coarse_sbm

#endif  // COARSE_SBM_DISTRIBUTIONS_H_
