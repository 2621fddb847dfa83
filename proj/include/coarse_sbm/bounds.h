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

#ifndef COARSE_SBM_BOUNDS_H_
#define COARSE_SBM_BOUNDS_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "coarse_sbm/extended_model.h"

namespace coarse_sbm {

// Scaled Chernoff-Hellinger divergence D+ between two connectivity columns.
struct ChResult {
  double value = 0.0;
  double argmax_t = 0.0;
  int k = -1;
  int k_prime = -1;
};

// max_{0<=t<=1} sum_j s_j [t u_j + (1-t) v_j - u_j^t v_j^(1-t)]. The max is
// located on a 1001-point grid and refined by golden-section search to 1e-8.
// Zero entries follow the limits 0^0 = 1 at the endpoints and 0^t = 0 inside.
ChResult ChDivergence(std::span<const double> u_k, std::span<const double> u_kp,
                      std::span<const double> prior);

// The summand u^t v^(1-t) with the boundary conventions above.
double GeometricMix(double u, double v, double t);

// The objective maximized by ChDivergence at a fixed t.
double ChObjective(std::span<const double> u_k, std::span<const double> u_kp,
                   std::span<const double> prior, double t);

enum class BoundKind { kCoNuUnion, kCo1Renyi };

std::string_view BoundKindName(BoundKind kind);

struct PairExponent {
  int k = 0;
  int k_prime = 0;
  double ch = 0.0;
  double argmax_t = 0.0;
  double exponent = 0.0;  // L * D+
};

struct VariantBound {
  UVariant variant = UVariant::kMean;
  double raw = 0.0;      // before clamping, may exceed 1
  double log_raw = 0.0;
  double clamped = 0.0;
  std::vector<PairExponent> pairs;
};

// bound_mean comes from the mean connectivity matrix; bound_lower and
// bound_upper are the envelope (min, max) over the mean/lower/upper variants.
struct BoundReport {
  BoundKind kind = BoundKind::kCoNuUnion;
  double bound_mean = 0.0;
  double bound_lower = 0.0;
  double bound_upper = 0.0;
  std::vector<VariantBound> variants;
  nlohmann::json params_echo;

  const VariantBound& Variant(UVariant variant) const;
  nlohmann::json ToJson() const;
};

// sum_{k<k'} exp(-L D+(k, k')) for one connectivity variant.
VariantBound CoNuErrorBound(const ExtendedSbm& model, int l, UVariant variant);

// All three variants.
BoundReport CoNuBoundReport(const ExtendedSbm& model, int l);

struct DominantTerm {
  double value = 0.0;
  int dominant_index = -1;  // extended community of the single-community profile
  double omega = 0.0;
  bool degenerate = false;  // alpha == beta
};

// Closed-form lower bound on D+ for one pair from its dominant extended
// community, with Berry-Esseen brackets on both connectivity entries. Needs
// 0 < tau < 1/nu and alpha, beta > 0; alpha == beta yields 0.
DominantTerm DominantTermLowerBound(const ExtendedSbm& model, int k, int k_prime,
                                    double alpha, double beta, double rho);

struct Inequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool strict = true;
  bool holds = false;
  double slack = 0.0;
};

struct ConditionVerdict {
  bool satisfied = false;
  double margin = 0.0;
  std::map<std::string, double> constants;
  std::vector<Inequality> inequalities;
  std::string notes;

  nlohmann::json ToJson() const;
};

struct ThresholdConstants {
  double alpha = 0.0;
  double beta = 0.0;
  int nu = 1;
  double tau = 0.0;
  double rho_bar = 0.0;

  double rho1 = 0.0;
  double rho2 = 0.0;
  double rho3 = 0.0;
  double rho4 = 0.0;
  double varpi = 0.0;
  double delta = 0.0;

  std::map<std::string, double> AsMap() const;
};

// Throws kDomainError unless 0 < tau < 1/nu, alpha != beta, alpha, beta > 0
// and alpha * rho_bar, beta * rho_bar < 1.
ThresholdConstants ComputeThresholdConstants(double alpha, double beta, int nu,
                                               double tau, double rho_bar);

// k > Delta / sqrt(rho), alpha != beta, Delta^2 (L/N)^2 < rho <= rho_bar.
ConditionVerdict CheckCoNuRecovery(int coverage, double rho, int64_t l, int64_t n,
                                 const ThresholdConstants& constants);

// Error bound for the CO-1 case in terms of the Renyi divergence I, evaluated
// in log space.
BoundReport Co1ErrorBound(int64_t l, int k_communities, double renyi);

enum class LRegime { kFiniteL, kGrowingL };

// Finite L: alpha != beta with k sqrt(rho) the diverging quantity. Growing L:
// (alpha+beta)/2 - sqrt(alpha beta) > (K/2) log L / (k^2 rho L), evaluated at
// the given finite values as an asymptotic proxy.
ConditionVerdict CheckCo1Recovery(double alpha, double beta, int k_communities,
                               int coverage, double rho, int64_t l, LRegime regime);

}  // namespace coarse_sbm

#endif  // COARSE_SBM_BOUNDS_H_
