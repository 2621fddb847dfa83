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

#include "coarse_sbm/extended_model.h"

#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "coarse_sbm/errors.h"

namespace coarse_sbm {
namespace {

std::vector<std::vector<double>> Rows(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> rows(static_cast<size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    rows[static_cast<size_t>(i)].resize(static_cast<size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  }
  return rows;
}

}  // namespace

double BinarizationThreshold(int coverage, double p, double q, double tau) {
  const double k2 = static_cast<double>(coverage) * coverage;
  return k2 * (tau * p + (1.0 - tau) * q);
}

BinarizedGraph Binarize(const CoarseGraph& coarse, double p, double q, double tau) {
  Require(tau >= 0.0 && tau <= 1.0, ErrorCode::kInvalidArgument,
          "tau must lie in [0, 1]");
  BinarizedGraph out;
  out.l = coarse.l;
  out.tau = tau;
  out.threshold_value = BinarizationThreshold(coarse.coverage, p, q, tau);
  out.adj.assign(static_cast<size_t>(coarse.l) * coarse.l, 0);
  for (int i = 0; i < coarse.l; ++i) {
    for (int j = 0; j < i; ++j) {
      // Ties go to 1.
      const uint8_t bit =
          static_cast<double>(coarse.weight(i, j)) >= out.threshold_value ? 1 : 0;
      out.adj[static_cast<size_t>(i) * coarse.l + j] = bit;
      out.adj[static_cast<size_t>(j) * coarse.l + i] = bit;
    }
  }
  return out;
}

std::string_view UVariantName(UVariant variant) {
  switch (variant) {
    case UVariant::kMean:
      return "mean";
    case UVariant::kLower:
      return "lower";
    case UVariant::kUpper:
      return "upper";
  }
  return "unknown";
}

int ExtendedSbm::IndexOf(const Profile& profile) const {
  const auto it = index.find(profile);
  Require(it != index.end(), ErrorCode::kInvalidArgument,
          "profile is not in the balanced CO-nu profile set");
  return it->second;
}

const Eigen::MatrixXd& ExtendedSbm::U(UVariant variant) const {
  switch (variant) {
    case UVariant::kLower:
      return u_lower;
    case UVariant::kUpper:
      return u_upper;
    case UVariant::kMean:
      break;
  }
  return u_mean;
}

Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> ProfileInnerProducts(
    const std::vector<Profile>& profiles) {
  const auto n = static_cast<Eigen::Index>(profiles.size());
  Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      int64_t dot = 0;
      const Profile& a = profiles[static_cast<size_t>(i)];
      const Profile& b = profiles[static_cast<size_t>(j)];
      Require(a.size() == b.size(), ErrorCode::kLengthMismatch,
              "profiles of different length");
      for (size_t c = 0; c < a.size(); ++c) dot += static_cast<int64_t>(a[c]) * b[c];
      out(i, j) = dot;
      out(j, i) = dot;
    }
  }
  return out;
}

ExtendedSbm BuildExtendedSbm(int k_communities, int coverage, int nu, double p,
                             double q, double tau, const PriorSpec& prior,
                             int64_t exact_cap) {
  Require(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0, ErrorCode::kDomainError,
          "extended SBM needs p, q strictly inside (0, 1)");
  Require(tau >= 0.0 && tau <= 1.0, ErrorCode::kInvalidArgument,
          "tau must lie in [0, 1]");
  ExtendedSbm model;
  model.k_communities = k_communities;
  model.coverage = coverage;
  model.nu = nu;
  model.p = p;
  model.q = q;
  model.tau = tau;
  model.exact_cap = exact_cap;
  model.profiles = ProfileSet(k_communities, coverage, nu);
  const int size = model.size();
  for (int i = 0; i < size; ++i) model.index.emplace(model.profiles[i], i);

  if (prior.kind == PriorSpec::Kind::kUniform) {
    model.prior.assign(static_cast<size_t>(size), 1.0 / size);
  } else {
    Require(static_cast<int>(prior.weights.size()) == size, ErrorCode::kPriorInvalid,
            "prior has " + std::to_string(prior.weights.size()) +
                " entries, the profile set has " + std::to_string(size));
    double total = 0.0;
    for (double w : prior.weights) {
      Require(w >= 0.0 && std::isfinite(w), ErrorCode::kPriorInvalid,
              "prior entries must be finite and nonnegative");
      total += w;
    }
    Require(std::fabs(total - 1.0) <= 1e-12, ErrorCode::kPriorInvalid,
            "prior must sum to 1");
    model.prior = prior.weights;
  }

  const auto inner = ProfileInnerProducts(model.profiles);
  const int64_t k2 = static_cast<int64_t>(coverage) * coverage;
  const double threshold = BinarizationThreshold(coverage, p, q, tau);
  // U depends on a profile pair only through a^T a'.
  std::map<int64_t, TailResult> tails;
  model.u_mean.resize(size, size);
  model.u_lower.resize(size, size);
  model.u_upper.resize(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j <= i; ++j) {
      const int64_t m = inner(i, j);
      auto it = tails.find(m);
      if (it == tails.end()) {
        it = tails.emplace(m, PoissonBinomialTail({m, k2, p, q}, threshold, exact_cap))
                 .first;
      }
      const TailResult& t = it->second;
      if (t.method == TailMethod::kNormalApprox) model.method = TailMethod::kNormalApprox;
      model.u_mean(i, j) = model.u_mean(j, i) = t.mean_estimate;
      model.u_lower(i, j) = model.u_lower(j, i) = t.lower;
      model.u_upper(i, j) = model.u_upper(j, i) = t.upper;
    }
  }
  return model;
}

std::string ExtendedSbmJson(const ExtendedSbm& model) {
  nlohmann::json j = {{"k_communities", model.k_communities},
                      {"coverage", model.coverage},
                      {"nu", model.nu},
                      {"p", model.p},
                      {"q", model.q},
                      {"tau", model.tau},
                      {"exact_cap", model.exact_cap},
                      {"method", TailMethodName(model.method)},
                      {"profiles", model.profiles},
                      {"prior", model.prior},
                      {"u_mean", Rows(model.u_mean)},
                      {"u_lower", Rows(model.u_lower)},
                      {"u_upper", Rows(model.u_upper)}};
  return j.dump(2) + "\n";
}

}  // namespace coarse_sbm
