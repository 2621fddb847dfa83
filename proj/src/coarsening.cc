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

#include "coarse_sbm/coarsening.h"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coarse_sbm/errors.h"
#include "coarse_sbm/rng.h"

namespace coarse_sbm {
namespace {

using nlohmann::json;

int SupportSize(const Profile& row) {
  return static_cast<int>(
      std::count_if(row.begin(), row.end(), [](int v) { return v != 0; }));
}

void CheckDivisibility(int coverage, int nu) {
  for (int size = 1; size <= nu; ++size) {
    Require(coverage % size == 0, ErrorCode::kDivisibilityError,
            "coverage " + std::to_string(coverage) +
                " is not divisible by support size " + std::to_string(size));
  }
}

int64_t DrawBinomial(CounterRng& rng, int64_t trials, double prob) {
  if (trials <= 0 || prob <= 0.0) return 0;
  if (prob >= 1.0) return trials;
  std::binomial_distribution<int64_t> dist(trials, prob);
  return dist(rng);
}

json PlanToJson(const MeasurementPlan& plan) {
  return {{"n", plan.n},
          {"l", plan.l},
          {"coverage", plan.coverage},
          {"nu", plan.nu},
          {"supports", plan.supports},
          {"constraints",
           {{"homogeneous", plan.constraints.homogeneous},
            {"balanced", plan.constraints.balanced},
            {"co_nu", plan.constraints.co_nu}}}};
}

MeasurementPlan PlanFromJson(const json& j) {
  MeasurementPlan plan;
  plan.n = j.at("n").get<int64_t>();
  plan.l = j.at("l").get<int>();
  plan.coverage = j.at("coverage").get<int>();
  plan.nu = j.at("nu").get<int>();
  plan.supports = j.at("supports").get<std::vector<std::vector<int64_t>>>();
  const json& c = j.at("constraints");
  plan.constraints = {c.at("homogeneous").get<bool>(),
                      c.at("balanced").get<bool>(), c.at("co_nu").get<bool>()};
  return plan;
}

}  // namespace

void MeasurementPlan::Validate() const {
  Require(static_cast<int>(supports.size()) == l, ErrorCode::kInvalidArgument,
          "plan has " + std::to_string(supports.size()) + " supports, expected " +
              std::to_string(l));
  Require(static_cast<int64_t>(l) * coverage <= n, ErrorCode::kInfeasible,
          "L * coverage exceeds N");
  std::set<int64_t> seen;
  for (const auto& support : supports) {
    Require(static_cast<int>(support.size()) == coverage,
            ErrorCode::kInvalidArgument, "support size differs from coverage");
    for (int64_t u : support) {
      Require(u >= 0 && u < n, ErrorCode::kInvalidArgument,
              "support node outside [0, N)");
      Require(seen.insert(u).second, ErrorCode::kInvalidArgument,
              "supports overlap at node " + std::to_string(u));
    }
  }
}

std::vector<int64_t> MeasurementPlan::AllSupportNodes() const {
  std::vector<int64_t> nodes;
  for (const auto& support : supports) {
    nodes.insert(nodes.end(), support.begin(), support.end());
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

ProfileMatrix::ProfileMatrix(int l, int k_communities)
    : l_(l), k_(k_communities), counts_(static_cast<size_t>(l) * k_communities, 0) {}

ProfileMatrix ProfileMatrix::FromRows(const std::vector<Profile>& rows,
                                      int k_communities) {
  ProfileMatrix pi(static_cast<int>(rows.size()), k_communities);
  for (int i = 0; i < pi.l(); ++i) {
    Require(static_cast<int>(rows[i].size()) == k_communities,
            ErrorCode::kLengthMismatch, "profile row length differs from K");
    for (int c = 0; c < k_communities; ++c) pi.at(i, c) = rows[i][c];
  }
  return pi;
}

Profile ProfileMatrix::Row(int i) const {
  const auto begin = counts_.begin() + static_cast<ptrdiff_t>(i) * k_;
  return Profile(begin, begin + k_);
}

int64_t ProfileMatrix::InnerProduct(int i, int j) const {
  int64_t sum = 0;
  for (int c = 0; c < k_; ++c) sum += static_cast<int64_t>(at(i, c)) * at(j, c);
  return sum;
}

MeasurementConstraints ProfileMatrix::Check(int coverage, int nu) const {
  MeasurementConstraints result{true, true, true};
  for (int i = 0; i < l_; ++i) {
    const Profile row = Row(i);
    const int total = std::accumulate(row.begin(), row.end(), 0);
    const int support = SupportSize(row);
    if (total != coverage) result.homogeneous = false;
    if (support < 1 || support > nu) result.co_nu = false;
    int first = 0;
    for (int v : row) {
      if (v < 0) result.balanced = result.homogeneous = false;
      if (v == 0) continue;
      if (first == 0) first = v;
      if (v != first) result.balanced = false;
    }
  }
  return result;
}

std::vector<Profile> ProfileSet(int k_communities, int coverage, int nu) {
  Require(k_communities >= 1, ErrorCode::kInvalidArgument, "K must be >= 1");
  Require(nu >= 1 && nu <= k_communities, ErrorCode::kInvalidArgument,
          "nu must lie in [1, K]");
  Require(coverage >= 1, ErrorCode::kInvalidArgument, "coverage must be >= 1");
  CheckDivisibility(coverage, nu);

  std::vector<Profile> profiles;
  for (int size = 1; size <= nu; ++size) {
    // Lexicographic combinations of `size` communities out of K.
    std::vector<int> pick(static_cast<size_t>(size));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      Profile profile(static_cast<size_t>(k_communities), 0);
      for (int c : pick) profile[static_cast<size_t>(c)] = coverage / size;
      profiles.push_back(std::move(profile));
      int pos = size - 1;
      while (pos >= 0 && pick[pos] == k_communities - size + pos) --pos;
      if (pos < 0) break;
      ++pick[pos];
      for (int t = pos + 1; t < size; ++t) pick[t] = pick[t - 1] + 1;
    }
  }
  return profiles;
}

int64_t ExtendedCommunityCount(int k_communities, int nu) {
  int64_t total = 0;
  int64_t binom = 1;
  for (int size = 1; size <= nu; ++size) {
    binom = binom * (k_communities - size + 1) / size;
    total += binom;
  }
  return total;
}

ProfileMatrix SampleProfileMatrix(int k_communities, int coverage, int nu, int l,
                                  std::span<const double> prior, uint64_t seed) {
  const std::vector<Profile> profiles = ProfileSet(k_communities, coverage, nu);
  Require(prior.size() == profiles.size(), ErrorCode::kPriorInvalid,
          "prior length " + std::to_string(prior.size()) +
              " differs from the profile-set size " +
              std::to_string(profiles.size()));
  std::vector<double> cumulative(prior.size());
  double total = 0.0;
  for (size_t i = 0; i < prior.size(); ++i) {
    Require(prior[i] >= 0.0, ErrorCode::kPriorInvalid, "negative prior entry");
    total += prior[i];
    cumulative[i] = total;
  }
  Require(total > 0.0, ErrorCode::kPriorInvalid, "prior sums to zero");

  CounterRng rng(DeriveSeed(seed, streams::kProfiles));
  ProfileMatrix pi(l, k_communities);
  for (int i = 0; i < l; ++i) {
    const double u = rng.Uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    // Skip trailing zero-weight entries if u landed on the total.
    if (it == cumulative.end()) --it;
    while (prior[static_cast<size_t>(it - cumulative.begin())] == 0.0) --it;
    const Profile& row = profiles[static_cast<size_t>(it - cumulative.begin())];
    for (int c = 0; c < k_communities; ++c) pi.at(i, c) = row[c];
  }
  return pi;
}

ProfileMatrix ComputeProfileMatrix(const MeasurementPlan& plan,
                                   const CommunityAssignment& assignment) {
  ProfileMatrix pi(plan.l, assignment.k_communities);
  for (int i = 0; i < plan.l; ++i) {
    for (int64_t u : plan.supports[static_cast<size_t>(i)]) {
      ++pi.at(i, assignment.membership[static_cast<size_t>(u)]);
    }
  }
  return pi;
}

PlanResult BuildPlan(int64_t n, int l, int coverage, int nu,
                     const PlanTarget& target,
                     const CommunityAssignment& assignment, uint64_t seed) {
  Require(l >= 1 && coverage >= 1, ErrorCode::kInvalidArgument,
          "L and coverage must be >= 1");
  Require(assignment.size() == n, ErrorCode::kLengthMismatch,
          "assignment length differs from N");
  Require(static_cast<int64_t>(l) * coverage <= n, ErrorCode::kInfeasible,
          "L * coverage = " + std::to_string(static_cast<int64_t>(l) * coverage) +
              " exceeds N = " + std::to_string(n));
  const int k = assignment.k_communities;
  CheckDivisibility(coverage, nu);

  ProfileMatrix pi;
  if (const auto* explicit_pi = std::get_if<ProfileMatrix>(&target)) {
    pi = *explicit_pi;
    Require(pi.l() == l && pi.k_communities() == k, ErrorCode::kLengthMismatch,
            "target profile matrix must be L x K");
    for (int i = 0; i < l; ++i) {
      const int support = SupportSize(pi.Row(i));
      Require(support >= 1 && coverage % support == 0,
              ErrorCode::kDivisibilityError,
              "row " + std::to_string(i) + " support size does not divide coverage");
    }
    const MeasurementConstraints ok = pi.Check(coverage, nu);
    Require(ok.homogeneous && ok.balanced && ok.co_nu, ErrorCode::kInvalidArgument,
            "target profile matrix violates the homogeneous/balanced/CO-nu "
            "constraints");
  } else {
    pi = SampleProfileMatrix(k, coverage, nu, l, std::get<std::vector<double>>(target),
                             seed);
  }

  // Community pools in a seeded shuffle order; rows consume them front to back.
  std::vector<std::vector<int64_t>> pools(static_cast<size_t>(k));
  for (int64_t u = 0; u < n; ++u) {
    pools[static_cast<size_t>(assignment.membership[static_cast<size_t>(u)])]
        .push_back(u);
  }
  CounterRng rng(DeriveSeed(seed, streams::kPlan));
  for (auto& pool : pools) {
    for (size_t i = pool.size(); i > 1; --i) {
      std::swap(pool[i - 1], pool[rng.Index(i)]);
    }
  }
  std::vector<size_t> next(static_cast<size_t>(k), 0);

  MeasurementPlan plan;
  plan.n = n;
  plan.l = l;
  plan.coverage = coverage;
  plan.nu = nu;
  plan.supports.resize(static_cast<size_t>(l));
  for (int i = 0; i < l; ++i) {
    auto& support = plan.supports[static_cast<size_t>(i)];
    for (int c = 0; c < k; ++c) {
      const int need = pi.at(i, c);
      auto& pool = pools[static_cast<size_t>(c)];
      Require(next[c] + static_cast<size_t>(need) <= pool.size(),
              ErrorCode::kInfeasible,
              "community " + std::to_string(c) + " has too few unassigned nodes");
      support.insert(support.end(), pool.begin() + static_cast<ptrdiff_t>(next[c]),
                     pool.begin() + static_cast<ptrdiff_t>(next[c] + need));
      next[c] += static_cast<size_t>(need);
    }
    std::sort(support.begin(), support.end());
  }
  plan.constraints = pi.Check(coverage, nu);
  plan.Validate();
  return {std::move(plan), std::move(pi)};
}

CoarseGraph Coarsen(const FineGraph& fine, const MeasurementPlan& plan) {
  plan.Validate();
  Require(plan.n == fine.n(), ErrorCode::kLengthMismatch,
          "plan N differs from the fine graph N");
  CoarseGraph coarse;
  coarse.l = plan.l;
  coarse.coverage = plan.coverage;
  coarse.weights.assign(static_cast<size_t>(plan.l) * plan.l, 0);
  coarse.plan = plan;
  coarse.truth = ComputeProfileMatrix(plan, fine.assignment());

  // Supports translated to local indices; unsampled nodes contribute nothing.
  std::vector<std::vector<int64_t>> local(static_cast<size_t>(plan.l));
  for (int i = 0; i < plan.l; ++i) {
    for (int64_t u : plan.supports[static_cast<size_t>(i)]) {
      const int64_t idx = fine.LocalIndex(u);
      if (idx >= 0) local[static_cast<size_t>(i)].push_back(idx);
    }
  }
  for (int i = 0; i < plan.l; ++i) {
    const auto& si = local[static_cast<size_t>(i)];
    for (int j = 0; j <= i; ++j) {
      const auto& sj = local[static_cast<size_t>(j)];
      int64_t count = 0;
      for (int64_t u : si) {
        for (int64_t v : sj) {
          if (u != v && fine.HasLocalEdge(u, v)) ++count;
        }
      }
      coarse.weight(i, j) = count;
      coarse.weight(j, i) = count;
    }
  }
  return coarse;
}

CoarseGraph SampleCoarseDirect(const SsbmParams& params,
                               const ProfileMatrix& profile, int coverage,
                               uint64_t seed) {
  params.Validate();
  const MeasurementConstraints ok = profile.Check(coverage, profile.k_communities());
  Require(ok.homogeneous, ErrorCode::kInvalidArgument,
          "profile rows must each sum to the coverage size");
  const int l = profile.l();
  const int64_t k2 = static_cast<int64_t>(coverage) * coverage;
  const double p = params.p();
  const double q = params.q();
  const uint64_t off_stream = DeriveSeed(seed, streams::kCoarse, 0);
  const uint64_t diag_stream = DeriveSeed(seed, streams::kCoarse, 1);

  CoarseGraph coarse;
  coarse.l = l;
  coarse.coverage = coverage;
  coarse.weights.assign(static_cast<size_t>(l) * l, 0);
  coarse.truth = profile;
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < i; ++j) {
      CounterRng rng(CounterHash(off_stream, PairIndex(i, j)));
      const int64_t m = profile.InnerProduct(i, j);
      const int64_t w = DrawBinomial(rng, m, p) + DrawBinomial(rng, k2 - m, q);
      coarse.weight(i, j) = w;
      coarse.weight(j, i) = w;
    }
    // b_i F b_i^T counts every within-support edge twice.
    CounterRng rng(CounterHash(diag_stream, static_cast<uint64_t>(i)));
    int64_t intra = 0;
    for (int c = 0; c < profile.k_communities(); ++c) {
      const int64_t a = profile.at(i, c);
      intra += a * (a - 1) / 2;
    }
    const int64_t pairs = static_cast<int64_t>(coverage) * (coverage - 1) / 2;
    coarse.weight(i, i) =
        2 * (DrawBinomial(rng, intra, p) + DrawBinomial(rng, pairs - intra, q));
  }
  return coarse;
}

void WriteCoarseCsv(const CoarseGraph& graph, std::ostream& out) {
  out << "i,j,weight\n";
  for (int i = 0; i < graph.l; ++i) {
    for (int j = 0; j < i; ++j) out << i << ',' << j << ',' << graph.weight(i, j) << '\n';
  }
}

std::string CoarseSidecarJson(const CoarseGraph& graph) {
  std::vector<int64_t> diagonal(static_cast<size_t>(graph.l));
  for (int i = 0; i < graph.l; ++i) diagonal[static_cast<size_t>(i)] = graph.weight(i, i);
  std::vector<Profile> rows;
  for (int i = 0; i < graph.truth.l(); ++i) rows.push_back(graph.truth.Row(i));
  json j = {{"l", graph.l},
            {"coverage", graph.coverage},
            {"diagonal", diagonal},
            {"diagonal_inferential", false},
            {"truth", {{"k_communities", graph.truth.k_communities()}, {"rows", rows}}},
            {"plan", graph.plan ? PlanToJson(*graph.plan) : json(nullptr)}};
  return j.dump(2) + "\n";
}

CoarseGraph ReadCoarse(std::istream& csv, std::istream& sidecar_json) {
  json meta;
  try {
    meta = json::parse(sidecar_json);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kIoError, std::string("bad coarse sidecar: ") + e.what());
  }
  CoarseGraph graph;
  try {
    graph.l = meta.at("l").get<int>();
    graph.coverage = meta.at("coverage").get<int>();
    graph.weights.assign(static_cast<size_t>(graph.l) * graph.l, 0);
    const auto diagonal = meta.at("diagonal").get<std::vector<int64_t>>();
    Require(static_cast<int>(diagonal.size()) == graph.l, ErrorCode::kIoError,
            "diagonal length differs from l");
    for (int i = 0; i < graph.l; ++i) graph.weight(i, i) = diagonal[i];
    const json& truth = meta.at("truth");
    graph.truth = ProfileMatrix::FromRows(truth.at("rows").get<std::vector<Profile>>(),
                                          truth.at("k_communities").get<int>());
    if (!meta.at("plan").is_null()) graph.plan = PlanFromJson(meta.at("plan"));
  } catch (const json::exception& e) {
    Fail(ErrorCode::kIoError, std::string("bad coarse sidecar: ") + e.what());
  }

  std::string line;
  Require(static_cast<bool>(std::getline(csv, line)) && line == "i,j,weight",
          ErrorCode::kIoError, "coarse CSV must start with header i,j,weight");
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    int i = -1;
    int j = -1;
    int64_t w = 0;
    char c1 = 0;
    char c2 = 0;
    row >> i >> c1 >> j >> c2 >> w;
    Require(!row.fail() && c1 == ',' && c2 == ',' && i > j && j >= 0 && i < graph.l,
            ErrorCode::kIoError, "bad coarse CSV row: " + line);
    graph.weight(i, j) = w;
    graph.weight(j, i) = w;
  }
  return graph;
}

}  // namespace coarse_sbm
