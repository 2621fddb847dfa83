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

#include "coarse_sbm/recovery.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "coarse_sbm/errors.h"
#include "coarse_sbm/rng.h"

namespace coarse_sbm {
namespace {

constexpr double kClip = 1e-12;
constexpr int kMaxPermutedCommunities = 8;

// Clipped log U and log(1 - U), flattened K_nu x K_nu.
struct LogTables {
  int size = 0;
  std::vector<double> log_u;
  std::vector<double> log_1mu;
  std::vector<double> log_prior;

  LogTables(const ExtendedSbm& model, UVariant variant) : size(model.size()) {
    const Eigen::MatrixXd& u = model.U(variant);
    log_u.resize(static_cast<size_t>(size) * size);
    log_1mu.resize(log_u.size());
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        const double v = std::clamp(u(a, b), kClip, 1.0 - kClip);
        log_u[static_cast<size_t>(a) * size + b] = std::log(v);
        log_1mu[static_cast<size_t>(a) * size + b] = std::log1p(-v);
      }
    }
    log_prior.resize(static_cast<size_t>(size));
    for (int a = 0; a < size; ++a) {
      log_prior[a] = model.prior[a] > 0.0 ? std::log(model.prior[a])
                                          : -std::numeric_limits<double>::infinity();
    }
  }

  double Edge(int a, int b, bool edge) const {
    const size_t idx = static_cast<size_t>(a) * size + b;
    return edge ? log_u[idx] : log_1mu[idx];
  }
};

class MapSearch {
 public:
  MapSearch(const BinarizedGraph& graph, const LogTables& tables)
      : graph_(graph), tables_(tables), labels_(static_cast<size_t>(graph.l), 0) {}

  void Run() { Descend(0, 0.0); }

  const std::vector<int>& best() const { return best_; }
  double best_score() const { return best_score_; }

 private:
  void Descend(int i, double partial) {
    if (i == graph_.l) {
      const double tol = 1e-9 * (1.0 + std::fabs(best_score_));
      if (best_.empty() || partial > best_score_ + tol) {
        best_ = labels_;
        best_score_ = partial;
      }
      return;
    }
    for (int a = 0; a < tables_.size; ++a) {
      double add = tables_.log_prior[a];
      for (int j = 0; j < i; ++j) add += tables_.Edge(a, labels_[j], graph_.edge(i, j));
      labels_[i] = a;
      Descend(i + 1, partial + add);
    }
  }

  const BinarizedGraph& graph_;
  const LogTables& tables_;
  std::vector<int> labels_;
  std::vector<int> best_;
  double best_score_ = -std::numeric_limits<double>::infinity();
};

struct KMeansResult {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
  bool converged = false;
};

KMeansResult KMeansOnce(const Eigen::MatrixXd& x, int k, CounterRng& rng,
                        int max_iterations) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd centers(k, x.cols());
  // k-means++ seeding.
  centers.row(0) = x.row(static_cast<Eigen::Index>(rng.Index(static_cast<uint64_t>(n))));
  std::vector<double> d2(static_cast<size_t>(n));
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < c; ++j) best = std::min(best, (x.row(i) - centers.row(j)).squaredNorm());
      d2[i] = best;
      total += best;
    }
    Eigen::Index pick = 0;
    if (total <= 0.0) {
      pick = static_cast<Eigen::Index>(rng.Index(static_cast<uint64_t>(n)));
    } else {
      double r = rng.Uniform() * total;
      for (pick = 0; pick < n - 1; ++pick) {
        r -= d2[pick];
        if (r < 0.0) break;
      }
    }
    centers.row(c) = x.row(pick);
  }

  KMeansResult out;
  out.labels.assign(static_cast<size_t>(n), -1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int arg = 0;
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < best) {
          best = d;
          arg = c;
        }
      }
      if (out.labels[i] != arg) {
        out.labels[i] = arg;
        changed = true;
      }
    }
    if (!changed) {
      out.converged = true;
      break;
    }
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    std::vector<int> counts(static_cast<size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(out.labels[i]) += x.row(i);
      ++counts[out.labels[i]];
    }
    // Empty clusters keep their previous center.
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) centers.row(c) = sums.row(c) / counts[c];
    }
  }
  out.inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.inertia += (x.row(i) - centers.row(out.labels[i])).squaredNorm();
  }
  return out;
}

}  // namespace

double LogPosterior(const BinarizedGraph& graph, const ExtendedSbm& model,
                    const std::vector<int>& labels, UVariant variant) {
  Require(static_cast<int>(labels.size()) == graph.l, ErrorCode::kLengthMismatch,
          "labeling length differs from L");
  const LogTables tables(model, variant);
  double score = 0.0;
  for (int i = 0; i < graph.l; ++i) {
    Require(labels[i] >= 0 && labels[i] < model.size(), ErrorCode::kInvalidArgument,
            "label outside the profile set");
    score += tables.log_prior[labels[i]];
    for (int j = 0; j < i; ++j) score += tables.Edge(labels[i], labels[j], graph.edge(i, j));
  }
  return score;
}

ProfileEstimate MapExhaustive(const BinarizedGraph& graph, const ExtendedSbm& model,
                              int64_t cap) {
  const int64_t size = model.size();
  int64_t total = 1;
  for (int i = 0; i < graph.l; ++i) {
    total *= size;
    Require(total <= cap, ErrorCode::kCapExceeded,
            "K_nu^L labelings exceed the enumeration cap of " + std::to_string(cap));
  }
  const LogTables tables(model, UVariant::kMean);
  MapSearch search(graph, tables);
  search.Run();
  ProfileEstimate out;
  out.assignments = search.best();
  out.score = search.best_score();
  return out;
}

ProfileEstimate SpectralBaseline(const BinarizedGraph& graph, const ExtendedSbm& model,
                                 const SpectralOptions& options) {
  const int k = model.size();
  const int l = graph.l;
  Require(l >= k, ErrorCode::kInvalidArgument,
          "spectral baseline needs L >= number of extended communities");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(l, l);
  Eigen::VectorXd inv_sqrt_deg = Eigen::VectorXd::Zero(l);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      if (i != j && graph.edge(i, j)) a(i, j) = 1.0;
    }
    const double deg = a.row(i).sum();
    if (deg > 0.0) inv_sqrt_deg(i) = 1.0 / std::sqrt(deg);
  }
  const Eigen::MatrixXd norm = inv_sqrt_deg.asDiagonal() * a * inv_sqrt_deg.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(norm);
  // Eigenvalues come in increasing order; keep the largest k.
  const Eigen::MatrixXd embed = solver.eigenvectors().rightCols(k);

  KMeansResult best;
  for (int r = 0; r < options.restarts; ++r) {
    CounterRng rng(DeriveSeed(options.seed, streams::kSpectral, static_cast<uint64_t>(r)));
    KMeansResult run = KMeansOnce(embed, k, rng, options.max_iterations);
    if (run.inertia < best.inertia) best = std::move(run);
  }

  ProfileEstimate out;
  if (!best.converged) {
    out.warnings.push_back("ConvergenceWarning: k-means did not stabilize within " +
                           std::to_string(options.max_iterations) + " iterations");
  }

  // Edge and pair counts between clusters.
  const LogTables tables(model, UVariant::kMean);
  std::vector<int64_t> edges(static_cast<size_t>(k) * k, 0);
  std::vector<int64_t> pairs(static_cast<size_t>(k) * k, 0);
  std::vector<int64_t> members(static_cast<size_t>(k), 0);
  for (int i = 0; i < l; ++i) {
    const int ci = best.labels[i];
    ++members[ci];
    for (int j = 0; j < i; ++j) {
      const int cj = best.labels[j];
      const size_t idx = static_cast<size_t>(std::max(ci, cj)) * k + std::min(ci, cj);
      ++pairs[idx];
      if (graph.edge(i, j)) ++edges[idx];
    }
  }
  auto block = [&](int c1, int c2, int e1, int e2) {
    const size_t idx = static_cast<size_t>(std::max(c1, c2)) * k + std::min(c1, c2);
    const double e = static_cast<double>(edges[idx]);
    const double p = static_cast<double>(pairs[idx]);
    const size_t t = static_cast<size_t>(e1) * k + e2;
    return e * tables.log_u[t] + (p - e) * tables.log_1mu[t];
  };

  // Greedy: repeatedly fix the (cluster, profile) choice with the best gain.
  std::vector<int> mapping(static_cast<size_t>(k), -1);
  std::vector<bool> used(static_cast<size_t>(k), false);
  for (int step = 0; step < k; ++step) {
    double best_gain = -std::numeric_limits<double>::infinity();
    int best_c = -1;
    int best_e = -1;
    for (int c = 0; c < k; ++c) {
      if (mapping[c] >= 0) continue;
      for (int e = 0; e < k; ++e) {
        if (used[e]) continue;
        double gain = members[c] * tables.log_prior[e] + block(c, c, e, e);
        for (int c2 = 0; c2 < k; ++c2) {
          if (mapping[c2] >= 0) gain += block(c, c2, e, mapping[c2]);
        }
        if (best_c < 0 || gain > best_gain) {
          best_gain = gain;
          best_c = c;
          best_e = e;
        }
      }
    }
    mapping[best_c] = best_e;
    used[best_e] = true;
  }
  out.assignments.resize(static_cast<size_t>(l));
  for (int i = 0; i < l; ++i) out.assignments[i] = mapping[best.labels[i]];
  out.score = LogPosterior(graph, model, out.assignments);
  return out;
}

EvalResult Evaluate(const ProfileEstimate& estimate, const ProfileMatrix& truth,
                    const std::vector<Profile>& profiles) {
  const int k = truth.k_communities();
  Require(k <= kMaxPermutedCommunities, ErrorCode::kTooManyCommunities,
          "permutation search supports at most 8 communities");
  Require(static_cast<int>(estimate.assignments.size()) == truth.l(),
          ErrorCode::kLengthMismatch, "estimate and truth differ in length");
  const int l = truth.l();
  std::vector<int> perm(static_cast<size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  EvalResult out;
  out.mismatches = l + 1;
  Profile permuted(static_cast<size_t>(k));
  do {
    int mismatches = 0;
    for (int i = 0; i < l; ++i) {
      const int idx = estimate.assignments[i];
      Require(idx >= 0 && idx < static_cast<int>(profiles.size()),
              ErrorCode::kInvalidArgument, "estimate index outside the profile set");
      for (int c = 0; c < k; ++c) permuted[perm[c]] = truth.at(i, c);
      if (permuted != profiles[idx]) ++mismatches;
    }
    if (mismatches < out.mismatches) {
      out.mismatches = mismatches;
      out.best_permutation = perm;
    }
  } while (out.mismatches > 0 && std::next_permutation(perm.begin(), perm.end()));
  out.node_error_rate = l > 0 ? static_cast<double>(out.mismatches) / l : 0.0;
  out.exact_recovery = out.mismatches == 0;
  return out;
}

}  // namespace coarse_sbm
