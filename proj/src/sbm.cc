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

#include "coarse_sbm/sbm.h"

#include <algorithm>
#include <ostream>
#include <string>

#include "coarse_sbm/errors.h"
#include "coarse_sbm/rng.h"

namespace coarse_sbm {

void SsbmParams::Validate() const {
  Require(k_communities >= 1, ErrorCode::kInvalidArgument,
          "need at least one community");
  Require(n >= k_communities, ErrorCode::kInvalidArgument,
          "need N >= K (N=" + std::to_string(n) +
              ", K=" + std::to_string(k_communities) + ")");
  Require(alpha >= 0.0 && beta >= 0.0 && (alpha != 0.0 || beta != 0.0),
          ErrorCode::kInvalidArgument,
          "alpha and beta must be nonnegative and not both zero");
  Require(rho > 0.0 && rho <= 1.0, ErrorCode::kInvalidArgument,
          "rho must lie in (0, 1]");
  Require(p() <= 1.0 && q() <= 1.0, ErrorCode::kInvalidArgument,
          "alpha * rho and beta * rho must be probabilities (p=" +
              std::to_string(p()) + ", q=" + std::to_string(q()) + ")");
}

std::vector<int64_t> CommunityAssignment::CommunitySizes() const {
  std::vector<int64_t> sizes(static_cast<size_t>(k_communities), 0);
  for (int c : membership) ++sizes[static_cast<size_t>(c)];
  return sizes;
}

FineGraph::FineGraph(int64_t n, std::vector<int64_t> nodes,
                     CommunityAssignment assignment)
    : n_(n), nodes_(std::move(nodes)), assignment_(std::move(assignment)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  Require(nodes_.empty() || (nodes_.front() >= 0 && nodes_.back() < n_),
          ErrorCode::kInvalidArgument, "support node outside [0, N)");
  Require(assignment_.size() == n_, ErrorCode::kLengthMismatch,
          "assignment length differs from N");
  const auto m = static_cast<uint64_t>(nodes_.size());
  const uint64_t pairs = m < 2 ? 0 : m * (m - 1) / 2;
  bits_.assign((pairs + 63) / 64, 0);
}

int64_t FineGraph::LocalIndex(int64_t node) const {
  if (!is_restricted()) return (node >= 0 && node < n_) ? node : -1;
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end() || *it != node) return -1;
  return it - nodes_.begin();
}

void FineGraph::Set(int64_t local_u, int64_t local_v) {
  const uint64_t idx = PairIndex(local_u, local_v);
  bits_[idx / 64] |= uint64_t{1} << (idx % 64);
}

bool FineGraph::HasEdge(int64_t u, int64_t v) const {
  if (u == v) return false;
  const int64_t lu = LocalIndex(u);
  const int64_t lv = LocalIndex(v);
  if (lu < 0 || lv < 0) return false;
  const uint64_t idx = PairIndex(lu, lv);
  return (bits_[idx / 64] >> (idx % 64)) & 1U;
}

int64_t FineGraph::NumEdges() const {
  int64_t count = 0;
  for (uint64_t word : bits_) count += __builtin_popcountll(word);
  return count;
}

std::vector<std::pair<int64_t, int64_t>> FineGraph::Edges() const {
  std::vector<std::pair<int64_t, int64_t>> edges;
  const auto m = static_cast<int64_t>(nodes_.size());
  for (int64_t i = 0; i < m; ++i) {
    for (int64_t j = i + 1; j < m; ++j) {
      const uint64_t idx = PairIndex(i, j);
      if ((bits_[idx / 64] >> (idx % 64)) & 1U) {
        edges.emplace_back(nodes_[i], nodes_[j]);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

CommunityAssignment SampleAssignment(const SsbmParams& params, uint64_t seed) {
  params.Validate();
  const uint64_t stream = DeriveSeed(seed, streams::kAssignment);
  CommunityAssignment assignment;
  assignment.k_communities = params.k_communities;
  assignment.membership.resize(static_cast<size_t>(params.n));
  for (int64_t u = 0; u < params.n; ++u) {
    assignment.membership[static_cast<size_t>(u)] = static_cast<int>(
        ToIndex(CounterHash(stream, static_cast<uint64_t>(u)),
                static_cast<uint64_t>(params.k_communities)));
  }
  return assignment;
}

FineGraph SampleOnNodes(const SsbmParams& params,
                        const CommunityAssignment& assignment,
                        std::vector<int64_t> nodes, uint64_t seed) {
  params.Validate();
  Require(assignment.size() == params.n, ErrorCode::kLengthMismatch,
          "assignment length differs from N");
  FineGraph graph(params.n, std::move(nodes), assignment);
  const uint64_t stream = DeriveSeed(seed, streams::kFineEdges);
  const double p = params.p();
  const double q = params.q();
  const auto& ids = graph.nodes_;
  const auto& member = assignment.membership;
  const auto m = static_cast<int64_t>(ids.size());
  for (int64_t j = 1; j < m; ++j) {
    const int64_t v = ids[static_cast<size_t>(j)];
    const int cv = member[static_cast<size_t>(v)];
    for (int64_t i = 0; i < j; ++i) {
      const int64_t u = ids[static_cast<size_t>(i)];
      const double prob = member[static_cast<size_t>(u)] == cv ? p : q;
      if (ToUnit(CounterHash(stream, PairIndex(u, v))) < prob) graph.Set(i, j);
    }
  }
  return graph;
}

FineGraph SampleFineGraph(const SsbmParams& params,
                          const CommunityAssignment& assignment, uint64_t seed,
                          int64_t dense_node_cap) {
  Require(params.n <= dense_node_cap, ErrorCode::kSizeCap,
          "dense sampling of N=" + std::to_string(params.n) +
              " nodes exceeds the cap " + std::to_string(dense_node_cap) +
              "; use restricted sampling over the measured supports");
  std::vector<int64_t> all(static_cast<size_t>(params.n));
  for (int64_t u = 0; u < params.n; ++u) all[static_cast<size_t>(u)] = u;
  return SampleOnNodes(params, assignment, std::move(all), seed);
}

FineGraph SampleFineGraphRestricted(const SsbmParams& params,
                                    const CommunityAssignment& assignment,
                                    std::span<const int64_t> support,
                                    uint64_t seed) {
  return SampleOnNodes(params, assignment,
                       std::vector<int64_t>(support.begin(), support.end()),
                       seed);
}

void WriteEdgeList(const FineGraph& graph, std::ostream& out) {
  for (const auto& [u, v] : graph.Edges()) out << u << ' ' << v << '\n';
}

}  // namespace coarse_sbm
