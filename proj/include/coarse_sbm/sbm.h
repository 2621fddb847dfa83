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

#ifndef COARSE_SBM_SBM_H_
#define COARSE_SBM_SBM_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace coarse_sbm {

// Above this node count a dense (all pairs) fine graph is refused; restricted
// sampling over the measured supports still works.
inline constexpr int64_t kDefaultDenseNodeCap = 50000;

// Symmetric SBM ensemble with p = alpha * rho and q = beta * rho.
struct SsbmParams {
  int64_t n = 0;
  int k_communities = 1;
  double alpha = 0.0;
  double beta = 0.0;
  double rho = 1.0;

  double p() const { return alpha * rho; }
  double q() const { return beta * rho; }
  void Validate() const;
};

// Community of each node, 0-based (community c of the model is label c - 1).
struct CommunityAssignment {
  std::vector<int> membership;
  int k_communities = 1;

  int64_t size() const { return static_cast<int64_t>(membership.size()); }
  std::vector<int64_t> CommunitySizes() const;
};

// Linear index of the unordered pair {u, v}, u != v, in the strict upper
// triangle: v * (v - 1) / 2 + u for u < v.
inline uint64_t PairIndex(int64_t u, int64_t v) {
  if (u > v) std::swap(u, v);
  return static_cast<uint64_t>(v) * static_cast<uint64_t>(v - 1) / 2 +
         static_cast<uint64_t>(u);
}

// Immutable simple graph over a sorted node subset of [0, n). The full graph
// uses every node; a restricted graph only the measured supports.
class FineGraph {
 public:
  FineGraph(int64_t n, std::vector<int64_t> nodes, CommunityAssignment assignment);

  int64_t n() const { return n_; }
  const std::vector<int64_t>& nodes() const { return nodes_; }
  const CommunityAssignment& assignment() const { return assignment_; }
  bool is_restricted() const { return static_cast<int64_t>(nodes_.size()) != n_; }

  // Global node ids. Pairs outside the sampled node set read as no edge.
  bool HasEdge(int64_t u, int64_t v) const;
  int64_t NumEdges() const;
  // Sorted (u, v) with u < v, global ids.
  std::vector<std::pair<int64_t, int64_t>> Edges() const;

  // Position of a global node id in nodes(), or -1 if it was not sampled.
  int64_t LocalIndex(int64_t node) const;
  bool HasLocalEdge(int64_t local_u, int64_t local_v) const {
    const uint64_t idx = PairIndex(local_u, local_v);
    return (bits_[idx / 64] >> (idx % 64)) & 1U;
  }

 private:
  friend FineGraph SampleOnNodes(const SsbmParams&, const CommunityAssignment&,
                                 std::vector<int64_t>, uint64_t);
  void Set(int64_t local_u, int64_t local_v);

  int64_t n_;
  std::vector<int64_t> nodes_;
  CommunityAssignment assignment_;
  std::vector<uint64_t> bits_;
};

// I.i.d. uniform communities, deterministic in `seed`.
CommunityAssignment SampleAssignment(const SsbmParams& params, uint64_t seed);

// Every unordered pair independently Bernoulli(p) inside a community and
// Bernoulli(q) across. The draw for pair {u, v} depends only on (seed, u, v).
FineGraph SampleFineGraph(const SsbmParams& params,
                          const CommunityAssignment& assignment, uint64_t seed,
                          int64_t dense_node_cap = kDefaultDenseNodeCap);

// Same per-pair draws as SampleFineGraph, restricted to pairs inside `support`.
FineGraph SampleFineGraphRestricted(const SsbmParams& params,
                                    const CommunityAssignment& assignment,
                                    std::span<const int64_t> support,
                                    uint64_t seed);

// "u v" per line, 0-based, sorted.
void WriteEdgeList(const FineGraph& graph, std::ostream& out);

}  // namespace coarse_sbm

#endif  // COARSE_SBM_SBM_H_
