// Copyright 2026 The mpclab Authors
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

#ifndef MPCLAB_GRAPH_HPP
#define MPCLAB_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpclab/common.hpp"

namespace mpclab {

struct NodeRecord {
  std::uint64_t id = 0;
  std::uint64_t name = 0;
  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

// Canonical undirected edge, u < v.
struct Edge {
  NodeIndex u = 0;
  NodeIndex v = 0;
  auto operator<=>(const Edge&) const = default;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

// max(n, 2)^3.
std::uint64_t default_id_cap(std::size_t n);

// A simple undirected graph whose nodes carry (ID, name). Legality is checked separately
// by validate_legal, since some constructions legitimately produce illegal graphs.
class LegalGraph {
 public:
  LegalGraph() = default;
  LegalGraph(std::vector<NodeRecord> nodes, std::vector<Edge> edges,
             std::optional<std::uint64_t> id_cap = std::nullopt);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const NodeRecord& node(NodeIndex v) const { return nodes_[v]; }
  std::span<const NodeRecord> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }

  std::span<const NodeIndex> neighbors(NodeIndex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  // Edge indices aligned with neighbors(v).
  std::span<const EdgeIndex> incident_edges(NodeIndex v) const {
    return {incident_.data() + offsets_[v], incident_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const { return max_degree_; }
  bool adjacent(NodeIndex u, NodeIndex v) const { return edge_between(u, v).has_value(); }
  std::optional<EdgeIndex> edge_between(NodeIndex u, NodeIndex v) const;

  std::uint64_t id_cap() const { return cap_ ? *cap_ : default_id_cap(nodes_.size()); }
  std::optional<std::uint64_t> explicit_cap() const { return cap_; }
  std::uint64_t max_id() const;
  std::uint64_t max_name() const;

  // Same topology with replaced records.
  LegalGraph with_records(std::vector<NodeRecord> records) const;

  // Equality of records and edges; the cap is not part of the graph.
  friend bool operator==(const LegalGraph& a, const LegalGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<NodeRecord> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<NodeIndex> adjacency_;
  std::vector<EdgeIndex> incident_;
  std::optional<std::uint64_t> cap_;
  std::size_t max_degree_ = 0;
};

// A graph with a designated node. `origin[i]` is the index in the source graph of node i
// when the graph was extracted from a larger one.
struct CenteredGraph {
  LegalGraph graph;
  NodeIndex center = 0;
  std::vector<NodeIndex> origin;
};

enum class ViolationKind { duplicate_name, duplicate_id_in_component, id_over_cap, name_over_cap };

struct Violation {
  ViolationKind kind;
  std::vector<NodeIndex> nodes;
  std::string message;
};

struct LegalityReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

LegalityReport validate_legal(const LegalGraph& g);

// Distances from src, kUnreached beyond `limit`.
std::vector<std::uint32_t> bfs_distances(const LegalGraph& g, NodeIndex src,
                                         std::uint32_t limit = kUnreached);

// Component number per node, numbered in order of smallest member.
std::vector<std::uint32_t> component_labels(const LegalGraph& g);

// Induced subgraph on `keep` (ascending), carrying the source cap.
CenteredGraph induced_subgraph(const LegalGraph& g, std::span<const NodeIndex> keep,
                               NodeIndex center = 0);

CenteredGraph radius_ball(const LegalGraph& g, NodeIndex v, std::uint32_t r);
CenteredGraph connected_component_of(const LegalGraph& g, NodeIndex v);

// Isomorphism preserving IDs (and the centers when given). Names are ignored.
bool id_isomorphic(const LegalGraph& a, const LegalGraph& b,
                   std::optional<std::pair<NodeIndex, NodeIndex>> centers = std::nullopt);

bool d_radius_identical(const CenteredGraph& a, const CenteredGraph& b, std::uint32_t d);

enum class RenamePolicy {
  keep,        // names unchanged; may produce an illegal union
  offset,      // part i adds (max name of parts before it) + 1
  sequential,  // names 0..N-1 in order
};

LegalGraph disjoint_union(std::span<const LegalGraph> parts, RenamePolicy policy,
                          std::optional<std::uint64_t> id_cap = std::nullopt);

// Node i of the result is edge i of g; IDs and names are Cantor pairs of the endpoint values.
LegalGraph line_graph(const LegalGraph& g);

// G^k: u ~ v iff 0 < dist(u, v) <= k.
LegalGraph graph_power(const LegalGraph& g, std::uint32_t k);

}  // namespace mpclab

#endif  // MPCLAB_GRAPH_HPP
