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

#include "mpclab/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace mpclab {

std::uint64_t default_id_cap(std::size_t n) {
  std::uint64_t m = std::max<std::uint64_t>(n, 2);
  return saturating_mul(saturating_mul(m, m), m);
}

LegalGraph::LegalGraph(std::vector<NodeRecord> nodes, std::vector<Edge> edges,
                       std::optional<std::uint64_t> id_cap)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), cap_(id_cap) {
  const std::size_t n = nodes_.size();
  if (n > std::numeric_limits<NodeIndex>::max() / 2) throw GraphError("too many nodes");
  for (Edge& e : edges_) {
    if (e.u == e.v) throw GraphError("self-loop at node " + std::to_string(e.u));
    if (e.u >= n || e.v >= n) throw GraphError("edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw GraphError("duplicate edge");
  }
  std::vector<std::uint32_t> deg(n, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
  adjacency_.resize(offsets_[n]);
  incident_.resize(offsets_[n]);
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeIndex i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adjacency_[fill[e.u]] = e.v;
    incident_[fill[e.u]++] = i;
    adjacency_[fill[e.v]] = e.u;
    incident_[fill[e.v]++] = i;
  }
  // Edges are sorted by (u, v), so each adjacency list already comes out ascending.
  max_degree_ = n ? *std::max_element(deg.begin(), deg.end()) : 0;
}

std::optional<EdgeIndex> LegalGraph::edge_between(NodeIndex u, NodeIndex v) const {
  if (u >= nodes_.size() || v >= nodes_.size()) return std::nullopt;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return incident_edges(u)[it - nb.begin()];
}

std::uint64_t LegalGraph::max_id() const {
  std::uint64_t m = 0;
  for (const auto& r : nodes_) m = std::max(m, r.id);
  return m;
}

std::uint64_t LegalGraph::max_name() const {
  std::uint64_t m = 0;
  for (const auto& r : nodes_) m = std::max(m, r.name);
  return m;
}

LegalGraph LegalGraph::with_records(std::vector<NodeRecord> records) const {
  if (records.size() != nodes_.size()) throw GraphError("record count mismatch");
  return LegalGraph(std::move(records), edges_, cap_);
}

std::vector<std::uint32_t> bfs_distances(const LegalGraph& g, NodeIndex src, std::uint32_t limit) {
  std::vector<std::uint32_t> dist(g.node_count(), kUnreached);
  std::vector<NodeIndex> queue{src};
  dist[src] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeIndex u = queue[head];
    if (dist[u] >= limit) continue;
    for (NodeIndex w : g.neighbors(u)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::uint32_t> component_labels(const LegalGraph& g) {
  std::vector<std::uint32_t> comp(g.node_count(), kUnreached);
  std::uint32_t next = 0;
  std::vector<NodeIndex> stack;
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    if (comp[s] != kUnreached) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeIndex u = stack.back();
      stack.pop_back();
      for (NodeIndex w : g.neighbors(u)) {
        if (comp[w] == kUnreached) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

LegalityReport validate_legal(const LegalGraph& g) {
  LegalityReport report;
  const std::uint64_t cap = g.id_cap();
  std::map<std::uint64_t, std::vector<NodeIndex>> by_name;
  for (NodeIndex v = 0; v < g.node_count(); ++v) by_name[g.node(v).name].push_back(v);
  for (auto& [name, nodes] : by_name) {
    if (nodes.size() > 1) {
      report.violations.push_back({ViolationKind::duplicate_name, nodes,
                                   "duplicate name " + std::to_string(name)});
    }
  }
  auto comp = component_labels(g);
  std::map<std::pair<std::uint32_t, std::uint64_t>, std::vector<NodeIndex>> by_id;
  for (NodeIndex v = 0; v < g.node_count(); ++v) by_id[{comp[v], g.node(v).id}].push_back(v);
  for (auto& [key, nodes] : by_id) {
    if (nodes.size() > 1) {
      report.violations.push_back({ViolationKind::duplicate_id_in_component, nodes,
                                   "duplicate ID " + std::to_string(key.second) + " in component"});
    }
  }
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (g.node(v).id >= cap) {
      report.violations.push_back({ViolationKind::id_over_cap, {v}, "ID exceeds cap"});
    }
    if (g.node(v).name >= cap) {
      report.violations.push_back({ViolationKind::name_over_cap, {v}, "name exceeds cap"});
    }
  }
  return report;
}

CenteredGraph induced_subgraph(const LegalGraph& g, std::span<const NodeIndex> keep, NodeIndex center) {
  std::vector<NodeIndex> local(g.node_count(), kUnreached);
  std::vector<NodeRecord> records;
  records.reserve(keep.size());
  for (NodeIndex i = 0; i < keep.size(); ++i) {
    local[keep[i]] = i;
    records.push_back(g.node(keep[i]));
  }
  std::vector<Edge> edges;
  for (NodeIndex i = 0; i < keep.size(); ++i) {
    for (NodeIndex w : g.neighbors(keep[i])) {
      if (local[w] != kUnreached && local[w] > i) edges.push_back({i, local[w]});
    }
  }
  CenteredGraph out;
  out.graph = LegalGraph(std::move(records), std::move(edges), g.id_cap());
  out.center = center;
  out.origin.assign(keep.begin(), keep.end());
  return out;
}

CenteredGraph radius_ball(const LegalGraph& g, NodeIndex v, std::uint32_t r) {
  if (v >= g.node_count()) throw GraphError("invalid node index " + std::to_string(v));
  auto dist = bfs_distances(g, v, r);
  std::vector<NodeIndex> keep;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    if (dist[u] <= r) keep.push_back(u);
  }
  NodeIndex center = static_cast<NodeIndex>(std::lower_bound(keep.begin(), keep.end(), v) - keep.begin());
  return induced_subgraph(g, keep, center);
}

CenteredGraph connected_component_of(const LegalGraph& g, NodeIndex v) {
  return radius_ball(g, v, kUnreached - 1);
}

namespace {

// Backtracking ID-preserving isomorphism for graphs where IDs repeat.
class IdMatcher {
 public:
  IdMatcher(const LegalGraph& a, const LegalGraph& b) : a_(a), b_(b) {}

  bool run(std::optional<std::pair<NodeIndex, NodeIndex>> centers) {
    const std::size_t n = a_.node_count();
    map_.assign(n, kUnreached);
    used_.assign(n, false);
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::map<std::uint64_t, std::size_t> multiplicity;
    for (const auto& r : a_.nodes()) ++multiplicity[r.id];
    // Rare IDs first, then high degree, then BFS-ish locality via index.
    std::stable_sort(order_.begin(), order_.end(), [&](NodeIndex x, NodeIndex y) {
      auto mx = multiplicity[a_.node(x).id], my = multiplicity[a_.node(y).id];
      if (mx != my) return mx < my;
      return a_.degree(x) > a_.degree(y);
    });
    if (centers) {
      auto [ca, cb] = *centers;
      if (!compatible(ca, cb)) return false;
      map_[ca] = cb;
      used_[cb] = true;
      order_.erase(std::find(order_.begin(), order_.end(), ca));
    }
    return search(0);
  }

 private:
  bool compatible(NodeIndex x, NodeIndex y) const {
    if (a_.node(x).id != b_.node(y).id || a_.degree(x) != b_.degree(y)) return false;
    for (NodeIndex w : a_.neighbors(x)) {
      if (map_[w] != kUnreached && !b_.adjacent(y, map_[w])) return false;
    }
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == order_.size()) return true;
    NodeIndex x = order_[depth];
    for (NodeIndex y = 0; y < b_.node_count(); ++y) {
      if (used_[y] || !compatible(x, y)) continue;
      // Edge counts match and every mapped edge is preserved, so the final map is an isomorphism.
      map_[x] = y;
      used_[y] = true;
      if (search(depth + 1)) return true;
      map_[x] = kUnreached;
      used_[y] = false;
    }
    return false;
  }

  const LegalGraph& a_;
  const LegalGraph& b_;
  std::vector<NodeIndex> map_;
  std::vector<bool> used_;
  std::vector<NodeIndex> order_;
};

}  // namespace

bool id_isomorphic(const LegalGraph& a, const LegalGraph& b,
                   std::optional<std::pair<NodeIndex, NodeIndex>> centers) {
  const std::size_t n = a.node_count();
  if (n != b.node_count() || a.edge_count() != b.edge_count()) return false;
  std::vector<std::pair<std::uint64_t, NodeIndex>> ia, ib;
  for (NodeIndex v = 0; v < n; ++v) {
    ia.push_back({a.node(v).id, v});
    ib.push_back({b.node(v).id, v});
  }
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (ia[i].first != ib[i].first) return false;
  }
  bool unique = true;
  for (std::size_t i = 1; i < n; ++i) {
    if (ia[i].first == ia[i - 1].first) unique = false;
  }
  if (!unique) return IdMatcher(a, b).run(centers);

  std::vector<NodeIndex> map(n);
  for (std::size_t i = 0; i < n; ++i) map[ia[i].second] = ib[i].second;
  if (centers && map[centers->first] != centers->second) return false;
  for (const Edge& e : a.edges()) {
    if (!b.adjacent(map[e.u], map[e.v])) return false;
  }
  return true;
}

bool d_radius_identical(const CenteredGraph& a, const CenteredGraph& b, std::uint32_t d) {
  auto ba = radius_ball(a.graph, a.center, d);
  auto bb = radius_ball(b.graph, b.center, d);
  return id_isomorphic(ba.graph, bb.graph, std::make_pair(ba.center, bb.center));
}

LegalGraph disjoint_union(std::span<const LegalGraph> parts, RenamePolicy policy,
                          std::optional<std::uint64_t> id_cap) {
  std::vector<NodeRecord> records;
  std::vector<Edge> edges;
  std::uint64_t offset = 0;
  for (const LegalGraph& part : parts) {
    const NodeIndex base = static_cast<NodeIndex>(records.size());
    for (const NodeRecord& r : part.nodes()) {
      NodeRecord out = r;
      if (policy == RenamePolicy::offset) out.name = r.name + offset;
      if (policy == RenamePolicy::sequential) out.name = records.size();
      records.push_back(out);
    }
    for (const Edge& e : part.edges()) edges.push_back({base + e.u, base + e.v});
    if (part.node_count()) offset += part.max_name() + 1;
  }
  LegalGraph out(std::move(records), std::move(edges), id_cap);
  for (const NodeRecord& r : out.nodes()) {
    if (r.name >= out.id_cap() || r.id >= out.id_cap()) throw GraphError("union exceeds ID cap");
  }
  return out;
}

LegalGraph line_graph(const LegalGraph& g) {
  const std::uint64_t cap = g.id_cap();
  auto cap_pair = cantor_pair(cap - 1, cap - 1);
  if (!cap_pair || *cap_pair == std::numeric_limits<std::uint64_t>::max()) {
    throw GraphError("line graph ID cap overflows 64 bits");
  }
  std::vector<NodeRecord> records;
  records.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    const auto& a = g.node(e.u);
    const auto& b = g.node(e.v);
    records.push_back({*cantor_pair(std::min(a.id, b.id), std::max(a.id, b.id)),
                       *cantor_pair(std::min(a.name, b.name), std::max(a.name, b.name))});
  }
  std::vector<Edge> edges;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    auto inc = g.incident_edges(v);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) edges.push_back({inc[i], inc[j]});
    }
  }
  return LegalGraph(std::move(records), std::move(edges), *cap_pair + 1);
}

LegalGraph graph_power(const LegalGraph& g, std::uint32_t k) {
  std::vector<Edge> edges;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    auto dist = bfs_distances(g, v, k);
    for (NodeIndex u = v + 1; u < g.node_count(); ++u) {
      if (dist[u] <= k) edges.push_back({v, u});
    }
  }
  return LegalGraph(std::vector<NodeRecord>(g.nodes().begin(), g.nodes().end()), std::move(edges),
                    g.explicit_cap());
}

}  // namespace mpclab
