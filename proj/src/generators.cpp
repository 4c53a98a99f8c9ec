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

#include "mpclab/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mpclab {

LegalGraph from_edges(std::size_t n, std::vector<Edge> edges, const IdPolicy& ids) {
  std::vector<std::uint64_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (ids.shuffle) {
    Rng rng(ids.seed ^ 0x5eed1d5ULL);
    rng.shuffle(perm);
  }
  const std::uint64_t base = ids.name_base.value_or(n);
  std::vector<NodeRecord> records(n);
  for (std::size_t i = 0; i < n; ++i) records[i] = {perm[i], base + i};
  return LegalGraph(std::move(records), std::move(edges));
}

LegalGraph cycle_graph(std::size_t n, const IdPolicy& ids) {
  if (n < 3) throw GraphError("cycle needs at least 3 nodes");
  std::vector<Edge> edges;
  for (NodeIndex i = 0; i < n; ++i) edges.push_back({i, static_cast<NodeIndex>((i + 1) % n)});
  return from_edges(n, std::move(edges), ids);
}

LegalGraph two_cycles(std::size_t total, const IdPolicy& ids) {
  if (total % 2 || total < 6) throw GraphError("two_cycles needs an even node count of at least 6");
  const std::size_t n = total / 2;
  std::vector<Edge> edges;
  for (NodeIndex c = 0; c < 2; ++c) {
    NodeIndex base = static_cast<NodeIndex>(c * n);
    for (NodeIndex i = 0; i < n; ++i) {
      edges.push_back({base + i, base + static_cast<NodeIndex>((i + 1) % n)});
    }
  }
  return from_edges(total, std::move(edges), ids);
}

LegalGraph path_graph(std::size_t n, const IdPolicy& ids) {
  std::vector<Edge> edges;
  for (NodeIndex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return from_edges(n, std::move(edges), ids);
}

LegalGraph star_graph(std::size_t n, const IdPolicy& ids) {
  std::vector<Edge> edges;
  for (NodeIndex i = 1; i < n; ++i) edges.push_back({0, i});
  return from_edges(n, std::move(edges), ids);
}

LegalGraph clique_graph(std::size_t n, const IdPolicy& ids) {
  std::vector<Edge> edges;
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return from_edges(n, std::move(edges), ids);
}

LegalGraph random_regular(std::size_t n, std::size_t d, std::uint64_t seed, const IdPolicy& ids) {
  if (d >= n || (n * d) % 2) throw GraphError("no simple d-regular graph with these parameters");
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    // Random pairing, skipping pairs that would make a loop or a repeated edge.
    std::vector<NodeIndex> points;
    for (NodeIndex v = 0; v < n; ++v) points.insert(points.end(), d, v);
    std::set<Edge> edges;
    bool stuck = false;
    while (!points.empty() && !stuck) {
      stuck = true;
      for (int tries = 0; tries < 64; ++tries) {
        std::size_t i = rng.below(points.size()), j = rng.below(points.size());
        NodeIndex a = points[i], b = points[j];
        if (a == b) continue;
        Edge e{std::min(a, b), std::max(a, b)};
        if (edges.count(e)) continue;
        edges.insert(e);
        if (i < j) std::swap(i, j);
        points.erase(points.begin() + i);
        points.erase(points.begin() + j);
        stuck = false;
        break;
      }
    }
    if (points.empty()) return from_edges(n, {edges.begin(), edges.end()}, ids);
  }
  throw GraphError("random regular generation failed");
}

LegalGraph random_bounded(std::size_t n, std::size_t max_degree, std::uint64_t num, std::uint64_t den,
                          std::uint64_t seed, const IdPolicy& ids) {
  Rng rng(seed);
  std::vector<Edge> candidates;
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j = i + 1; j < n; ++j) candidates.push_back({i, j});
  }
  rng.shuffle(candidates);
  std::vector<std::size_t> deg(n, 0);
  std::vector<Edge> edges;
  for (const Edge& e : candidates) {
    if (deg[e.u] >= max_degree || deg[e.v] >= max_degree) continue;
    if (!rng.chance(num, den)) continue;
    ++deg[e.u];
    ++deg[e.v];
    edges.push_back(e);
  }
  return from_edges(n, std::move(edges), ids);
}

LegalGraph random_tree(std::size_t n, std::uint64_t seed, const IdPolicy& ids) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeIndex v = 1; v < n; ++v) edges.push_back({static_cast<NodeIndex>(rng.below(v)), v});
  return from_edges(n, std::move(edges), ids);
}

LegalGraph random_connected(std::size_t n, std::size_t extra_edges, std::size_t max_degree,
                            std::uint64_t seed, const IdPolicy& ids) {
  Rng rng(seed);
  if (n == 0) return from_edges(0, {}, ids);
  if (max_degree < 2 && n > 2) throw GraphError("connected graph needs max degree >= 2");
  std::vector<std::size_t> deg(n, 0);
  std::set<Edge> edges;
  for (NodeIndex v = 1; v < n; ++v) {
    std::vector<NodeIndex> open;
    for (NodeIndex u = 0; u < v; ++u) {
      if (deg[u] < max_degree) open.push_back(u);
    }
    NodeIndex u = open[rng.below(open.size())];
    edges.insert({u, v});
    ++deg[u];
    ++deg[v];
  }
  for (std::size_t k = 0, tries = 0; k < extra_edges && tries < 64 * (extra_edges + 1); ++tries) {
    NodeIndex a = static_cast<NodeIndex>(rng.below(n)), b = static_cast<NodeIndex>(rng.below(n));
    if (a == b || deg[a] >= max_degree || deg[b] >= max_degree) continue;
    Edge e{std::min(a, b), std::max(a, b)};
    if (!edges.insert(e).second) continue;
    ++deg[a];
    ++deg[b];
    ++k;
  }
  return from_edges(n, {edges.begin(), edges.end()}, ids);
}

std::vector<std::string> generator_families() {
  return {"cycle", "two_cycles", "path", "star", "clique", "regular", "tree", "bounded"};
}

LegalGraph generate(std::string_view family, std::span<const std::uint64_t> params, std::uint64_t seed,
                    const IdPolicy& ids) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) {
      throw GraphError(std::string(family) + " takes " + std::to_string(k) + " parameter(s)");
    }
  };
  if (family == "cycle") return need(1), cycle_graph(params[0], ids);
  if (family == "two_cycles") return need(1), two_cycles(params[0], ids);
  if (family == "path") return need(1), path_graph(params[0], ids);
  if (family == "star") return need(1), star_graph(params[0], ids);
  if (family == "clique") return need(1), clique_graph(params[0], ids);
  if (family == "regular") return need(2), random_regular(params[0], params[1], seed, ids);
  if (family == "tree") return need(1), random_tree(params[0], seed, ids);
  if (family == "bounded") return need(2), random_bounded(params[0], params[1], 1, 4, seed, ids);
  throw GraphError("unknown graph family '" + std::string(family) + "'");
}

void for_each_graph(std::size_t n, const std::function<void(const LegalGraph&)>& f) {
  std::vector<Edge> slots;
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j = i + 1; j < n; ++j) slots.push_back({i, j});
  }
  for (std::uint64_t mask = 0; mask < (1ULL << slots.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < slots.size(); ++b) {
      if (mask >> b & 1) edges.push_back(slots[b]);
    }
    f(from_edges(n, std::move(edges)));
  }
}

std::vector<LegalGraph> connected_graphs(std::size_t n) {
  std::vector<LegalGraph> out;
  if (n == 0) return out;
  std::vector<NodeIndex> perm(n);
  std::set<std::uint64_t> seen;
  auto encode = [&](const LegalGraph& g, const std::vector<NodeIndex>& p) {
    // Upper-triangle bitmask of the relabeled adjacency matrix.
    std::uint64_t code = 0;
    for (const Edge& e : g.edges()) {
      NodeIndex a = std::min(p[e.u], p[e.v]), b = std::max(p[e.u], p[e.v]);
      code |= 1ULL << (a * n + b);
    }
    return code;
  };
  for_each_graph(n, [&](const LegalGraph& g) {
    auto comp = component_labels(g);
    if (std::any_of(comp.begin(), comp.end(), [](std::uint32_t c) { return c != 0; })) return;
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    do {
      best = std::min(best, encode(g, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) out.push_back(g);
  });
  return out;
}

std::vector<LegalGraph> labeled_paths(std::size_t n) {
  std::vector<LegalGraph> out;
  std::vector<std::uint64_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<Edge> edges;
  for (NodeIndex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  do {
    if (n >= 2 && ids.front() > ids.back()) continue;
    std::vector<NodeRecord> records(n);
    for (std::size_t i = 0; i < n; ++i) records[i] = {ids[i], n + i};
    out.emplace_back(std::move(records), edges);
  } while (std::next_permutation(ids.begin(), ids.end()));
  return out;
}

}  // namespace mpclab
