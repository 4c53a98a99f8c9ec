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

#include "mpclab/lifting.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <sstream>

#include "mpclab/generators.hpp"

namespace mpclab {

// ---- Replication graphs ----

Replication build_replication(const ReplicationSpec& spec) {
  const LegalGraph& g = spec.base;
  const std::size_t n = g.node_count();
  if (spec.copies == 0) throw Error("replication needs at least one copy");
  if (spec.isolated > 0 && spec.isolated >= n)
    throw Error("replication allows fewer isolated nodes than |V(G)| = " + std::to_string(n));
  const std::size_t total = spec.copies * n + spec.isolated;
  std::uint64_t fresh_name = n ? g.max_name() + 1 : 0;
  const std::uint64_t fresh_id = n ? g.max_id() + 1 : 0;
  std::vector<NodeRecord> records;
  records.reserve(total);
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < spec.copies; ++c) {
    for (NodeIndex v = 0; v < n; ++v) records.push_back({g.node(v).id, c == 0 ? g.node(v).name : fresh_name++});
    const auto base = static_cast<NodeIndex>(c * n);
    for (const Edge& e : g.edges()) edges.push_back({base + e.u, base + e.v});
  }
  for (std::size_t i = 0; i < spec.isolated; ++i) records.push_back({fresh_id, fresh_name++});
  Replication out;
  const std::uint64_t cap = g.explicit_cap().value_or(default_id_cap(total));
  out.graph = LegalGraph(std::move(records), std::move(edges), cap);
  for (const auto& r : out.graph.nodes())
    if (r.name >= cap || r.id >= cap) throw GraphError("replication exceeds the name cap");
  out.base_nodes = n;
  out.base_edges = g.edge_count();
  return out;
}

Labeling replicate_labeling(const ReplicationSpec& spec, const Replication& rep, const Labeling& l) {
  const std::size_t unit = l.domain == LabelDomain::nodes ? rep.base_nodes : rep.base_edges;
  if (l.values.size() != unit) throw LabelError("labeling does not match the replicated graph");
  Labeling out{l.domain, {}};
  for (std::size_t c = 0; c < spec.copies; ++c) out.values.insert(out.values.end(), l.values.begin(), l.values.end());
  if (l.domain == LabelDomain::nodes) out.values.insert(out.values.end(), spec.isolated, spec.isolated_label);
  return out;
}

bool check_replication_implication(const ProblemDescriptor& problem, const Labeling& l, const ReplicationSpec& spec) {
  auto rep = build_replication(spec);
  const bool replicated_valid = validate(problem, rep.graph, replicate_labeling(spec, rep, l)).valid;
  return !replicated_valid || validate(problem, spec.base, l).valid;
}

// ---- s-t connectivity simulation graphs ----

const char* to_string(StCase c) { return c == StCase::case1 ? "case1" : "case2"; }

namespace {

void check_instance(const StConnInstance& inst) {
  const std::size_t n = inst.host.node_count();
  if (inst.s >= n || inst.t >= n || inst.s == inst.t) throw Error("s and t must be distinct host nodes");
  if (inst.D == 0) throw Error("D must be positive");
  if (inst.h.size() != n) throw Error("h needs one value per host node");
  for (auto x : inst.h)
    if (x < 1 || x > inst.D) throw Error("h values must lie in [1, D]");
  if (!d_radius_identical(inst.left, inst.right, inst.D))
    throw Error("left and right graphs are not D-radius identical");
}

LegalGraph simulate_side(const StConnInstance& inst, const std::vector<char>& alive, const CenteredGraph& side) {
  const LegalGraph& H = inst.host;
  const LegalGraph& G = side.graph;
  const auto dist = bfs_distances(G, side.center);
  auto assigned = [&](NodeIndex u, NodeIndex w) {
    if (u == inst.s) return dist[w] <= inst.h[u];
    if (u == inst.t) return dist[w] == kUnreached || dist[w] > inst.D;
    return dist[w] == inst.h[u];
  };
  // s first with the center leading, so v_s is node 0 on both sides.
  std::vector<NodeIndex> host_order;
  host_order.push_back(inst.s);
  for (NodeIndex u = 0; u < H.node_count(); ++u)
    if (u != inst.s && alive[u]) host_order.push_back(u);
  const std::size_t gn = G.node_count();
  std::vector<std::uint32_t> index(H.node_count() * gn, kUnreached);
  std::vector<NodeRecord> records;
  std::uint64_t cap = 0;
  for (NodeIndex u : host_order) {
    std::vector<NodeIndex> ws;
    if (u == inst.s) ws.push_back(side.center);
    for (NodeIndex w = 0; w < gn; ++w)
      if (assigned(u, w) && !(u == inst.s && w == side.center)) ws.push_back(w);
    for (NodeIndex w : ws) {
      auto name = cantor_pair(H.node(u).name, G.node(w).name);
      if (!name) throw GraphError("simulation name pairing overflows");
      index[u * gn + w] = static_cast<std::uint32_t>(records.size());
      records.push_back({G.node(w).id, *name});
      cap = std::max({cap, *name + 1, G.node(w).id + 1});
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : G.edges()) {
    for (NodeIndex u : host_order) {
      for (auto [w, wh] : {std::pair(e.u, e.v), std::pair(e.v, e.u)}) {
        const auto a = index[u * gn + w];
        if (a == kUnreached) continue;
        auto link = [&](NodeIndex uh) {
          const auto b = index[uh * gn + wh];
          if (b != kUnreached && a != b) edges.push_back({std::min(a, b), std::max(a, b)});
        };
        link(u);
        for (NodeIndex uh : H.neighbors(u))
          if (alive[uh]) link(uh);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::uint64_t next_name = cap;
  auto append_padding_id = [&](std::uint64_t id) {
    records.push_back({id, next_name++});
    cap = std::max(cap, std::max(id, records.back().name) + 1);
  };
  if (inst.pad_degree) {
    const auto base = static_cast<NodeIndex>(records.size());
    for (NodeIndex w = 0; w < inst.left.graph.node_count(); ++w) append_padding_id(inst.left.graph.node(w).id);
    for (const Edge& e : inst.left.graph.edges()) edges.push_back({base + e.u, base + e.v});
  }
  std::uint64_t pad_id = 0;
  for (const auto& side_graph : {&inst.left.graph, &inst.right.graph})
    if (side_graph->node_count()) pad_id = std::max(pad_id, side_graph->max_id() + 1);
  for (std::size_t i = 0; i < inst.pad_nodes; ++i) append_padding_id(pad_id + i);
  const std::size_t total = records.size();
  return LegalGraph(std::move(records), std::move(edges), std::max(cap, default_id_cap(total)));
}

}  // namespace

StConnSimulation build_stconn_simulation(const StConnInstance& inst) {
  check_instance(inst);
  const LegalGraph& H = inst.host;
  const NodeIndex n = H.node_count();
  StConnSimulation sim;
  std::vector<char> low(n);
  for (NodeIndex u = 0; u < n; ++u) low[u] = H.degree(u) <= 2;
  auto live_degree = [&](NodeIndex u) {
    std::size_t d = 0;
    for (NodeIndex x : H.neighbors(u)) d += low[x];
    return d;
  };
  if (!low[inst.s] || !low[inst.t] || live_degree(inst.s) != 1 || live_degree(inst.t) != 1) {
    sim.early_exit = true;
    return sim;
  }
  sim.survivors.assign(n, 0);
  for (NodeIndex u = 0; u < n; ++u) {
    if (u == inst.s || u == inst.t) {
      sim.survivors[u] = 1;
      continue;
    }
    if (!low[u] || live_degree(u) != 2) continue;
    // The neighbours other than t must carry h(u) - 1 and h(u) + 1.
    std::vector<std::int64_t> seen;
    for (NodeIndex x : H.neighbors(u))
      if (x != inst.t) seen.push_back(static_cast<std::int64_t>(inst.h[x]) - inst.h[u]);
    std::sort(seen.begin(), seen.end());
    const bool ok = seen.size() == 2 ? (seen[0] == -1 && seen[1] == 1) : (seen.size() == 1 && (seen[0] == -1 || seen[0] == 1));
    sim.survivors[u] = ok;
  }
  sim.left = simulate_side(inst, sim.survivors, inst.left);
  sim.right = simulate_side(inst, sim.survivors, inst.right);
  sim.v_s = 0;
  return sim;
}

StCase classify_case(const StConnInstance& inst) {
  check_instance(inst);
  const LegalGraph& H = inst.host;
  if (H.degree(inst.s) != 1 || H.degree(inst.t) != 1) return StCase::case2;
  std::vector<NodeIndex> path{inst.s};
  NodeIndex prev = inst.s, cur = H.neighbors(inst.s)[0];
  while (cur != inst.t) {
    if (H.degree(cur) != 2 || path.size() >= inst.D) return StCase::case2;
    path.push_back(cur);
    auto nb = H.neighbors(cur);
    const NodeIndex next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  const auto p = static_cast<std::int64_t>(path.size()) + 1;
  const std::int64_t start = static_cast<std::int64_t>(inst.D) - p + 2;
  for (std::size_t d = 0; d < path.size(); ++d)
    if (static_cast<std::int64_t>(inst.h[path[d]]) != start + static_cast<std::int64_t>(d)) return StCase::case2;
  return StCase::case1;
}

std::optional<StCase> structural_case(const StConnInstance& inst, const StConnSimulation& sim) {
  if (sim.early_exit) return StCase::case2;
  auto cc = connected_component_of(sim.left, *sim.v_s);
  auto cc2 = connected_component_of(sim.right, *sim.v_s);
  const bool one = id_isomorphic(cc.graph, inst.left.graph, std::pair(cc.center, inst.left.center)) &&
                   id_isomorphic(cc2.graph, inst.right.graph, std::pair(cc2.center, inst.right.center));
  const bool two = id_isomorphic(cc.graph, cc2.graph, std::pair(cc.center, cc2.center));
  if (one == two) return std::nullopt;
  return one ? StCase::case1 : StCase::case2;
}

std::vector<SweepHost> sweep_hosts(std::size_t max_nodes) {
  std::vector<SweepHost> hosts;
  auto seq = IdPolicy::sequential();
  auto path_edges = [](NodeIndex from, NodeIndex to) {
    std::vector<Edge> e;
    for (NodeIndex i = from; i + 1 <= to; ++i) e.push_back({i, i + 1});
    return e;
  };
  for (std::size_t k = 2; k <= max_nodes; ++k) {
    const auto last = static_cast<NodeIndex>(k - 1);
    hosts.push_back({"path" + std::to_string(k), from_edges(k, path_edges(0, last), seq), 0, last});
    if (k >= 3) {
      hosts.push_back({"path" + std::to_string(k) + "_t_inside", from_edges(k, path_edges(0, last), seq), 0, last - 1});
      hosts.push_back({"cycle" + std::to_string(k), cycle_graph(k, seq), 0, static_cast<NodeIndex>(k / 2)});
    }
    if (k >= 4) {
      auto e = path_edges(0, last - 1);
      e.push_back({1, last});
      hosts.push_back({"path" + std::to_string(k - 1) + "_pendant", from_edges(k, e, seq), 0, last - 1});
    }
    if (k >= 3) hosts.push_back({"path" + std::to_string(k - 1) + "_isolated", from_edges(k, path_edges(0, last - 1), seq), 0, last - 1});
    for (std::size_t a = 1; a < k; ++a) {
      auto e = path_edges(0, static_cast<NodeIndex>(a - 1));
      auto f = path_edges(static_cast<NodeIndex>(a), last);
      e.insert(e.end(), f.begin(), f.end());
      hosts.push_back({"split" + std::to_string(a) + "_" + std::to_string(k - a), from_edges(k, e, seq), 0, last});
    }
  }
  return hosts;
}

std::pair<CenteredGraph, CenteredGraph> random_identical_pair(std::uint32_t D, std::size_t max_nodes, Rng& rng) {
  if (D + 2 > max_nodes) throw Error("pair needs at least D + 2 nodes");
  for (;;) {
    const std::size_t n = D + 2 + rng.below(max_nodes - D - 1);
    std::vector<Edge> edges;
    for (NodeIndex i = 0; i + 1 < D + 2; ++i) edges.push_back({i, i + 1});
    for (NodeIndex i = D + 2; i < n; ++i) edges.push_back({static_cast<NodeIndex>(rng.below(i)), i});
    for (std::uint64_t extra = rng.below(3); extra > 0; --extra) {
      NodeIndex a = static_cast<NodeIndex>(rng.below(n)), b = static_cast<NodeIndex>(rng.below(n));
      if (a == b) continue;
      Edge e{std::min(a, b), std::max(a, b)};
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    }
    std::vector<std::uint64_t> pool(4 * max_nodes);
    std::iota(pool.begin(), pool.end(), 0);
    rng.shuffle(pool);
    std::vector<NodeRecord> records(n);
    for (std::size_t i = 0; i < n; ++i) records[i] = {pool[i], 100 + i};
    LegalGraph g(records, edges, 4 * max_nodes + 200);
    auto dist = bfs_distances(g, 0);
    std::vector<NodeIndex> far, edge_of_ball;
    for (NodeIndex v = 0; v < n; ++v) {
      if (dist[v] > D) far.push_back(v);
      if (dist[v] >= D) edge_of_ball.push_back(v);
    }
    if (far.empty()) continue;
    LegalGraph g2;
    if (n < max_nodes && rng.coin()) {
      auto r2 = records;
      r2.push_back({pool[n], 100 + n});
      auto e2 = edges;
      e2.push_back({edge_of_ball[rng.below(edge_of_ball.size())], static_cast<NodeIndex>(n)});
      g2 = LegalGraph(r2, e2, 4 * max_nodes + 200);
    } else {
      auto r2 = records;
      r2[far[rng.below(far.size())]].id = pool[n];
      g2 = LegalGraph(r2, edges, 4 * max_nodes + 200);
    }
    CenteredGraph a{g, 0, {}}, b{g2, 0, {}};
    if (!d_radius_identical(a, b, D) || id_isomorphic(a.graph, b.graph, std::pair<NodeIndex, NodeIndex>(0, 0))) continue;
    return {std::move(a), std::move(b)};
  }
}

SweepSummary stconn_sweep(const SweepOptions& options) {
  SweepSummary summary;
  Rng rng(options.seed);
  const auto hosts = sweep_hosts(options.max_host_nodes);
  for (std::uint32_t D = 1; D <= options.max_D; ++D) {
    if (D < options.min_D) continue;
    const std::size_t pair_nodes = std::max<std::size_t>(options.max_pair_nodes, D + 3);
    std::vector<std::pair<CenteredGraph, CenteredGraph>> pairs;
    for (std::size_t i = 0; i < options.pairs; ++i) pairs.push_back(random_identical_pair(D, pair_nodes, rng));
    for (const auto& host : hosts) {
      const std::size_t hn = host.graph.node_count();
      if (hn < options.min_host_nodes) continue;
      const std::uint64_t assignments = saturating_pow(D, static_cast<std::uint32_t>(hn));
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        std::vector<SweepRow> rows(assignments);
        std::exception_ptr failure;
        auto one = [&](std::uint64_t index) {
          StConnInstance inst{host.graph, host.s, host.t, D, std::vector<std::uint32_t>(hn), pairs[pi].first,
                              pairs[pi].second, false, 0};
          std::string code(hn, '0');
          std::uint64_t rest = index;
          for (std::size_t u = hn; u-- > 0;) {
            inst.h[u] = static_cast<std::uint32_t>(rest % D) + 1;
            code[u] = static_cast<char>('0' + inst.h[u]);
            rest /= D;
          }
          auto& row = rows[index];
          row.host = host.name;
          row.D = D;
          row.pair = pi;
          row.h_assignment = std::move(code);
          row.predicted = classify_case(inst);
          row.structural = structural_case(inst, build_stconn_simulation(inst));
        };
        if (options.exec == Exec::serial) {
          for (std::uint64_t i = 0; i < assignments; ++i) one(i);
        } else {
#pragma omp parallel for schedule(dynamic, 64)
          for (std::int64_t i = 0; i < static_cast<std::int64_t>(assignments); ++i) {
            try {
              one(static_cast<std::uint64_t>(i));
            } catch (...) {
#pragma omp critical
              if (!failure) failure = std::current_exception();
            }
          }
          if (failure) std::rethrow_exception(failure);
        }
        for (auto& row : rows) {
          ++summary.cases;
          summary.agreements += row.agree();
          summary.case1 += row.predicted == StCase::case1;
          if (options.keep_rows) summary.rows.push_back(std::move(row));
        }
      }
    }
  }
  return summary;
}

std::string sweep_csv(const SweepSummary& summary) {
  std::ostringstream os;
  os << "h_assignment,case_predicted,case_structural,agree\n";
  for (const auto& r : summary.rows)
    os << r.host << ":D" << r.D << ":pair" << r.pair << ":h" << r.h_assignment << ',' << to_string(r.predicted) << ','
       << (r.structural ? to_string(*r.structural) : "none") << ',' << (r.agree() ? "true" : "false") << '\n';
  return os.str();
}

// ---- Component stability ----

const char* to_string(PerturbationKind k) {
  switch (k) {
    case PerturbationKind::rename:
      return "rename";
    case PerturbationKind::redistribute:
      return "redistribute";
    case PerturbationKind::replace_components:
      return "replace_components";
  }
  return "?";
}

namespace {

struct Perturbed {
  LegalGraph graph;
  RunOptions options;
  std::vector<NodeIndex> map;  // base node -> perturbed node, for the preserved component
};

Perturbed rename_nodes(const LegalGraph& g, Rng& rng) {
  std::vector<std::uint64_t> names;
  for (const auto& r : g.nodes()) names.push_back(r.name);
  rng.shuffle(names);
  std::vector<NodeRecord> records(g.nodes().begin(), g.nodes().end());
  for (std::size_t i = 0; i < records.size(); ++i) records[i].name = names[i];
  Perturbed p{g.with_records(records), {}, {}};
  p.map.resize(g.node_count());
  std::iota(p.map.begin(), p.map.end(), 0);
  return p;
}

Perturbed redistribute(const LegalGraph& g, Rng& rng) {
  Perturbed p{g, {}, {}};
  p.options.exec = rng.coin() ? Exec::serial : Exec::parallel;
  p.options.schedule_seed = rng.next();
  p.options.placement = {PlacementKind::packed, 1 + rng.below(3), rng.next()};
  p.map.resize(g.node_count());
  std::iota(p.map.begin(), p.map.end(), 0);
  return p;
}

// Keeps component `keep`, replaces every other component by an equal-size one with fresh IDs.
std::optional<Perturbed> replace_components(const LegalGraph& g, const std::vector<std::uint32_t>& comp,
                                            std::uint32_t keep, Rng& rng) {
  const NodeIndex n = g.node_count();
  const std::uint32_t count = n ? *std::max_element(comp.begin(), comp.end()) + 1 : 0;
  if (count < 2) return std::nullopt;
  std::vector<NodeRecord> records;
  std::vector<Edge> edges;
  Perturbed p;
  p.map.assign(n, kUnreached);
  std::uint64_t max_name = 0;
  for (NodeIndex v = 0; v < n; ++v)
    if (comp[v] == keep) max_name = std::max(max_name, g.node(v).name);
  std::uint64_t fresh_name = max_name + 1;
  std::vector<NodeIndex> kept;
  for (NodeIndex v = 0; v < n; ++v)
    if (comp[v] == keep) {
      p.map[v] = static_cast<NodeIndex>(records.size());
      kept.push_back(v);
      records.push_back(g.node(v));
    }
  for (const Edge& e : g.edges())
    if (comp[e.u] == keep) edges.push_back({p.map[e.u], p.map[e.v]});
  for (std::uint32_t c = 0; c < count; ++c) {
    if (c == keep) continue;
    std::vector<NodeIndex> members;
    for (NodeIndex v = 0; v < n; ++v)
      if (comp[v] == c) members.push_back(v);
    const std::size_t k = members.size();
    LegalGraph part = induced_subgraph(g, members).graph;
    if (k >= 3 && rng.coin()) {
      try {
        part = random_connected(k, rng.below(k), std::max<std::size_t>(g.max_degree(), 2), rng.next());
      } catch (const Error&) {
      }
    }
    std::vector<std::uint64_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    rng.shuffle(ids);
    const auto base = static_cast<NodeIndex>(records.size());
    for (std::size_t i = 0; i < k; ++i) records.push_back({ids[i], fresh_name++});
    for (const Edge& e : part.edges()) edges.push_back({base + e.u, base + e.v});
  }
  p.graph = LegalGraph(std::move(records), std::move(edges), g.explicit_cap());
  if (p.graph.max_degree() != g.max_degree()) return std::nullopt;
  if (!validate_legal(p.graph).ok()) return std::nullopt;
  return p;
}

// First differing element of the preserved component, in base numbering.
std::optional<std::pair<std::uint32_t, std::uint32_t>> divergence(const LegalGraph& g, const Labeling& a,
                                                                  const LegalGraph& pg, const Labeling& b,
                                                                  const std::vector<NodeIndex>& map) {
  if (a.domain == LabelDomain::nodes) {
    for (NodeIndex v = 0; v < g.node_count(); ++v)
      if (map[v] != kUnreached && a.values[v] != b.values[map[v]]) return std::pair(v, map[v]);
    return std::nullopt;
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (map[ed.u] == kUnreached) continue;
    auto pe = pg.edge_between(map[ed.u], map[ed.v]);
    if (pe && a.values[e] != b.values[*pe]) return std::pair(e, *pe);
  }
  return std::nullopt;
}

}  // namespace

StabilityReport test_component_stability(const RegisteredAlgorithm& alg, const LegalGraph& g, const MpcMeta& meta,
                                         const StabilityOptions& options) {
  StabilityReport report;
  Rng rng(options.rng_seed);
  const auto comp = component_labels(g);
  const std::uint32_t components = g.node_count() ? *std::max_element(comp.begin(), comp.end()) + 1 : 0;
  if (components == 0) return report;
  const std::size_t seeds = std::max<std::size_t>(options.seeds, 1);
  std::vector<MpcMeta> metas;
  std::vector<std::optional<Labeling>> base(seeds);
  for (std::size_t i = 0; i < seeds; ++i) {
    MpcMeta m = meta;
    if (i > 0) m.seed = BitString::expand(mix64(i ^ (options.rng_seed << 20)), meta.seed.size());
    metas.push_back(std::move(m));
  }
  for (std::uint64_t t = 0; t < options.budget; ++t) {
    const auto kind = static_cast<PerturbationKind>(t % 3);
    const std::size_t si = (t / 3) % seeds;
    const auto keep = static_cast<std::uint32_t>((t / (3 * seeds)) % components);
    std::optional<Perturbed> p;
    switch (kind) {
      case PerturbationKind::rename:
        p = rename_nodes(g, rng);
        break;
      case PerturbationKind::redistribute:
        p = redistribute(g, rng);
        break;
      case PerturbationKind::replace_components:
        p = replace_components(g, comp, keep, rng);
        break;
    }
    ++report.trials;
    if (!p) continue;
    if (!base[si]) base[si] = alg.run(g, options.cfg, metas[si], {}).labeling;
    MpcMeta pm = make_meta(p->graph, metas[si].seed, metas[si].size_estimate);
    auto out = alg.run(p->graph, options.cfg, pm, p->options).labeling;
    std::vector<NodeIndex> map = p->map;
    if (kind != PerturbationKind::replace_components)
      for (NodeIndex v = 0; v < g.node_count(); ++v)
        if (comp[v] != keep) map[v] = kUnreached;
    if (auto d = divergence(g, *base[si], p->graph, out, map)) {
      report.stable = false;
      report.witness = StabilityWitness{kind,           g,           p->graph, metas[si], RunOptions{}, p->options,
                                        d->first,       d->second,   base[si]->values[d->first],
                                        out.values[d->second]};
      return report;
    }
  }
  return report;
}

bool replay_witness(const RegisteredAlgorithm& alg, const StabilityWitness& w, const MpcConfig& cfg) {
  auto a = alg.run(w.base, cfg, w.meta, w.base_options).labeling;
  auto b = alg.run(w.perturbed, cfg, make_meta(w.perturbed, w.meta.seed, w.meta.size_estimate), w.perturbed_options).labeling;
  return a.values[w.node] == w.base_label && b.values[w.perturbed_node] == w.perturbed_label &&
         w.base_label != w.perturbed_label;
}

// ---- Sensitivity ----

LegalGraph embed_in_context(const CenteredGraph& g, std::size_t n_ctx, std::size_t delta_ctx, std::uint64_t id_base) {
  const LegalGraph& base = g.graph;
  if (delta_ctx < base.max_degree()) throw Error("context degree below the graph's maximum degree");
  const bool star = delta_ctx > base.max_degree();
  const std::size_t need = base.node_count() + (star ? delta_ctx + 1 : 0);
  if (n_ctx < need) throw Error("context size " + std::to_string(n_ctx) + " below the " + std::to_string(need) + " nodes needed");
  std::vector<NodeRecord> records(base.nodes().begin(), base.nodes().end());
  std::vector<Edge> edges(base.edges().begin(), base.edges().end());
  std::uint64_t name = base.node_count() ? base.max_name() + 1 : 0;
  std::uint64_t id = id_base;
  if (star) {
    const auto hub = static_cast<NodeIndex>(records.size());
    records.push_back({id++, name++});
    for (std::size_t i = 0; i < delta_ctx; ++i) {
      edges.push_back({hub, static_cast<NodeIndex>(records.size())});
      records.push_back({id++, name++});
    }
  }
  while (records.size() < n_ctx) records.push_back({id++, name++});
  const std::uint64_t cap = std::max<std::uint64_t>({default_id_cap(n_ctx), id + 1, name + 1});
  return LegalGraph(std::move(records), std::move(edges), cap);
}

SensitivityEstimate estimate_sensitivity(const RegisteredAlgorithm& alg, const CenteredGraph& a, const CenteredGraph& b,
                                         std::uint32_t D, std::size_t n_ctx, std::size_t delta_ctx,
                                         const SensitivitySeeds& seeds, const MpcConfig& cfg) {
  if (!d_radius_identical(a, b, D)) throw Error("precondition violated: graphs are not D-radius identical");
  std::uint64_t id_base = 0;
  for (const auto* g : {&a.graph, &b.graph})
    if (g->node_count()) id_base = std::max(id_base, g->max_id() + 1);
  const LegalGraph ea = embed_in_context(a, n_ctx, delta_ctx, id_base);
  const LegalGraph eb = embed_in_context(b, n_ctx, delta_ctx, id_base);
  auto center_output = [&](const LegalGraph& g, NodeIndex c, const Labeling& l) {
    if (l.domain == LabelDomain::nodes) return std::vector<std::pair<std::uint64_t, Label>>{{0, l.values[c]}};
    std::vector<std::pair<std::uint64_t, Label>> out;
    auto nb = g.neighbors(c);
    auto inc = g.incident_edges(c);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      out.push_back({g.node(nb[i]).id, l.values[inc[i]]});
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  SensitivityEstimate est;
  est.mode = seeds.samples ? SensitivityMode::monte_carlo : SensitivityMode::exact;
  Rng rng(seeds.sample_seed);
  const std::uint64_t total = seeds.samples ? *seeds.samples : seeds.space.size();
  for (std::uint64_t i = 0; i < total; ++i) {
    const std::uint64_t index = seeds.samples ? rng.below(seeds.space.size()) : i;
    const BitString s = seeds.space.seed(index);
    auto la = alg.run(ea, cfg, make_meta(ea, s), {}).labeling;
    auto lb = alg.run(eb, cfg, make_meta(eb, s), {}).labeling;
    ++est.trials;
    est.differing += center_output(ea, a.center, la) != center_output(eb, b.center, lb);
  }
  est.fraction = est.trials ? Rational(est.differing, est.trials) : Rational(0);
  return est;
}

}  // namespace mpclab
