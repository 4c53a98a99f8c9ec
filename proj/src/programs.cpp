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

#include "mpclab/programs.hpp"

#include <algorithm>

namespace mpclab {

void ConstantLabel::step(StepContext<Message>& ctx, State&) const {
  if (ctx.self.is_node) ctx.output(value);
  ctx.halt();
}

void GatherAll::step(StepContext<Message>& ctx, State& s) const {
  const bool hub = ctx.self.is_node && ctx.self.node == 0;
  if (ctx.round == 0 && !hub) {
    ctx.send(ctx.node_element(0), Message{!ctx.self.is_node});
    if (ctx.self.is_node) ctx.output(0);
    ctx.halt();
    return;
  }
  for (const auto& env : ctx.inbox) s.words += message_words(env.body);
  if (ctx.round > 0) {
    ctx.output(0);
    ctx.halt();
  }
}

namespace {

template <class T, class Less>
void merge_sorted(std::vector<T>& into, std::vector<T> add, Less less) {
  std::sort(add.begin(), add.end(), less);
  std::vector<T> out;
  out.reserve(into.size() + add.size());
  std::merge(into.begin(), into.end(), add.begin(), add.end(), std::back_inserter(out), less);
  auto same = [&](const T& a, const T& b) { return !less(a, b) && !less(b, a); };
  out.erase(std::unique(out.begin(), out.end(), same), out.end());
  into = std::move(out);
}

bool node_less(const std::pair<NodeIndex, NodeRecord>& a, const std::pair<NodeIndex, NodeRecord>& b) {
  return a.first < b.first;
}

// Distances from `self` in the known graph.
std::map<NodeIndex, std::uint32_t> known_distances(NodeIndex self, const std::vector<Edge>& edges) {
  std::map<NodeIndex, std::vector<NodeIndex>> adj;
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::map<NodeIndex, std::uint32_t> dist{{self, 0}};
  std::vector<NodeIndex> queue{self};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    NodeIndex u = queue[h];
    for (NodeIndex w : adj[u]) {
      if (dist.emplace(w, dist[u] + 1).second) queue.push_back(w);
    }
  }
  return dist;
}

}  // namespace

BallCollector::State BallCollector::init(const ElementView& v) const {
  State s;
  s.is_node = v.is_node;
  if (v.is_node) {
    s.self = v.node;
    s.nodes.push_back({v.node, v.record});
  } else {
    s.edges.push_back(v.endpoints);
    s.nodes.push_back({v.endpoints.u, v.endpoint_records[0]});
    s.nodes.push_back({v.endpoints.v, v.endpoint_records[1]});
  }
  return s;
}

void BallCollector::step(StepContext<Message>& ctx, State& s) const {
  if (!s.is_node) {
    if (ctx.round == 0) {
      Message m{s.edges, s.nodes};
      ctx.send(ctx.node_element(s.edges[0].u), m);
      ctx.send(ctx.node_element(s.edges[0].v), std::move(m));
    }
    ctx.halt();
    return;
  }
  if (s.done) {
    ctx.halt();
    return;
  }
  auto finish_now = [&]() {
    s.done = true;
    CenteredGraph b = ball(s);
    ctx.output(finish ? finish(b, ctx.meta) : static_cast<Label>(b.graph.node_count()));
    ctx.halt();
  };
  if (ctx.round == 0) {
    if (radius == 0) finish_now();
    return;
  }
  for (const auto& env : ctx.inbox) {
    merge_sorted(s.edges, env.body.edges, std::less<Edge>());
    merge_sorted(s.nodes, env.body.nodes, node_less);
  }
  s.know = ctx.round == 1 ? 1 : std::min(2 * s.know, radius + 1);
  if (s.know >= radius + 1) {
    finish_now();
    return;
  }
  const std::uint32_t next = std::min(2 * s.know, radius + 1);
  auto dist = known_distances(s.self, s.edges);
  auto record_of = [&](NodeIndex x) {
    auto it = std::lower_bound(s.nodes.begin(), s.nodes.end(), std::make_pair(x, NodeRecord{}), node_less);
    return *it;
  };
  for (const auto& [u, du] : dist) {
    if (du == 0 || du > s.know) continue;
    const std::int64_t limit = std::min<std::int64_t>(s.know - 1, static_cast<std::int64_t>(next) - 1 - du);
    if (limit < 0) continue;
    Message m;
    std::vector<NodeIndex> touched;
    for (const Edge& e : s.edges) {
      auto a = dist.find(e.u), b = dist.find(e.v);
      bool near = (a != dist.end() && a->second <= limit) || (b != dist.end() && b->second <= limit);
      if (!near) continue;
      m.edges.push_back(e);
      touched.push_back(e.u);
      touched.push_back(e.v);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (NodeIndex x : touched) m.nodes.push_back(record_of(x));
    if (!m.edges.empty()) ctx.send(ctx.node_element(u), std::move(m));
  }
}

CenteredGraph BallCollector::ball(const State& s) const {
  auto dist = known_distances(s.self, s.edges);
  std::vector<NodeIndex> keep;
  for (const auto& [x, d] : dist) {
    if (d <= radius) keep.push_back(x);
  }
  std::vector<NodeRecord> records;
  for (NodeIndex x : keep) {
    auto it = std::lower_bound(s.nodes.begin(), s.nodes.end(), std::make_pair(x, NodeRecord{}), node_less);
    records.push_back(it->second);
  }
  auto local = [&](NodeIndex x) {
    return static_cast<NodeIndex>(std::lower_bound(keep.begin(), keep.end(), x) - keep.begin());
  };
  std::vector<Edge> edges;
  for (const Edge& e : s.edges) {
    if (std::binary_search(keep.begin(), keep.end(), e.u) && std::binary_search(keep.begin(), keep.end(), e.v)) {
      edges.push_back({local(e.u), local(e.v)});
    }
  }
  CenteredGraph out;
  out.graph = LegalGraph(std::move(records), std::move(edges), std::numeric_limits<std::uint64_t>::max());
  out.center = local(s.self);
  out.origin = std::move(keep);
  return out;
}

BallTable collect_balls(const LegalGraph& g, std::uint32_t radius, const MpcConfig& cfg, const MpcMeta& meta,
                        const RunOptions& options) {
  BallCollector prog{radius, {}};
  auto r = run(prog, g, cfg, meta, options);
  BallTable t;
  t.trace = r.trace;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    CenteredGraph b = prog.ball(r.states[v]);
    b.graph = LegalGraph(std::vector<NodeRecord>(b.graph.nodes().begin(), b.graph.nodes().end()),
                         std::vector<Edge>(b.graph.edges().begin(), b.graph.edges().end()), g.id_cap());
    t.balls.push_back(std::move(b));
  }
  return t;
}

namespace {

// Edge elements introduce the endpoints to each other in round 0.
template <class Msg>
bool introduce(StepContext<Msg>& ctx) {
  if (ctx.self.is_node) return false;
  if (ctx.round == 0) {
    ctx.send(ctx.node_element(ctx.self.endpoints.u), Msg{ctx.self.endpoint_records[1]});
    ctx.send(ctx.node_element(ctx.self.endpoints.v), Msg{ctx.self.endpoint_records[0]});
  }
  ctx.halt();
  return true;
}

template <class Msg>
bool luby_joins(const StepContext<Msg>& ctx, const LubyHash& h) {
  const std::uint64_t my = h(ctx.self.record.id);
  for (const auto& env : ctx.inbox) {
    if (!precedes(my, ctx.self.record.id, h(env.body.neighbor.id), env.body.neighbor.id)) return false;
  }
  return true;
}

}  // namespace

void LubyProgram::step(StepContext<Message>& ctx, State&) const {
  if (introduce(ctx)) return;
  if (ctx.round == 0) return;
  ctx.output(luby_joins(ctx, LubyHash::from_seed(ctx.meta.seed, seed_offset)) ? kIn : kOut);
  ctx.halt();
}

void AmplifiedLubyProgram::step(StepContext<Message>& ctx, State& s) const {
  if (introduce(ctx)) return;
  if (ctx.round == 0) return;
  if (ctx.round == 1) {
    std::vector<std::int64_t> sizes(reps, 0);
    s.joins.assign(reps, false);
    for (std::size_t b = 0; b < reps; ++b) {
      s.joins[b] = luby_joins(ctx, LubyHash::from_seed(ctx.meta.seed, b * kLubySeedBits));
      sizes[b] = s.joins[b] ? 1 : 0;
    }
    ctx.contribute(std::move(sizes));
    return;
  }
  std::size_t best = 0;
  for (std::size_t b = 1; b < reps; ++b) {
    if (ctx.reduced[b] > ctx.reduced[best]) best = b;
  }
  ctx.output(s.joins[best] ? kIn : kOut);
  ctx.halt();
}

namespace {

std::vector<Contender> contenders(std::uint64_t p, std::uint64_t a1, std::span<const std::uint64_t> ids) {
  std::vector<Contender> c;
  c.reserve(ids.size());
  for (auto id : ids) c.push_back({mulmod(a1, id, p), id});
  return c;
}

}  // namespace

void DeterministicLubyProgram::step(StepContext<Message>& ctx, State& s) const {
  if (!ctx.self.is_node) {
    introduce(ctx);
    return;
  }
  const std::uint64_t id = ctx.self.record.id;
  if (ctx.round == 0) {
    ctx.contribute({static_cast<std::int64_t>(id)}, ReduceOp::max);
    return;
  }
  if (ctx.round == 1) {
    for (const auto& env : ctx.inbox) s.neighbor_ids.push_back(env.body.neighbor.id);
    s.prime = luby_family(ctx.meta.n, ctx.meta.max_degree, static_cast<std::uint64_t>(ctx.reduced[0])).prime;
    s.fixer.emplace(s.prime);
  } else {
    s.fixer->decide(ctx.reduced[0], ctx.reduced[1]);
    if (s.fixer->done()) {
      s.fixed.push_back(s.fixer->value());
      if (s.fixed.size() == 2) {
        const std::uint64_t p = s.prime, a0 = s.fixed[0], a1 = s.fixed[1];
        auto w = join_window(p, mulmod(a1, id, p), id, contenders(p, a1, s.neighbor_ids));
        ctx.output(window_overlap(p, w, a0, a0 + 1) ? kIn : kOut);
        ctx.halt();
        return;
      }
      s.fixer.emplace(s.prime);
    }
  }
  const std::uint64_t p = s.prime;
  std::vector<std::int64_t> totals(2, 0);
  const auto [lo0, hi0] = s.fixer->candidate(0);
  const auto [lo1, hi1] = s.fixer->candidate(1);
  std::vector<Contender> c(s.neighbor_ids.size());
  const bool narrow = p < (1ULL << 32);
  auto mul = [&](std::uint64_t a, std::uint64_t b) { return narrow ? a * b % p : mulmod(a, b, p); };
  auto window = [&](std::uint64_t a1) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = {mul(a1, s.neighbor_ids[i]), s.neighbor_ids[i]};
    return join_window(p, mul(a1, id), id, c);
  };
  if (s.fixed.empty()) {
    // Offsets a1 * id advance by id per step of a1.
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = {0, s.neighbor_ids[i]};
    std::uint64_t self = 0;
    const std::uint64_t step = id % p;
    for (std::uint64_t a1 = 0; a1 < p; ++a1) {
      const auto w = join_window(p, self, id, c);
      for (auto& u : c)
        if ((u.offset += u.id % p) >= p) u.offset -= p;
      if ((self += step) >= p) self -= p;
      totals[0] -= static_cast<std::int64_t>(window_overlap(p, w, lo0, hi0));
      totals[1] -= static_cast<std::int64_t>(window_overlap(p, w, lo1, hi1));
    }
  } else {
    const std::uint64_t a0 = s.fixed[0];
    for (std::uint64_t a1 = lo0; a1 < std::min(hi0, p); ++a1) totals[0] -= window_overlap(p, window(a1), a0, a0 + 1);
    for (std::uint64_t a1 = lo1; a1 < std::min(hi1, p); ++a1) totals[1] -= window_overlap(p, window(a1), a0, a0 + 1);
  }
  ctx.contribute(std::move(totals));
}

}  // namespace mpclab
