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

#include "mpclab/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "mpclab/luby.hpp"

namespace mpclab {

Labeling membership_labeling(const std::vector<bool>& in) {
  Labeling l = Labeling::nodes(in.size(), kOut);
  for (std::size_t v = 0; v < in.size(); ++v)
    if (in[v]) l.values[v] = kIn;
  return l;
}

std::vector<bool> members(const Labeling& l) {
  std::vector<bool> in(l.values.size());
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = l.values[i] == kIn;
  return in;
}

std::vector<bool> randomized_large_is(const LegalGraph& g, const MpcMeta& meta, std::size_t seed_offset) {
  const LubyHash h = LubyHash::from_seed(meta.seed, seed_offset);
  std::vector<std::uint64_t> chi(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) chi[v] = h(g.node(v).id);
  return luby_join(g, chi);
}

AmplifiedIs amplified_large_is(const LegalGraph& g, const MpcMeta& meta, std::size_t reps) {
  if (reps == 0) throw Error("amplification needs at least one repetition");
  AmplifiedIs out;
  for (std::size_t b = 0; b < reps; ++b) {
    auto joined = randomized_large_is(g, meta, b * kLubySeedBits);
    const auto size = static_cast<std::size_t>(std::count(joined.begin(), joined.end(), true));
    out.sizes.push_back(size);
    if (b == 0 || size > out.sizes[out.branch]) {
      out.branch = b;
      out.joined = std::move(joined);
    }
  }
  return out;
}

KWiseFamily sparsify_family(const LegalGraph& g) {
  const std::uint64_t need =
      std::max<std::uint64_t>({g.node_count(), g.node_count() ? g.max_id() + 1 : 0, 2});
  const std::uint64_t p = next_prime(need);
  return KWiseFamily::make(p, 2, p);
}

DeterministicIs deterministic_large_is(const LegalGraph& g, const LargeIsOptions& options) {
  DeterministicIs out;
  const std::size_t delta = g.max_degree();
  if (delta <= options.sparsify_threshold) {
    auto step = derand_luby_step(g, luby_family(g.node_count(), delta, g.node_count() ? g.max_id() : 0),
                                 options.exec);
    out.joined = std::move(step.joined);
    out.luby_seed = std::move(step.seed);
    return out;
  }
  auto sparse = derand_sparsify(g, options.sparsify_threshold, sparsify_family(g), options.exec);
  const LegalGraph& sub = sparse.subgraph.graph;
  auto step = derand_luby_step(sub, luby_family(sub.node_count(), sub.max_degree(), sub.node_count() ? sub.max_id() : 0),
                               options.exec);
  out.joined.assign(g.node_count(), false);
  for (NodeIndex i = 0; i < sub.node_count(); ++i) out.joined[sparse.subgraph.origin[i]] = step.joined[i];
  out.luby_seed = std::move(step.seed);
  const auto size = static_cast<std::size_t>(std::count(out.joined.begin(), out.joined.end(), true));
  if (size > 0) out.bound_constant = Rational(g.node_count(), size * delta);
  out.sparsified = std::move(sparse);
  return out;
}

std::vector<std::uint32_t> reduce_id_space(const LegalGraph& g, std::span<const CenteredGraph> balls) {
  const NodeIndex n = g.node_count();
  if (balls.size() != n) throw Error("one ball per node expected");
  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
    return std::pair(g.node(a).id, a) < std::pair(g.node(b).id, b);
  });
  std::vector<std::uint32_t> color(n, kUnreached);
  std::vector<char> used;
  for (NodeIndex v : order) {
    used.assign(balls[v].origin.size() + 1, 0);
    for (NodeIndex u : balls[v].origin)
      if (u != v && color[u] != kUnreached && color[u] < used.size()) used[color[u]] = 1;
    std::uint32_t c = 0;
    while (used[c]) ++c;
    color[v] = c;
  }
  return color;
}

std::vector<std::uint32_t> reduce_id_space(const LegalGraph& g, std::uint32_t radius) {
  std::vector<CenteredGraph> balls;
  balls.reserve(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) balls.push_back(radius_ball(g, v, radius));
  return reduce_id_space(g, balls);
}

const char* to_string(Extendability e) {
  switch (e) {
    case Extendability::ok:
      return "ok";
    case Extendability::in_not_independent:
      return "IN nodes not independent";
    case Extendability::out_not_dominated:
      return "OUT node without IN neighbor";
    case Extendability::bottom_next_to_in:
      return "undecided node next to IN";
  }
  return "?";
}

Extendability check_extendable(const LegalGraph& g, const Labeling& partial) {
  if (partial.domain != LabelDomain::nodes || partial.values.size() != g.node_count())
    throw LabelError("partial labeling does not match the graph");
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const Label l = partial.values[v];
    if (l != kIn && l != kOut && l != kBottom) throw LabelError("label outside {IN, OUT, bottom}");
    bool in_neighbor = false;
    for (NodeIndex u : g.neighbors(v)) in_neighbor = in_neighbor || partial.values[u] == kIn;
    if (l == kIn && in_neighbor) return Extendability::in_not_independent;
    if (l == kOut && !in_neighbor) return Extendability::out_not_dominated;
    if (l == kBottom && in_neighbor) return Extendability::bottom_next_to_in;
  }
  return Extendability::ok;
}

ExtendableMisResult extendable_mis(const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                                   const ExtendableMisOptions& options) {
  cfg.validate();
  ExtendableMisResult out;
  out.labeling = Labeling::nodes(g.node_count(), kBottom);
  out.trace.budget = cfg.budget(g.node_count());
  std::vector<NodeIndex> open(g.node_count());
  std::iota(open.begin(), open.end(), 0);
  std::uint32_t iteration = 0;
  while (!open.empty()) {
    if (iteration == options.iteration_cap) throw IterationCapExceeded(options.iteration_cap, open.size());
    ++iteration;
    CenteredGraph residual = induced_subgraph(g, open);
    const LegalGraph& h = residual.graph;

    BallTable balls = collect_balls(h, 2, cfg, make_meta(h, meta.seed), options.run);
    RoundTrace phase = balls.trace;
    auto colors = reduce_id_space(h, balls.balls);
    const std::uint32_t palette = h.node_count() ? *std::max_element(colors.begin(), colors.end()) + 1 : 0;
    const std::uint64_t delta = h.max_degree();
    const std::uint64_t p = next_prime(std::max<std::uint64_t>(
        {saturating_mul(8, delta * delta), palette, options.min_prime, 2}));
    const auto f = KWiseFamily::make(p, 2, p);
    std::vector<std::uint64_t> inputs(colors.begin(), colors.end());
    SeedChoice seed = fix_seed(LubyShiftOracle(h, f, inputs, LubyCost::undecided, options.exec));

    // Every digit is one all-reduce of two conditional totals.
    const std::uint64_t machines = h.node_count() + h.edge_count();
    for (std::uint64_t i = 0; i < 2 * std::bit_width(p - 1); ++i)
      phase.rounds += charge_all_reduce(phase, machines, 2, out.trace.rounds + phase.rounds);

    auto joined = luby_step_with_seed(h, f, seed.coeffs, inputs);
    std::vector<NodeIndex> still_open;
    for (NodeIndex v = 0; v < h.node_count(); ++v) {
      bool near = false;
      for (NodeIndex u : h.neighbors(v)) near = near || joined[u];
      const NodeIndex x = residual.origin[v];
      if (joined[v]) {
        out.labeling.values[x] = kIn;
      } else if (near) {
        out.labeling.values[x] = kOut;
      } else {
        still_open.push_back(x);
      }
    }
    if (Rational(static_cast<long>(still_open.size())) != seed.achieved)
      throw std::logic_error("undecided count differs from the fixed seed's cost");
    if (auto e = check_extendable(g, out.labeling); e != Extendability::ok)
      throw std::logic_error(std::string("extendability violated: ") + to_string(e));
    out.iterations.push_back({h.node_count(), h.max_degree(), palette, p, std::move(seed), still_open.size()});
    if (options.keep_history) out.history.push_back(out.labeling);
    append_trace(out.trace, phase);
    open = std::move(still_open);
  }
  return out;
}

MatchingResult maximal_matching(const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                                const ExtendableMisOptions& options) {
  LegalGraph l = line_graph(g);
  MatchingResult out;
  out.mis = extendable_mis(l, cfg, make_meta(l, meta.seed), options);
  out.labeling = Labeling::edges(g.edge_count(), kOut);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) out.labeling.values[e] = out.mis.labeling.values[e];
  return out;
}

}  // namespace mpclab
