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

#include "mpclab/mpc.hpp"

#include <cmath>
#include <numeric>

namespace mpclab {

void MpcConfig::validate() const {
  if (!(delta > 0 && delta < 1)) throw MpcError("delta must lie in (0, 1)");
  if (space_constant < 1) throw MpcError("space constant must be at least 1");
}

std::uint64_t MpcConfig::budget(std::size_t n) const {
  long double b = static_cast<long double>(space_constant) *
                  std::pow(static_cast<long double>(std::max<std::size_t>(n, 1)), static_cast<long double>(delta));
  return static_cast<std::uint64_t>(std::ceil(b - 1e-12L));
}

std::uint64_t MpcConfig::machines_allowed(std::size_t n) const {
  return machine_cap ? *machine_cap : saturating_mul(n, n) + n + 1;
}

std::uint32_t MpcConfig::rounds_allowed(std::size_t n) const {
  return round_cap ? *round_cap : 64 * (1 + ceil_log2(std::max<std::size_t>(n, 2)));
}

MpcMeta make_meta(const LegalGraph& g, BitString seed, std::optional<std::uint64_t> size_estimate) {
  MpcMeta m;
  m.n = g.node_count();
  m.max_degree = g.max_degree();
  m.size_estimate = size_estimate.value_or(m.n);
  if (m.size_estimate < m.n) throw MpcError("size estimate below n");
  m.seed = std::move(seed);
  return m;
}

MachineAssignment distribute_input(const LegalGraph& g, const MpcConfig& cfg, const Placement& placement) {
  const std::size_t count = g.node_count() + g.edge_count();
  MachineAssignment a;
  a.machine_of.resize(count);
  if (placement.kind == PlacementKind::canonical || placement.per_machine <= 1) {
    std::iota(a.machine_of.begin(), a.machine_of.end(), 0);
    a.machine_count = static_cast<std::uint32_t>(count);
  } else {
    std::vector<std::uint32_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(placement.shuffle_seed);
    rng.shuffle(order);
    for (std::size_t i = 0; i < count; ++i) a.machine_of[order[i]] = static_cast<std::uint32_t>(i / placement.per_machine);
    a.machine_count = static_cast<std::uint32_t>((count + placement.per_machine - 1) / placement.per_machine);
  }
  if (a.machine_count > cfg.machines_allowed(g.node_count())) {
    throw MachineCapExceeded("needs " + std::to_string(a.machine_count) + " machines, cap is " +
                             std::to_string(cfg.machines_allowed(g.node_count())));
  }
  return a;
}

TraceSummary summarize(const RoundTrace& trace) {
  TraceSummary s;
  s.rounds = trace.rounds;
  s.budget = trace.budget;
  for (auto w : trace.peak_words) s.max_peak_words = std::max(s.max_peak_words, w);
  s.utilization = trace.budget ? static_cast<double>(s.max_peak_words) / static_cast<double>(trace.budget) : 0.0;
  return s;
}

std::uint32_t charge_all_reduce(RoundTrace& trace, std::uint64_t machines, std::uint64_t vector_words,
                                std::uint32_t round) {
  if (machines <= 1) return 0;
  const std::uint64_t fan_in = trace.budget / vector_words;
  if (fan_in < 2) throw SpaceExceeded(0, round, 2 * vector_words, trace.budget);
  std::uint32_t depth = 0;
  for (std::uint64_t reach = 1; reach < machines; reach = saturating_mul(reach, fan_in)) ++depth;
  const std::uint64_t peak = std::min(fan_in, machines) * vector_words;
  for (std::uint32_t i = 0; i < 2 * depth; ++i) {
    trace.peak_words.push_back(peak);
    trace.message_counts.push_back(0);
  }
  return 2 * depth;
}

void append_trace(RoundTrace& into, const RoundTrace& phase) {
  into.rounds += phase.rounds;
  into.peak_words.insert(into.peak_words.end(), phase.peak_words.begin(), phase.peak_words.end());
  into.message_counts.insert(into.message_counts.end(), phase.message_counts.begin(), phase.message_counts.end());
  into.budget = std::max(into.budget, phase.budget);
}

namespace detail {

std::vector<ElementView> element_views(const LegalGraph& g) {
  std::vector<ElementView> views;
  const std::size_t n = g.node_count();
  views.reserve(n + g.edge_count());
  for (NodeIndex v = 0; v < n; ++v) {
    ElementView ev;
    ev.is_node = true;
    ev.element = v;
    ev.node = v;
    ev.record = g.node(v);
    views.push_back(ev);
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    ElementView ev;
    ev.is_node = false;
    ev.element = static_cast<std::uint32_t>(n + e);
    ev.edge = e;
    ev.endpoints = g.edge(e);
    ev.endpoint_records[0] = g.node(g.edge(e).u);
    ev.endpoint_records[1] = g.node(g.edge(e).v);
    views.push_back(ev);
  }
  return views;
}

void require_legal(const LegalGraph& g) {
  auto report = validate_legal(g);
  if (!report.ok()) throw MpcError("input graph is not legal: " + report.violations.front().message);
}

}  // namespace detail

}  // namespace mpclab
