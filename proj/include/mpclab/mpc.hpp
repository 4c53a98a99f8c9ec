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

#ifndef MPCLAB_MPC_HPP
#define MPCLAB_MPC_HPP

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpclab/bitstring.hpp"
#include "mpclab/graph.hpp"
#include "mpclab/problems.hpp"

namespace mpclab {

struct MpcConfig {
  double delta = 0.5;
  std::uint64_t space_constant = 8;
  std::optional<std::uint64_t> machine_cap;  // default n^2 + n + 1
  std::optional<std::uint32_t> round_cap;    // default 64 * (1 + ceil(log2 n))

  void validate() const;
  // ceil(c * max(n,1)^delta) words.
  std::uint64_t budget(std::size_t n) const;
  std::uint64_t machines_allowed(std::size_t n) const;
  std::uint32_t rounds_allowed(std::size_t n) const;
};

inline constexpr std::size_t kDefaultSeedBits = 1u << 14;

struct MpcMeta {
  std::size_t n = 0;
  std::size_t max_degree = 0;
  std::uint64_t size_estimate = 0;
  BitString seed;
};

MpcMeta make_meta(const LegalGraph& g, BitString seed, std::optional<std::uint64_t> size_estimate = std::nullopt);

class MpcError : public Error {
 public:
  using Error::Error;
};

class SpaceExceeded : public MpcError {
 public:
  SpaceExceeded(std::uint32_t machine, std::uint32_t round, std::uint64_t words, std::uint64_t budget)
      : MpcError("space exceeded on machine " + std::to_string(machine) + " in round " + std::to_string(round) +
                 ": " + std::to_string(words) + " words > budget " + std::to_string(budget)),
        machine(machine), round(round), words(words), budget(budget) {}
  std::uint32_t machine, round;
  std::uint64_t words, budget;
};

class NonTermination : public MpcError {
 public:
  explicit NonTermination(std::uint32_t cap)
      : MpcError("no termination within " + std::to_string(cap) + " rounds"), cap(cap) {}
  std::uint32_t cap;
};

class MissingOutput : public MpcError {
 public:
  explicit MissingOutput(NodeIndex node)
      : MpcError("node " + std::to_string(node) + " produced no output"), node(node) {}
  NodeIndex node;
};

class MachineCapExceeded : public MpcError {
 public:
  using MpcError::MpcError;
};

enum class PlacementKind { canonical, packed };

// Packed placement deals elements, in an order shuffled by `shuffle_seed`, onto machines
// holding `per_machine` elements each.
struct Placement {
  PlacementKind kind = PlacementKind::canonical;
  std::size_t per_machine = 1;
  std::uint64_t shuffle_seed = 0;
};

// Element i < n is node i; element n + e is edge e.
struct MachineAssignment {
  std::vector<std::uint32_t> machine_of;
  std::uint32_t machine_count = 0;
};

MachineAssignment distribute_input(const LegalGraph& g, const MpcConfig& cfg, const Placement& placement = {});

struct RoundTrace {
  std::uint32_t rounds = 0;
  std::vector<std::uint64_t> peak_words;      // one entry per executed step or reduce phase
  std::vector<std::uint64_t> message_counts;  // aligned with peak_words
  std::uint64_t budget = 0;
};

struct TraceSummary {
  std::uint32_t rounds = 0;
  std::uint64_t max_peak_words = 0;
  std::uint64_t budget = 0;
  double utilization = 0;
};

TraceSummary summarize(const RoundTrace& trace);

// Appends the rounds of one all-reduce of `vector_words` words over `machines` machines:
// a tree of fan-in floor(budget / vector_words), up and back down.
std::uint32_t charge_all_reduce(RoundTrace& trace, std::uint64_t machines, std::uint64_t vector_words,
                                std::uint32_t round);

// Sequential composition of phases.
void append_trace(RoundTrace& into, const RoundTrace& phase);

struct ElementView {
  bool is_node = true;
  std::uint32_t element = 0;
  NodeIndex node = 0;  // valid for node elements
  EdgeIndex edge = 0;  // valid for edge elements
  NodeRecord record;   // node elements
  Edge endpoints;      // edge elements
  NodeRecord endpoint_records[2];
};

template <class Msg>
struct Envelope {
  std::uint32_t from = 0;
  std::uint32_t seq = 0;
  Msg body;
};

enum class ReduceOp { sum, max };

template <class Msg>
struct StepContext {
  const ElementView& self;
  const MpcMeta& meta;
  std::uint32_t round;
  std::size_t node_count;
  std::span<const Envelope<Msg>> inbox;
  std::span<const std::int64_t> reduced;  // result of the previous round's all-reduce

  std::vector<std::pair<std::uint32_t, Msg>> outbox;
  std::optional<Label> out;
  std::optional<std::vector<std::int64_t>> contribution;
  ReduceOp op = ReduceOp::sum;
  bool halted = false;

  std::uint32_t node_element(NodeIndex v) const { return v; }
  std::uint32_t edge_element(EdgeIndex e) const { return static_cast<std::uint32_t>(node_count + e); }
  void send(std::uint32_t to, Msg m) { outbox.emplace_back(to, std::move(m)); }
  void output(Label l) { out = l; }
  void contribute(std::vector<std::int64_t> v, ReduceOp o = ReduceOp::sum) {
    contribution = std::move(v);
    op = o;
  }
  void halt() { halted = true; }
};

enum class Stability { claimed_stable, claimed_unstable, unknown };

template <class P>
concept MpcProgram = requires(const P& p, typename P::State& s, const typename P::State& cs,
                              const typename P::Message& m, const ElementView& v,
                              StepContext<typename P::Message>& ctx) {
  { p.init(v) } -> std::same_as<typename P::State>;
  p.step(ctx, s);
  { p.state_words(cs) } -> std::convertible_to<std::uint64_t>;
  { p.message_words(m) } -> std::convertible_to<std::uint64_t>;
};

struct RunOptions {
  Exec exec = Exec::parallel;
  std::optional<std::uint64_t> schedule_seed;  // serial execution in a shuffled element order
  Placement placement;
  bool check_legal = true;
};

template <class State>
struct RunResult {
  Labeling labeling;
  RoundTrace trace;
  std::vector<State> states;
  MachineAssignment assignment;
};

namespace detail {
std::vector<ElementView> element_views(const LegalGraph& g);
void require_legal(const LegalGraph& g);
}  // namespace detail

template <MpcProgram P>
RunResult<typename P::State> run(const P& program, const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                                 const RunOptions& options = {}) {
  using State = typename P::State;
  using Msg = typename P::Message;
  cfg.validate();
  if (options.check_legal) detail::require_legal(g);
  if (meta.n != g.node_count()) throw MpcError("meta.n differs from the graph's node count");

  const std::size_t n = g.node_count();
  const auto views = detail::element_views(g);
  const std::size_t count = views.size();
  RunResult<State> result;
  result.assignment = distribute_input(g, cfg, options.placement);
  const auto& machine_of = result.assignment.machine_of;
  const std::uint64_t budget = cfg.budget(n);
  const std::uint32_t cap = cfg.rounds_allowed(n);
  result.trace.budget = budget;
  result.labeling = Labeling::nodes(n);
  std::vector<bool> has_output(n, false);
  if (count == 0) return result;

  std::vector<State> states;
  states.reserve(count);
  for (const auto& v : views) states.push_back(program.init(v));
  std::vector<std::vector<Envelope<Msg>>> inbox(count);
  std::vector<bool> halted(count, false);
  std::vector<std::int64_t> reduced;
  bool fresh_reduce = false;
  std::uint32_t last_comm_step = 0;
  bool any_comm = false;
  std::uint32_t reduce_rounds = 0;

  struct Slot {
    std::vector<std::pair<std::uint32_t, Msg>> outbox;
    std::optional<Label> out;
    std::optional<std::vector<std::int64_t>> contribution;
    ReduceOp op = ReduceOp::sum;
    bool halted = false;
    std::exception_ptr error;
  };
  std::vector<Slot> slots(count);

  for (std::uint32_t round = 0;; ++round) {
    if (round >= cap) throw NonTermination(cap);
    std::vector<std::uint32_t> active;
    for (std::uint32_t e = 0; e < count; ++e) {
      if (!halted[e] || !inbox[e].empty() || fresh_reduce) active.push_back(e);
    }
    if (active.empty()) break;
    for (auto e : active) slots[e] = Slot{};

    auto step_one = [&](std::uint32_t e) {
      StepContext<Msg> ctx{views[e], meta, round, n, inbox[e], reduced, {}, {}, {}, ReduceOp::sum, false};
      try {
        program.step(ctx, states[e]);
      } catch (...) {
        slots[e].error = std::current_exception();
        return;
      }
      slots[e].outbox = std::move(ctx.outbox);
      slots[e].out = ctx.out;
      slots[e].contribution = std::move(ctx.contribution);
      slots[e].op = ctx.op;
      slots[e].halted = ctx.halted;
    };
    if (options.exec == Exec::parallel && !options.schedule_seed) {
#pragma omp parallel for schedule(dynamic, 16)
      for (std::size_t i = 0; i < active.size(); ++i) step_one(active[i]);
    } else {
      std::vector<std::uint32_t> order = active;
      if (options.schedule_seed) {
        Rng rng(*options.schedule_seed + round);
        rng.shuffle(order);
      }
      for (auto e : order) step_one(e);
    }
    for (auto e : active) {
      if (slots[e].error) std::rethrow_exception(slots[e].error);
    }

    // Accounting: state at end of round plus max(inbox, outbox), per machine.
    std::vector<std::uint64_t> held(result.assignment.machine_count, 0), in(held.size(), 0), out(held.size(), 0);
    std::uint64_t messages = 0;
    for (std::uint32_t e = 0; e < count; ++e) {
      const auto m = machine_of[e];
      held[m] += program.state_words(states[e]);
      for (const auto& env : inbox[e]) in[m] += program.message_words(env.body);
    }
    for (auto e : active) {
      for (const auto& [to, msg] : slots[e].outbox) {
        if (to >= count) throw MpcError("message to a nonexistent element");
        out[machine_of[e]] += program.message_words(msg);
        ++messages;
      }
    }
    std::uint64_t peak = 0;
    for (std::uint32_t m = 0; m < held.size(); ++m) {
      std::uint64_t w = held[m] + std::max(in[m], out[m]);
      if (w > budget) throw SpaceExceeded(m, round, w, budget);
      peak = std::max(peak, w);
    }
    result.trace.peak_words.push_back(peak);
    result.trace.message_counts.push_back(messages);

    // Delivery in (sender element, sequence) order.
    for (auto e : active) inbox[e].clear();
    bool contributed = false;
    std::optional<ReduceOp> op;
    std::vector<std::int64_t> acc;
    for (auto e : active) {
      auto& s = slots[e];
      std::uint32_t seq = 0;
      for (auto& [to, msg] : s.outbox) inbox[to].push_back(Envelope<Msg>{e, seq++, std::move(msg)});
      if (s.out) {
        if (!views[e].is_node) throw MpcError("edge element emitted a node output");
        result.labeling.values[views[e].node] = *s.out;
        has_output[views[e].node] = true;
      }
      if (s.contribution) {
        if (op && *op != s.op) throw MpcError("mixed reduce operations in one round");
        op = s.op;
        contributed = true;
        if (acc.size() < s.contribution->size()) acc.resize(s.contribution->size(), 0);
        for (std::size_t i = 0; i < s.contribution->size(); ++i) {
          acc[i] = *op == ReduceOp::sum ? acc[i] + (*s.contribution)[i] : std::max(acc[i], (*s.contribution)[i]);
        }
      }
      halted[e] = s.halted;
    }
    if (messages || contributed) {
      last_comm_step = round;
      any_comm = true;
    }
    fresh_reduce = contributed;
    if (contributed) {
      reduced = std::move(acc);
      reduce_rounds += charge_all_reduce(result.trace, result.assignment.machine_count,
                                         std::max<std::uint64_t>(reduced.size(), 1), round);
    }
  }

  for (NodeIndex v = 0; v < n; ++v) {
    if (!has_output[v]) throw MissingOutput(v);
  }
  result.trace.rounds = (any_comm ? last_comm_step + 1 : 1) + reduce_rounds;
  result.states = std::move(states);
  return result;
}

}  // namespace mpclab

#endif  // MPCLAB_MPC_HPP
