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

#ifndef MPCLAB_PROGRAMS_HPP
#define MPCLAB_PROGRAMS_HPP

#include <functional>
#include <map>
#include <vector>

#include "mpclab/luby.hpp"
#include "mpclab/mpc.hpp"

namespace mpclab {

// Every node outputs `value` without communicating.
struct ConstantLabel {
  Label value = 0;
  struct State {};
  struct Message {};
  State init(const ElementView&) const { return {}; }
  void step(StepContext<Message>& ctx, State&) const;
  std::uint64_t state_words(const State&) const { return 0; }
  std::uint64_t message_words(const Message&) const { return 0; }
};

// Ships every node and edge to node 0; the canonical space violator.
struct GatherAll {
  struct Message {
    bool is_edge = false;
  };
  struct State {
    std::uint64_t words = 0;
  };
  State init(const ElementView& v) const { return {v.is_node ? 1u : 2u}; }
  void step(StepContext<Message>& ctx, State& s) const;
  std::uint64_t state_words(const State& s) const { return s.words; }
  std::uint64_t message_words(const Message& m) const { return m.is_edge ? 2 : 1; }
};

// Ball collection by graph exponentiation: knowledge radius 1, 2, 4, ... until every edge
// touching the r-ball is known. Senders trim what they forward to what the receiver can use.
struct BallCollector {
  std::uint32_t radius = 1;
  // Output label from the collected ball; default is the ball's node count.
  std::function<Label(const CenteredGraph&, const MpcMeta&)> finish;

  struct Message {
    std::vector<Edge> edges;
    std::vector<std::pair<NodeIndex, NodeRecord>> nodes;
  };
  struct State {
    NodeIndex self = 0;
    bool is_node = true;
    std::uint32_t know = 0;
    bool done = false;
    std::vector<std::pair<NodeIndex, NodeRecord>> nodes;  // sorted by index
    std::vector<Edge> edges;                              // sorted
  };
  State init(const ElementView& v) const;
  void step(StepContext<Message>& ctx, State& s) const;
  std::uint64_t state_words(const State& s) const { return s.is_node ? s.nodes.size() + 2 * s.edges.size() : 2; }
  std::uint64_t message_words(const Message& m) const { return m.nodes.size() + 2 * m.edges.size(); }

  // The r-ball held by a finished node state.
  CenteredGraph ball(const State& s) const;
};

struct BallTable {
  std::vector<CenteredGraph> balls;
  RoundTrace trace;
};

BallTable collect_balls(const LegalGraph& g, std::uint32_t radius, const MpcConfig& cfg, const MpcMeta& meta,
                        const RunOptions& options = {});

// One randomized Luby step; priorities from seed bits [offset, offset + kLubySeedBits).
struct LubyProgram {
  std::size_t seed_offset = 0;
  struct Message {
    NodeRecord neighbor;
  };
  struct State {};
  State init(const ElementView&) const { return {}; }
  void step(StepContext<Message>& ctx, State& s) const;
  std::uint64_t state_words(const State&) const { return 1; }
  std::uint64_t message_words(const Message&) const { return 1; }
};

// `reps` Luby steps on disjoint seed slices; an all-reduce of the branch sizes picks the
// largest (ties: lowest branch). The choice depends on every component.
struct AmplifiedLubyProgram {
  std::size_t reps = 16;
  struct Message {
    NodeRecord neighbor;
  };
  struct State {
    std::vector<bool> joins;
  };
  State init(const ElementView&) const { return {}; }
  void step(StepContext<Message>& ctx, State& s) const;
  std::uint64_t state_words(const State& s) const { return 1 + (s.joins.size() + 63) / 64; }
  std::uint64_t message_words(const Message&) const { return 1; }
};

// Deterministic Luby step: the pairwise seed is fixed digit by digit, each digit decided by an
// all-reduce of the nodes' exact conditional contributions to -|IS|.
struct DeterministicLubyProgram {
  struct Message {
    NodeRecord neighbor;
  };
  struct State {
    std::vector<std::uint64_t> neighbor_ids;
    std::uint64_t prime = 0;
    std::uint32_t phase = 0;  // coefficient being fixed
    std::vector<std::uint64_t> fixed;
    std::optional<DigitFixer> fixer;
  };
  State init(const ElementView&) const { return {}; }
  void step(StepContext<Message>& ctx, State& s) const;
  std::uint64_t state_words(const State& s) const { return 4 + s.neighbor_ids.size(); }
  std::uint64_t message_words(const Message&) const { return 1; }
};

}  // namespace mpclab

#endif  // MPCLAB_PROGRAMS_HPP
