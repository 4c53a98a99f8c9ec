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

#include "mpclab/registry.hpp"

#include <algorithm>
#include <bit>

#include "mpclab/algorithms.hpp"
#include "mpclab/lll.hpp"
#include "mpclab/luby.hpp"
#include "mpclab/programs.hpp"

namespace mpclab {

namespace {

template <class P>
AlgorithmRun run_program(const P& program, const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                         const RunOptions& options) {
  auto r = run(program, g, cfg, meta, options);
  return {std::move(r.labeling), std::move(r.trace)};
}

// Charges `digits` all-reduces of two words, the cost of conditional-expectation seed fixing.
void charge_digits(RoundTrace& trace, const LegalGraph& g, std::uint64_t digits) {
  const std::uint64_t machines = g.node_count() + g.edge_count();
  for (std::uint64_t i = 0; i < digits; ++i) trace.rounds += charge_all_reduce(trace, machines, 2, trace.rounds);
}

AlgorithmRun ball_local(const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta, const RunOptions& options,
                        std::uint32_t radius) {
  BallTable t = collect_balls(g, radius, cfg, meta, options);
  const LubyHash h = LubyHash::from_seed(meta.seed);
  AlgorithmRun out{Labeling::nodes(g.node_count(), kOut), std::move(t.trace)};
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const auto& b = t.balls[v];
    const auto& c = b.graph.node(b.center);
    bool minimal = true;
    for (NodeIndex u = 0; u < b.graph.node_count(); ++u)
      if (u != b.center && !precedes(h(c.id), c.id, h(b.graph.node(u).id), b.graph.node(u).id)) minimal = false;
    if (minimal) out.labeling.values[v] = kIn;
  }
  return out;
}

AlgorithmRun deterministic_is_run(const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                                  const RunOptions& options, std::size_t threshold) {
  if (g.max_degree() <= threshold) return run_program(DeterministicLubyProgram{}, g, cfg, meta, options);
  auto f = sparsify_family(g);
  auto sparse = derand_sparsify(g, threshold, f);
  AlgorithmRun out{Labeling::nodes(g.node_count(), kOut), {}};
  out.trace.budget = cfg.budget(g.node_count());
  // Degrees of the kept set come from one exchange with the neighbours; digits are all-reduces.
  out.trace.rounds = 1;
  out.trace.peak_words.push_back(g.max_degree() + 1);
  out.trace.message_counts.push_back(2 * g.edge_count());
  charge_digits(out.trace, g, 2 * std::bit_width(f.prime - 1));
  const LegalGraph& sub = sparse.subgraph.graph;
  auto inner = run(DeterministicLubyProgram{}, sub, cfg, make_meta(sub, meta.seed), options);
  append_trace(out.trace, inner.trace);
  for (NodeIndex i = 0; i < sub.node_count(); ++i) out.labeling.values[sparse.subgraph.origin[i]] = inner.labeling.values[i];
  return out;
}

}  // namespace

const char* to_string(Stability s) {
  switch (s) {
    case Stability::claimed_stable:
      return "claimed-stable";
    case Stability::claimed_unstable:
      return "claimed-unstable";
    case Stability::unknown:
      return "unknown";
  }
  return "?";
}

std::vector<std::string> algorithm_names() {
  return {"constant",           "ball_local_is",  "randomized_large_is", "amplified_large_is",
          "deterministic_large_is", "extendable_mis", "maximal_matching",    "sinkless_orientation"};
}

RegisteredAlgorithm make_algorithm(std::string_view name, const AlgorithmParams& params) {
  RegisteredAlgorithm a;
  a.name = std::string(name);
  if (name == "constant") {
    a.stability = Stability::claimed_stable;
    a.problem = independent_set_problem();
    a.run = [c = params.constant](const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                                  const RunOptions& o) { return run_program(ConstantLabel{c}, g, cfg, meta, o); };
  } else if (name == "ball_local_is") {
    a.stability = Stability::claimed_stable;
    a.problem = independent_set_problem();
    a.run = [r = params.ball_radius](const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                                     const RunOptions& o) { return ball_local(g, cfg, meta, o, r); };
  } else if (name == "randomized_large_is") {
    a.stability = Stability::claimed_stable;
    a.problem = large_is_problem(2, 2);
    a.run = [](const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta, const RunOptions& o) {
      return run_program(LubyProgram{}, g, cfg, meta, o);
    };
  } else if (name == "amplified_large_is") {
    a.stability = Stability::claimed_unstable;
    a.problem = large_is_problem(2, 2);
    a.run = [reps = params.reps](const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta, const RunOptions& o) {
      return run_program(AmplifiedLubyProgram{reps}, g, cfg, meta, o);
    };
  } else if (name == "deterministic_large_is") {
    a.stability = Stability::claimed_unstable;
    a.problem = large_is_problem(4, 1);
    a.run = [t = params.sparsify_threshold](const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                                            const RunOptions& o) { return deterministic_is_run(g, cfg, meta, o, t); };
  } else if (name == "extendable_mis") {
    a.stability = Stability::claimed_unstable;
    a.problem = mis_problem();
    a.run = [cap = params.iteration_cap](const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                                         const RunOptions& o) {
      ExtendableMisOptions opts;
      opts.iteration_cap = cap;
      opts.run = o;
      auto r = extendable_mis(g, cfg, meta, opts);
      return AlgorithmRun{std::move(r.labeling), std::move(r.trace)};
    };
  } else if (name == "maximal_matching") {
    a.stability = Stability::claimed_unstable;
    a.domain = LabelDomain::edges;
    a.problem = maximal_matching_problem();
    a.run = [cap = params.iteration_cap](const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                                         const RunOptions& o) {
      ExtendableMisOptions opts;
      opts.iteration_cap = cap;
      opts.run = o;
      auto r = maximal_matching(g, cfg, meta, opts);
      return AlgorithmRun{std::move(r.labeling), std::move(r.mis.trace)};
    };
  } else if (name == "sinkless_orientation") {
    a.stability = Stability::claimed_unstable;
    a.domain = LabelDomain::edges;
    a.problem = sinkless_orientation_problem();
    a.run = [](const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta, const RunOptions&) {
      auto o = sinkless_orientation(g, meta.seed.size() >= 64 ? meta.seed.read(0, 64) : 1);
      AlgorithmRun out{std::move(o.labeling), {}};
      out.trace.budget = cfg.budget(g.node_count());
      auto si = sinkless_instance(g);
      if (o.mode == OrientationMode::single_shot) {
        auto f = lll_family(si.lll);
        charge_digits(out.trace, g, static_cast<std::uint64_t>(f.k) * std::bit_width(f.prime - 1));
      }
      out.trace.rounds = std::max<std::uint32_t>(out.trace.rounds, 1);
      return out;
    };
  } else {
    throw Error("unknown algorithm '" + std::string(name) + "'");
  }
  return a;
}

}  // namespace mpclab
