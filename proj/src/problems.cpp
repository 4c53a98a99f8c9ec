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

#include "mpclab/problems.hpp"

#include <algorithm>
#include "json.hpp"

namespace mpclab {

namespace {

bool binary(Label l) { return l == 0 || l == 1; }

void finish(Verdict& v) {
  std::sort(v.violations.begin(), v.violations.end());
  v.violations.erase(std::unique(v.violations.begin(), v.violations.end()), v.violations.end());
  if (!v.violations.empty()) v.valid = false;
}

Verdict independence(const LegalGraph& g, const Labeling& l) {
  Verdict v;
  for (const Edge& e : g.edges()) {
    if (l.values[e.u] == kIn && l.values[e.v] == kIn) {
      v.violations.push_back(e.u);
      v.violations.push_back(e.v);
    }
  }
  return v;
}

std::vector<std::size_t> matched_degree(const LegalGraph& g, const Labeling& l) {
  std::vector<std::size_t> deg(g.node_count(), 0);
  for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
    if (l.values[i] == 1) {
      ++deg[g.edge(i).u];
      ++deg[g.edge(i).v];
    }
  }
  return deg;
}

}  // namespace

ProblemDescriptor independent_set_problem() {
  return {"independent_set", LabelDomain::nodes, 1, binary, [](const LegalGraph& g, const Labeling& l) {
            Verdict v = independence(g, l);
            finish(v);
            return v;
          }};
}

ProblemDescriptor mis_problem() {
  return {"mis", LabelDomain::nodes, 1, binary, [](const LegalGraph& g, const Labeling& l) {
            Verdict v = independence(g, l);
            for (NodeIndex u = 0; u < g.node_count(); ++u) {
              if (l.values[u] == kIn) continue;
              auto nb = g.neighbors(u);
              if (std::none_of(nb.begin(), nb.end(), [&](NodeIndex w) { return l.values[w] == kIn; })) {
                v.violations.push_back(u);
              }
            }
            finish(v);
            return v;
          }};
}

ProblemDescriptor large_is_problem(std::uint64_t a, std::uint64_t b) {
  std::string name = "large_is(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return {name, LabelDomain::nodes, std::nullopt, binary, [a, b](const LegalGraph& g, const Labeling& l) {
            Verdict v = independence(g, l);
            finish(v);
            Wide size = static_cast<Wide>(count_label(l, kIn));
            Wide need = static_cast<Wide>(g.node_count());
            if (size * (static_cast<Wide>(a) * static_cast<Wide>(g.max_degree()) + b) < need) {
              v.valid = false;
              v.reason = "independent set too small";
            }
            return v;
          }};
}

ProblemDescriptor matching_problem() {
  return {"matching", LabelDomain::edges, 1, binary, [](const LegalGraph& g, const Labeling& l) {
            Verdict v;
            auto deg = matched_degree(g, l);
            for (NodeIndex u = 0; u < g.node_count(); ++u) {
              if (deg[u] > 1) v.violations.push_back(u);
            }
            finish(v);
            return v;
          }};
}

ProblemDescriptor maximal_matching_problem() {
  return {"maximal_matching", LabelDomain::edges, 2, binary, [](const LegalGraph& g, const Labeling& l) {
            Verdict v;
            auto deg = matched_degree(g, l);
            for (NodeIndex u = 0; u < g.node_count(); ++u) {
              if (deg[u] > 1) v.violations.push_back(u);
            }
            for (const Edge& e : g.edges()) {
              if (deg[e.u] == 0 && deg[e.v] == 0) {
                v.violations.push_back(e.u);
                v.violations.push_back(e.v);
              }
            }
            finish(v);
            return v;
          }};
}

ProblemDescriptor sinkless_orientation_problem() {
  return {"sinkless_orientation", LabelDomain::edges, 1, binary, [](const LegalGraph& g, const Labeling& l) {
            Verdict v;
            for (NodeIndex u = 0; u < g.node_count(); ++u) {
              if (g.degree(u) < 3) continue;
              bool out = false;
              auto inc = g.incident_edges(u);
              for (EdgeIndex e : inc) {
                bool forward = l.values[e] == 0;
                if ((g.edge(e).u == u) == forward) out = true;
              }
              if (!out) v.violations.push_back(u);
            }
            finish(v);
            return v;
          }};
}

ProblemDescriptor proper_coloring_problem(std::optional<Label> palette) {
  auto alphabet = [palette](Label l) { return l >= 0 && (!palette || l < *palette); };
  return {"proper_coloring", LabelDomain::nodes, 1, alphabet, [](const LegalGraph& g, const Labeling& l) {
            Verdict v;
            for (const Edge& e : g.edges()) {
              if (l.values[e.u] == l.values[e.v]) {
                v.violations.push_back(e.u);
                v.violations.push_back(e.v);
              }
            }
            finish(v);
            return v;
          }};
}

Verdict validate(const ProblemDescriptor& p, const LegalGraph& g, const Labeling& l) {
  std::size_t expected = p.domain == LabelDomain::nodes ? g.node_count() : g.edge_count();
  if (l.domain != p.domain) throw LabelError(p.name + ": labeling is on the wrong domain");
  if (l.values.size() != expected) throw LabelError(p.name + ": labeling length does not match graph");
  for (Label x : l.values) {
    if (!p.in_alphabet(x)) {
      throw LabelError(p.name + ": label " + (x == kBottom ? std::string("bottom") : std::to_string(x)) +
                       " outside alphabet");
    }
  }
  return p.check(g, l);
}

Labeling restrict_labeling(const LegalGraph& g, const CenteredGraph& sub, const Labeling& l) {
  if (l.domain == LabelDomain::nodes) {
    Labeling out = Labeling::nodes(sub.graph.node_count());
    for (NodeIndex i = 0; i < sub.graph.node_count(); ++i) out.values[i] = l.values[sub.origin[i]];
    return out;
  }
  Labeling out = Labeling::edges(sub.graph.edge_count());
  for (EdgeIndex i = 0; i < sub.graph.edge_count(); ++i) {
    const Edge& e = sub.graph.edge(i);
    out.values[i] = l.values[*g.edge_between(sub.origin[e.u], sub.origin[e.v])];
  }
  return out;
}

bool radius_locality_check(const ProblemDescriptor& p, const LegalGraph& g, const Labeling& l) {
  if (!p.radius) throw Error(p.name + " has no finite checking radius");
  Verdict global = validate(p, g, l);
  std::vector<bool> bad(g.node_count(), false);
  for (NodeIndex v : global.violations) bad[v] = true;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    CenteredGraph ball = radius_ball(g, v, *p.radius);
    Verdict local = validate(p, ball.graph, restrict_labeling(g, ball, l));
    bool local_bad = std::binary_search(local.violations.begin(), local.violations.end(), ball.center);
    if (local_bad != bad[v]) return false;
  }
  return global.valid == global.violations.empty();
}

std::string verdict_json(const ProblemDescriptor& p, const Verdict& v) {
  nlohmann::ordered_json j;
  j["problem"] = p.name;
  j["valid"] = v.valid;
  j["violations"] = v.violations;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j.dump();
}

std::size_t count_label(const Labeling& l, Label value) {
  return static_cast<std::size_t>(std::count(l.values.begin(), l.values.end(), value));
}

}  // namespace mpclab
