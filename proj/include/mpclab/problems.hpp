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

#ifndef MPCLAB_PROBLEMS_HPP
#define MPCLAB_PROBLEMS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpclab/graph.hpp"

namespace mpclab {

enum class LabelDomain { nodes, edges };

// Node labels are indexed by node, edge labels by canonical edge index.
struct Labeling {
  LabelDomain domain = LabelDomain::nodes;
  std::vector<Label> values;

  static Labeling nodes(std::size_t n, Label fill = kBottom) { return {LabelDomain::nodes, std::vector<Label>(n, fill)}; }
  static Labeling edges(std::size_t m, Label fill = kBottom) { return {LabelDomain::edges, std::vector<Label>(m, fill)}; }
  friend bool operator==(const Labeling&, const Labeling&) = default;
};

inline constexpr Label kIn = 1;
inline constexpr Label kOut = 0;

class LabelError : public Error {
 public:
  using Error::Error;
};

struct Verdict {
  bool valid = true;
  std::vector<NodeIndex> violations;  // ascending
  std::string reason;                 // set when a global condition fails
};

struct ProblemDescriptor {
  std::string name;
  LabelDomain domain = LabelDomain::nodes;
  std::optional<std::uint32_t> radius;  // nullopt: global check
  std::function<bool(Label)> in_alphabet;
  std::function<Verdict(const LegalGraph&, const Labeling&)> check;
  std::uint32_t replicability = 0;  // metadata only
};

ProblemDescriptor independent_set_problem();
ProblemDescriptor mis_problem();
// Independent set with |I| * (a * Delta + b) >= n.
ProblemDescriptor large_is_problem(std::uint64_t a, std::uint64_t b);
ProblemDescriptor matching_problem();
ProblemDescriptor maximal_matching_problem();
// Edge label 0 orients u -> v for canonical edge (u < v), 1 orients v -> u.
ProblemDescriptor sinkless_orientation_problem();
ProblemDescriptor proper_coloring_problem(std::optional<Label> palette = std::nullopt);

// Checks domain, length and alphabet, then runs the problem check.
Verdict validate(const ProblemDescriptor& p, const LegalGraph& g, const Labeling& l);

// True iff for every node the verdict on its radius-r ball agrees with the global verdict.
bool radius_locality_check(const ProblemDescriptor& p, const LegalGraph& g, const Labeling& l);

// Restriction of a labeling to an extracted subgraph.
Labeling restrict_labeling(const LegalGraph& g, const CenteredGraph& sub, const Labeling& l);

std::string verdict_json(const ProblemDescriptor& p, const Verdict& v);

std::size_t count_label(const Labeling& l, Label value);

}  // namespace mpclab

#endif  // MPCLAB_PROBLEMS_HPP
