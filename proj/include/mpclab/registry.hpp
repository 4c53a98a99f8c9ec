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

#ifndef MPCLAB_REGISTRY_HPP
#define MPCLAB_REGISTRY_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mpclab/mpc.hpp"
#include "mpclab/problems.hpp"

namespace mpclab {

struct AlgorithmParams {
  std::size_t reps = 16;
  std::size_t sparsify_threshold = 16;
  std::uint32_t iteration_cap = 10;
  std::uint32_t ball_radius = 2;
  Label constant = kOut;
};

struct AlgorithmRun {
  Labeling labeling;
  RoundTrace trace;
};

struct RegisteredAlgorithm {
  std::string name;
  Stability stability = Stability::unknown;
  LabelDomain domain = LabelDomain::nodes;
  ProblemDescriptor problem;
  std::function<AlgorithmRun(const LegalGraph&, const MpcConfig&, const MpcMeta&, const RunOptions&)> run;
};

// constant, ball_local_is, randomized_large_is, amplified_large_is, deterministic_large_is,
// extendable_mis, maximal_matching, sinkless_orientation.
std::vector<std::string> algorithm_names();
// Throws Error for unknown names.
RegisteredAlgorithm make_algorithm(std::string_view name, const AlgorithmParams& params = {});

const char* to_string(Stability s);

}  // namespace mpclab

#endif  // MPCLAB_REGISTRY_HPP
