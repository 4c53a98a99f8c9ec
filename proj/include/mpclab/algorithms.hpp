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

#ifndef MPCLAB_ALGORITHMS_HPP
#define MPCLAB_ALGORITHMS_HPP

#include <optional>
#include <vector>

#include "mpclab/derandomize.hpp"
#include "mpclab/graph.hpp"
#include "mpclab/mpc.hpp"
#include "mpclab/problems.hpp"
#include "mpclab/programs.hpp"

namespace mpclab {

Labeling membership_labeling(const std::vector<bool>& in);
std::vector<bool> members(const Labeling& l);

// One Luby step with priorities from seed bits [offset, offset + kLubySeedBits).
std::vector<bool> randomized_large_is(const LegalGraph& g, const MpcMeta& meta, std::size_t seed_offset = 0);

struct AmplifiedIs {
  std::vector<bool> joined;
  std::size_t branch = 0;
  std::vector<std::size_t> sizes;
};

// Best of `reps` Luby steps on consecutive seed slices, by size; ties go to the lowest branch.
AmplifiedIs amplified_large_is(const LegalGraph& g, const MpcMeta& meta, std::size_t reps);

inline constexpr std::size_t kSparsifyThreshold = 16;

struct LargeIsOptions {
  std::size_t sparsify_threshold = kSparsifyThreshold;
  Exec exec = Exec::parallel;
};

struct DeterministicIs {
  std::vector<bool> joined;
  std::optional<SparsifyResult> sparsified;
  SeedChoice luby_seed;
  // n / (|I| * Delta) when sparsified, the constant c in |I| >= n / (c Delta).
  std::optional<Rational> bound_constant;
};

// Pairwise family for sparsification: smallest prime >= max(n, maxID + 1, 2).
KWiseFamily sparsify_family(const LegalGraph& g);

DeterministicIs deterministic_large_is(const LegalGraph& g, const LargeIsOptions& options = {});

// Greedy colouring of G^radius in (ID, index) order, read off the radius-balls.
std::vector<std::uint32_t> reduce_id_space(const LegalGraph& g, std::span<const CenteredGraph> balls);
std::vector<std::uint32_t> reduce_id_space(const LegalGraph& g, std::uint32_t radius);

enum class Extendability { ok, in_not_independent, out_not_dominated, bottom_next_to_in };
const char* to_string(Extendability e);

// Node labels kIn, kOut or kBottom.
Extendability check_extendable(const LegalGraph& g, const Labeling& partial);

class IterationCapExceeded : public Error {
 public:
  IterationCapExceeded(std::uint32_t cap, std::size_t residual)
      : Error("undecided nodes remain after " + std::to_string(cap) + " iterations: " + std::to_string(residual)),
        cap(cap), residual(residual) {}
  std::uint32_t cap;
  std::size_t residual;
};

struct ExtendableMisOptions {
  std::uint32_t iteration_cap = 10;
  std::uint64_t min_prime = 0;
  bool keep_history = false;
  Exec exec = Exec::parallel;
  RunOptions run;
};

struct MisIteration {
  std::size_t nodes = 0;
  std::size_t max_degree = 0;
  std::size_t colors = 0;
  std::uint64_t prime = 0;
  SeedChoice seed;
  std::size_t undecided = 0;
};

struct ExtendableMisResult {
  Labeling labeling;
  std::vector<MisIteration> iterations;
  std::vector<Labeling> history;  // partial labeling after each iteration, when kept
  RoundTrace trace;
};

// Each iteration collects 2-balls of the undecided graph, colours its square, and runs one
// pairwise Luby step keyed by the colours with the seed minimizing the undecided count.
ExtendableMisResult extendable_mis(const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                                   const ExtendableMisOptions& options = {});

struct MatchingResult {
  Labeling labeling;  // per edge
  ExtendableMisResult mis;
};

MatchingResult maximal_matching(const LegalGraph& g, const MpcConfig& cfg, const MpcMeta& meta,
                                const ExtendableMisOptions& options = {});

}  // namespace mpclab

#endif  // MPCLAB_ALGORITHMS_HPP
