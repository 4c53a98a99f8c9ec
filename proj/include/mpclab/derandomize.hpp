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

#ifndef MPCLAB_DERANDOMIZE_HPP
#define MPCLAB_DERANDOMIZE_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpclab/graph.hpp"
#include "mpclab/hashing.hpp"
#include "mpclab/mpc.hpp"
#include "mpclab/problems.hpp"
#include "mpclab/rational.hpp"

namespace mpclab {

// Sum over nodes of a contribution that sees only the node's radius-r ball and the seed.
// Contributions are numerators over `scale`.
struct CostFunction {
  std::uint32_t radius = 1;
  std::int64_t scale = 1;
  std::function<std::int64_t(const CenteredGraph& ball, std::span<const std::uint64_t> seed, const KWiseFamily& f)>
      evaluate;
};

struct SeedChoice {
  KWiseFamily family;
  Coefficients coeffs;
  Rational achieved;
  Rational average;
  std::string line() const { return format_seed(family, coeffs, achieved); }
};

// Exact conditional sums of an integer cost (numerators over scale()) on a k-wise family.
class ConditionalCostOracle {
 public:
  virtual ~ConditionalCostOracle() = default;
  virtual const KWiseFamily& family() const = 0;
  virtual std::int64_t scale() const { return 1; }
  // Entry a: total cost over every seed extending (prefix, a).
  virtual std::vector<Wide> value_totals(std::span<const std::uint64_t> prefix) const = 0;
  virtual Wide cost(std::span<const std::uint64_t> seed) const = 0;
};

// Totals by enumerating every completion.
class EnumeratingOracle : public ConditionalCostOracle {
 public:
  using SeedCost = std::function<Wide(std::span<const std::uint64_t>)>;
  EnumeratingOracle(KWiseFamily f, SeedCost cost, std::int64_t scale = 1, Exec exec = Exec::parallel,
                    std::uint64_t cap = kDefaultEnumerationCap);
  const KWiseFamily& family() const override { return family_; }
  std::int64_t scale() const override { return scale_; }
  std::vector<Wide> value_totals(std::span<const std::uint64_t> prefix) const override;
  Wide cost(std::span<const std::uint64_t> seed) const override { return cost_(seed); }

 private:
  KWiseFamily family_;
  SeedCost cost_;
  std::int64_t scale_;
  Exec exec_;
};

enum class LubyCost {
  independent_set,  // -|IS|
  undecided,        // number of nodes neither in the IS nor next to it
};

// Pairwise Luby step (k = 2) with hash inputs `inputs[v]` and ID tie-breaks. Fixing a_1,
// node v wins exactly on a cyclic window of a_0 values, so the a_0 totals come from
// difference arrays instead of enumeration.
class LubyShiftOracle : public ConditionalCostOracle {
 public:
  LubyShiftOracle(const LegalGraph& g, KWiseFamily f, std::vector<std::uint64_t> inputs, LubyCost mode,
                  Exec exec = Exec::parallel);
  const KWiseFamily& family() const override { return family_; }
  std::vector<Wide> value_totals(std::span<const std::uint64_t> prefix) const override;
  Wide cost(std::span<const std::uint64_t> seed) const override;

 private:
  const LegalGraph& g_;
  KWiseFamily family_;
  std::vector<std::uint64_t> inputs_;
  LubyCost mode_;
  Exec exec_;
};

// Fixes a_0, a_1, ... in turn, each digit by digit most significant first; ties go to 0.
SeedChoice fix_seed(const ConditionalCostOracle& oracle);
SeedChoice fix_seed_cond_exp(const KWiseFamily& f, const CostFunction& cost, const LegalGraph& g,
                             Exec exec = Exec::parallel);

// Per-seed cost of the Luby step as a CostFunction on 1-balls (hash input = ID).
CostFunction luby_is_cost();
// Undecided-node count on 2-balls (hash input = ID).
CostFunction luby_undecided_cost();

// Luby step evaluated under an explicit seed.
std::vector<bool> luby_step_with_seed(const LegalGraph& g, const KWiseFamily& f, std::span<const std::uint64_t> seed,
                                      std::span<const std::uint64_t> inputs);

struct LubyStepResult {
  std::vector<bool> joined;
  SeedChoice seed;
};

// pre: k >= 2, p >= max(8 Delta^2, n), every ID inside the domain.
LubyStepResult derand_luby_step(const LegalGraph& g, const KWiseFamily& f, Exec exec = Exec::parallel);

struct SparsifyResult {
  CenteredGraph subgraph;  // induced on the kept nodes; origin maps back
  std::size_t kept = 0;
  std::size_t max_induced_degree = 0;
  std::uint64_t threshold = 0;  // keep iff h(ID) < threshold
  std::optional<SeedChoice> seed;
};

// Keeps v iff h(ID(v)) < floor(p * target / Delta), with the seed minimizing
// (#kept nodes of induced degree > 4 target) + |kept - n target / Delta|.
SparsifyResult derand_sparsify(const LegalGraph& g, std::size_t target, const KWiseFamily& f,
                               Exec exec = Exec::parallel);

using SeededAlgorithm = std::function<Labeling(const LegalGraph&, const MpcMeta&)>;

struct AmplifyResult {
  Labeling labeling;
  std::size_t branch = 0;
  bool valid = false;
  std::vector<std::size_t> valid_nodes;  // per branch
};

// Branch b sees seed bits [b * slice_bits, (b + 1) * slice_bits) of meta.seed.
AmplifyResult amplify(const SeededAlgorithm& alg, const ProblemDescriptor& problem, const LegalGraph& g,
                      std::size_t ell, const MpcMeta& meta, std::size_t slice_bits, Exec exec = Exec::parallel);

// Seed i of the truncated space is the expansion of i to `expand_bits` bits.
struct SeedSpace {
  std::uint32_t bits = 8;
  std::size_t expand_bits = kDefaultSeedBits;
  std::uint64_t size() const { return 1ULL << bits; }
  BitString seed(std::uint64_t index) const;
};

struct UniversalSeedResult {
  std::optional<std::uint64_t> index;
  std::optional<BitString> seed;
  std::uint64_t runs = 0;
};

UniversalSeedResult find_universal_seed(const SeededAlgorithm& alg, std::span<const LegalGraph> corpus,
                                        const SeedSpace& space, const ProblemDescriptor& problem,
                                        std::uint64_t cap = 1ULL << 24);

}  // namespace mpclab

#endif  // MPCLAB_DERANDOMIZE_HPP
