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

#ifndef MPCLAB_LLL_HPP
#define MPCLAB_LLL_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mpclab/graph.hpp"
#include "mpclab/hashing.hpp"
#include "mpclab/problems.hpp"
#include "mpclab/rational.hpp"

namespace mpclab {

// A bad event over distinct variables; the predicate sees their bits in `vars` order.
struct BadEvent {
  std::vector<std::uint32_t> vars;
  std::function<bool(std::span<const std::uint8_t>)> occurs;
};

class LllInstance {
 public:
  // Throws Error on out-of-range or repeated variables, or events on more than 24 variables.
  LllInstance(std::uint32_t variables, std::vector<BadEvent> events);

  std::uint32_t variables() const { return variables_; }
  const std::vector<BadEvent>& events() const { return events_; }
  // Number of other events sharing a variable, maximized over events.
  std::uint32_t dependency_degree() const { return d_; }
  // Under fair independent bits.
  const Rational& max_probability() const { return p_max_; }
  std::size_t max_event_size() const { return max_vars_; }
  // e * p_max * (d + 1) <= 1, tested with an upper bound on e.
  bool symmetric_criterion() const;

  bool occurs(std::size_t event, std::span<const std::uint8_t> assignment) const;
  std::size_t violated(std::span<const std::uint8_t> assignment) const;
  // Events sharing a variable with `event`, itself excluded.
  const std::vector<std::uint32_t>& neighbours(std::size_t event) const { return adjacent_[event]; }

 private:
  std::uint32_t variables_;
  std::vector<BadEvent> events_;
  std::vector<std::vector<std::uint32_t>> adjacent_;
  std::uint32_t d_ = 0;
  Rational p_max_;
  std::size_t max_vars_ = 0;
};

class ResampleCapExceeded : public Error {
 public:
  explicit ResampleCapExceeded(std::uint64_t cap)
      : Error("no satisfying assignment within " + std::to_string(cap) + " resamplings"), cap(cap) {}
  std::uint64_t cap;
};

struct MoserTardosResult {
  std::vector<std::uint8_t> assignment;
  std::uint64_t resamples = 0;
};

struct MoserTardosOptions {
  std::uint64_t cap = 100000;
  bool ignore_criterion = false;
};

// Resamples the lowest-indexed occurring event until none occurs. Throws Error when the
// symmetric criterion fails and the caller did not override it.
MoserTardosResult moser_tardos(const LllInstance& inst, std::uint64_t seed, const MoserTardosOptions& options = {});

// Variables coloured so that each event's variables get distinct colours; colour c is
// hashed at input c.
std::vector<std::uint32_t> variable_colors(const LllInstance& inst);

// Smallest prime >= max(colours, 1024); k = number of colours.
KWiseFamily lll_family(const LllInstance& inst);

struct LllSingleShot {
  std::vector<std::uint8_t> assignment;
  Coefficients seed;
  std::size_t violations = 0;
  Rational expected;  // exact E[#violated] under the family, before fixing
  Rational achieved;  // equals violations
};

// Bit of a variable = (h(colour) < floor(p/2) ? 0 : 1). The values h(0), ..., h(C-1) are fixed
// one at a time by conditional expectations, digit by digit; the seed is their interpolant.
LllSingleShot derand_lll_single_shot(const LllInstance& inst, const KWiseFamily& f);

// Exact E[#violated] when each bit is 1 with probability (p - floor(p/2)) / p.
Rational lll_expectation(const LllInstance& inst, std::uint64_t prime);

enum class OrientationMode { single_shot, moser_tardos, unconstrained };
const char* to_string(OrientationMode m);

struct SinklessInstance {
  LllInstance lll;
  std::vector<NodeIndex> constrained;  // event i belongs to constrained[i]
};

// One bit per edge (0: u -> v for u < v); one event per node of degree >= 3.
SinklessInstance sinkless_instance(const LegalGraph& g);

struct Orientation {
  Labeling labeling;
  OrientationMode mode = OrientationMode::unconstrained;
  Rational expected;
  std::uint64_t resamples = 0;
};

Orientation sinkless_orientation(const LegalGraph& g, std::uint64_t fallback_seed = 1,
                                 std::uint64_t fallback_cap = 100000);

// `orient i j ->` per edge.
std::string format_orientation(const LegalGraph& g, const Labeling& l);

}  // namespace mpclab

#endif  // MPCLAB_LLL_HPP
