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

#ifndef MPCLAB_LUBY_HPP
#define MPCLAB_LUBY_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mpclab/bitstring.hpp"
#include "mpclab/common.hpp"
#include "mpclab/graph.hpp"
#include "mpclab/hashing.hpp"

namespace mpclab {

// Randomized priorities: a degree-3 polynomial over F_(2^61-1) whose coefficients are
// read from a 256-bit seed segment.
inline constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;
inline constexpr std::size_t kLubyIndependence = 4;
inline constexpr std::size_t kLubySeedBits = kLubyIndependence * 64;

struct LubyHash {
  std::array<std::uint64_t, kLubyIndependence> coeffs{};
  static LubyHash from_seed(const BitString& seed, std::size_t offset = 0);
  std::uint64_t operator()(std::uint64_t id) const;
};

inline bool precedes(std::uint64_t chi_a, std::uint64_t id_a, std::uint64_t chi_b, std::uint64_t id_b) {
  return chi_a < chi_b || (chi_a == chi_b && id_a < id_b);
}

// One Luby step under priorities chi: v joins iff (chi_v, id_v) beats every neighbor.
std::vector<bool> luby_join(const LegalGraph& g, std::span<const std::uint64_t> chi);

// Undecided nodes after a step: not joined and no joined neighbor.
std::vector<bool> luby_undecided(const LegalGraph& g, const std::vector<bool>& joined);

// The pairwise family behind the deterministic step: smallest prime >= max(8*Delta^2, n, maxID+1, 2).
KWiseFamily luby_family(std::size_t n, std::size_t max_degree, std::uint64_t max_id);

// With every coefficient but a_0 fixed, h(x) = (c_x + a_0) mod p. Node v joins exactly for
// a_0 in a cyclic window [start, start + length) mod p.
struct JoinWindow {
  std::uint64_t start = 0;
  std::uint64_t length = 0;  // 0: never joins; p: always joins
};

struct Contender {
  std::uint64_t offset;  // c_u
  std::uint64_t id;
};

JoinWindow join_window(std::uint64_t p, std::uint64_t offset, std::uint64_t id, std::span<const Contender> neighbors);

// Size of window intersected with the linear range [lo, hi).
std::uint64_t window_overlap(std::uint64_t p, const JoinWindow& w, std::uint64_t lo, std::uint64_t hi);

// Adds `value` over the window to a difference array of size p + 1.
void add_window(std::vector<Wide>& diff, std::uint64_t p, const JoinWindow& w, Wide value);

// Linear segments [lo, hi) of [0, p) covered by none of the windows.
std::vector<std::pair<std::uint64_t, std::uint64_t>> uncovered(std::uint64_t p, std::span<const JoinWindow> windows);

// Fixes one value in [0, p) bit by bit, most significant first, each time keeping the half
// whose average cost is smaller; ties keep the 0 half.
class DigitFixer {
 public:
  explicit DigitFixer(std::uint64_t p);
  bool done() const { return remaining_ == 0; }
  // [lo, hi) for the next bit equal to `digit`, clipped to [0, p); possibly empty.
  std::pair<std::uint64_t, std::uint64_t> candidate(int digit) const;
  // total_d is the summed cost over candidate(d); averages are compared exactly.
  int decide(Wide total0, Wide total1);
  // Appends `digit` without comparing.
  void take(int digit);
  std::uint64_t value() const { return prefix_; }

 private:
  std::uint64_t p_;
  std::uint32_t remaining_;
  std::uint64_t prefix_ = 0;
};

}  // namespace mpclab

#endif  // MPCLAB_LUBY_HPP
