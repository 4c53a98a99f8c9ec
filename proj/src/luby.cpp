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

#include "mpclab/luby.hpp"

#include <algorithm>
#include <bit>

namespace mpclab {

LubyHash LubyHash::from_seed(const BitString& seed, std::size_t offset) {
  LubyHash h;
  for (std::size_t i = 0; i < kLubyIndependence; ++i) h.coeffs[i] = seed.read(offset + 64 * i, 64) % kMersenne61;
  return h;
}

std::uint64_t LubyHash::operator()(std::uint64_t id) const {
  const std::uint64_t x = id % kMersenne61;
  std::uint64_t r = 0;
  for (std::size_t i = kLubyIndependence; i-- > 0;) r = (mulmod(r, x, kMersenne61) + coeffs[i]) % kMersenne61;
  return r;
}

std::vector<bool> luby_join(const LegalGraph& g, std::span<const std::uint64_t> chi) {
  std::vector<bool> joined(g.node_count(), false);
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    bool wins = true;
    for (NodeIndex u : g.neighbors(v)) {
      if (!precedes(chi[v], g.node(v).id, chi[u], g.node(u).id)) {
        wins = false;
        break;
      }
    }
    joined[v] = wins;
  }
  return joined;
}

std::vector<bool> luby_undecided(const LegalGraph& g, const std::vector<bool>& joined) {
  std::vector<bool> open(g.node_count(), false);
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (joined[v]) continue;
    auto nb = g.neighbors(v);
    open[v] = std::none_of(nb.begin(), nb.end(), [&](NodeIndex u) { return joined[u]; });
  }
  return open;
}

KWiseFamily luby_family(std::size_t n, std::size_t max_degree, std::uint64_t max_id) {
  std::uint64_t need = std::max<std::uint64_t>({saturating_mul(8, saturating_mul(max_degree, max_degree)), n,
                                                max_id + 1, 2});
  std::uint64_t p = next_prime(need);
  return KWiseFamily::make(p, 2, p);
}

JoinWindow join_window(std::uint64_t p, std::uint64_t offset, std::uint64_t id, std::span<const Contender> neighbors) {
  std::uint64_t m = p;
  offset %= p;
  for (const auto& u : neighbors) {
    const std::uint64_t d = u.offset >= offset ? u.offset - offset : u.offset + p - offset;
    if (d == 0) {
      if (u.id < id) return {0, 0};
      continue;
    }
    m = std::min(m, p - d);
  }
  return {offset == 0 ? 0 : p - offset, m};
}

std::uint64_t window_overlap(std::uint64_t p, const JoinWindow& w, std::uint64_t lo, std::uint64_t hi) {
  hi = std::min(hi, p);
  if (lo >= hi || w.length == 0) return 0;
  auto seg = [&](std::uint64_t a, std::uint64_t b) {
    std::uint64_t l = std::max(a, lo), h = std::min(b, hi);
    return h > l ? h - l : 0;
  };
  if (w.start + w.length <= p) return seg(w.start, w.start + w.length);
  return seg(w.start, p) + seg(0, w.start + w.length - p);
}

void add_window(std::vector<Wide>& diff, std::uint64_t p, const JoinWindow& w, Wide value) {
  if (w.length == 0) return;
  auto add = [&](std::uint64_t a, std::uint64_t b) {
    diff[a] += value;
    diff[b] -= value;
  };
  if (w.start + w.length <= p) {
    add(w.start, w.start + w.length);
  } else {
    add(w.start, p);
    add(0, w.start + w.length - p);
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> uncovered(std::uint64_t p, std::span<const JoinWindow> windows) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> segs;
  for (const auto& w : windows) {
    if (w.length == 0) continue;
    if (w.length >= p) return {};
    if (w.start + w.length <= p) {
      segs.push_back({w.start, w.start + w.length});
    } else {
      segs.push_back({w.start, p});
      segs.push_back({0, w.start + w.length - p});
    }
  }
  std::sort(segs.begin(), segs.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> gaps;
  std::uint64_t at = 0;
  for (auto [a, b] : segs) {
    if (a > at) gaps.push_back({at, a});
    at = std::max(at, b);
  }
  if (at < p) gaps.push_back({at, p});
  return gaps;
}

DigitFixer::DigitFixer(std::uint64_t p) : p_(p), remaining_(static_cast<std::uint32_t>(std::bit_width(p - 1))) {
  if (p < 2) throw Error("digit fixing needs p >= 2");
}

std::pair<std::uint64_t, std::uint64_t> DigitFixer::candidate(int digit) const {
  const std::uint32_t rest = remaining_ - 1;
  const std::uint64_t lo = ((prefix_ << 1) | static_cast<std::uint64_t>(digit)) << rest;
  const std::uint64_t hi = lo + (1ULL << rest);
  return {std::min(lo, p_), std::min(hi, p_)};
}

int DigitFixer::decide(Wide total0, Wide total1) {
  auto [l0, h0] = candidate(0);
  auto [l1, h1] = candidate(1);
  const Wide s0 = static_cast<Wide>(h0 - l0), s1 = static_cast<Wide>(h1 - l1);
  int d = 0;
  if (s1 > 0 && (s0 == 0 || total1 * s0 < total0 * s1)) d = 1;
  take(d);
  return d;
}

void DigitFixer::take(int digit) {
  if (done()) throw Error("every digit is already fixed");
  prefix_ = (prefix_ << 1) | static_cast<std::uint64_t>(digit);
  --remaining_;
}

}  // namespace mpclab
