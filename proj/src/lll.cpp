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

#include "mpclab/lll.hpp"

#include <algorithm>
#include <bit>

#include "mpclab/luby.hpp"

namespace mpclab {

namespace {

constexpr std::size_t kMaxEventVars = 24;

// Enumerates the assignments of `free_count` bits, in the order of the free positions.
template <class F>
void for_each_completion(std::vector<std::uint8_t>& bits, std::span<const std::size_t> free_pos, F&& f) {
  const std::uint64_t total = 1ULL << free_pos.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < free_pos.size(); ++i) bits[free_pos[i]] = (mask >> i) & 1;
    f(static_cast<std::uint32_t>(std::popcount(mask)));
  }
}

}  // namespace

LllInstance::LllInstance(std::uint32_t variables, std::vector<BadEvent> events)
    : variables_(variables), events_(std::move(events)) {
  std::vector<std::vector<std::uint32_t>> by_var(variables_);
  for (std::uint32_t e = 0; e < events_.size(); ++e) {
    auto& ev = events_[e];
    if (!ev.occurs) throw Error("event " + std::to_string(e) + " has no predicate");
    if (ev.vars.size() > kMaxEventVars) throw Error("event " + std::to_string(e) + " reads too many variables");
    auto sorted = ev.vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("event " + std::to_string(e) + " repeats a variable");
    for (auto x : ev.vars) {
      if (x >= variables_) throw Error("event " + std::to_string(e) + " reads a missing variable");
      by_var[x].push_back(e);
    }
    max_vars_ = std::max(max_vars_, ev.vars.size());
    std::vector<std::uint8_t> bits(ev.vars.size());
    std::vector<std::size_t> free_pos(ev.vars.size());
    for (std::size_t i = 0; i < free_pos.size(); ++i) free_pos[i] = i;
    std::uint64_t hits = 0;
    for_each_completion(bits, free_pos, [&](std::uint32_t) { hits += ev.occurs(bits); });
    p_max_ = std::max(p_max_, Rational(hits, 1ULL << ev.vars.size()));
  }
  adjacent_.resize(events_.size());
  for (std::uint32_t e = 0; e < events_.size(); ++e) {
    auto& adj = adjacent_[e];
    for (auto x : events_[e].vars)
      for (auto o : by_var[x])
        if (o != e) adj.push_back(o);
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    d_ = std::max<std::uint32_t>(d_, static_cast<std::uint32_t>(adj.size()));
  }
}

bool LllInstance::symmetric_criterion() const {
  const Rational e_upper(271828183, 100000000);
  return e_upper * p_max_ * (d_ + 1) <= 1;
}

bool LllInstance::occurs(std::size_t event, std::span<const std::uint8_t> assignment) const {
  const auto& ev = events_[event];
  std::vector<std::uint8_t> bits(ev.vars.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = assignment[ev.vars[i]];
  return ev.occurs(bits);
}

std::size_t LllInstance::violated(std::span<const std::uint8_t> assignment) const {
  if (assignment.size() != variables_) throw Error("assignment size differs from the variable count");
  std::size_t count = 0;
  for (std::size_t e = 0; e < events_.size(); ++e) count += occurs(e, assignment);
  return count;
}

MoserTardosResult moser_tardos(const LllInstance& inst, std::uint64_t seed, const MoserTardosOptions& options) {
  if (!options.ignore_criterion && !inst.symmetric_criterion())
    throw Error("symmetric LLL criterion e * p * (d + 1) <= 1 fails; override to run anyway");
  Rng rng(seed);
  MoserTardosResult out;
  out.assignment.resize(inst.variables());
  for (auto& b : out.assignment) b = rng.coin();
  // Occurring events are tracked incrementally; resampling only touches neighbours.
  std::vector<char> bad(inst.events().size());
  std::size_t first = inst.events().size();
  for (std::size_t e = 0; e < bad.size(); ++e) bad[e] = inst.occurs(e, out.assignment);
  auto lowest = [&] {
    first = static_cast<std::size_t>(std::find(bad.begin(), bad.end(), 1) - bad.begin());
    return first;
  };
  while (lowest() < bad.size()) {
    if (out.resamples == options.cap) throw ResampleCapExceeded(options.cap);
    ++out.resamples;
    for (auto x : inst.events()[first].vars) out.assignment[x] = rng.coin();
    bad[first] = inst.occurs(first, out.assignment);
    for (auto o : inst.neighbours(first)) bad[o] = inst.occurs(o, out.assignment);
  }
  return out;
}

std::vector<std::uint32_t> variable_colors(const LllInstance& inst) {
  std::vector<std::vector<std::uint32_t>> by_var(inst.variables());
  for (std::uint32_t e = 0; e < inst.events().size(); ++e)
    for (auto x : inst.events()[e].vars) by_var[x].push_back(e);
  std::vector<std::uint32_t> color(inst.variables(), kUnreached);
  std::vector<char> used;
  for (std::uint32_t x = 0; x < inst.variables(); ++x) {
    used.clear();
    for (auto e : by_var[x])
      for (auto y : inst.events()[e].vars)
        if (color[y] != kUnreached) {
          if (used.size() <= color[y]) used.resize(color[y] + 1, 0);
          used[color[y]] = 1;
        }
    std::uint32_t c = 0;
    while (c < used.size() && used[c]) ++c;
    color[x] = c;
  }
  return color;
}

KWiseFamily lll_family(const LllInstance& inst) {
  auto colors = variable_colors(inst);
  const std::uint32_t c = colors.empty() ? 1 : *std::max_element(colors.begin(), colors.end()) + 1;
  const std::uint64_t p = next_prime(std::max<std::uint64_t>(c, 1024));
  return KWiseFamily::make(p, c, p);
}

Rational lll_expectation(const LllInstance& inst, std::uint64_t prime) {
  const std::uint64_t w0 = prime / 2, w1 = prime - w0;
  Rational total = 0;
  for (const auto& ev : inst.events()) {
    std::vector<std::uint8_t> bits(ev.vars.size());
    std::vector<std::size_t> free_pos(ev.vars.size());
    for (std::size_t i = 0; i < free_pos.size(); ++i) free_pos[i] = i;
    BigInt hits = 0;
    const auto u = static_cast<std::uint32_t>(ev.vars.size());
    for_each_completion(bits, free_pos, [&](std::uint32_t ones) {
      if (ev.occurs(bits)) hits += boost::multiprecision::pow(BigInt(w0), u - ones) * boost::multiprecision::pow(BigInt(w1), ones);
    });
    total += Rational(hits, boost::multiprecision::pow(BigInt(prime), u));
  }
  return total;
}

LllSingleShot derand_lll_single_shot(const LllInstance& inst, const KWiseFamily& f) {
  if (f.k < inst.max_event_size())
    throw HashError("k too small for some event: k = " + std::to_string(f.k) + ", event reads " +
                    std::to_string(inst.max_event_size()) + " variables");
  const auto colors = variable_colors(inst);
  const std::uint32_t palette = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  if (palette > f.k || palette > f.domain_bound)
    throw HashError("k too small for the variable colouring: need " + std::to_string(palette) + " evaluation points");
  const std::uint64_t p = f.prime, half = p / 2, w0 = half, w1 = p - half;
  const std::size_t m = inst.max_event_size();

  // weight[u][ones]: probability mass of one completion of u free bits, over p^m.
  std::vector<std::vector<BigInt>> weight(m + 1);
  for (std::size_t u = 0; u <= m; ++u)
    for (std::size_t ones = 0; ones <= u; ++ones)
      weight[u].push_back(boost::multiprecision::pow(BigInt(w0), static_cast<unsigned>(u - ones)) *
                          boost::multiprecision::pow(BigInt(w1), static_cast<unsigned>(ones)) *
                          boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(m - u)));

  std::vector<std::vector<std::uint32_t>> by_color(palette);
  for (std::uint32_t e = 0; e < inst.events().size(); ++e)
    for (auto x : inst.events()[e].vars) by_color[colors[x]].push_back(e);

  LllSingleShot out;
  out.expected = lll_expectation(inst, p);
  std::vector<std::uint64_t> value(palette, 0);
  std::vector<std::uint8_t> bit_of_color(palette, 0);
  for (std::uint32_t c = 0; c < palette; ++c) {
    // V[b]: summed conditional probability of the events on colour c with that colour's bit = b.
    BigInt V[2] = {0, 0};
    for (auto e : by_color[c]) {
      const auto& ev = inst.events()[e];
      std::vector<std::uint8_t> bits(ev.vars.size());
      std::vector<std::size_t> free_pos;
      std::size_t at = 0;
      for (std::size_t i = 0; i < ev.vars.size(); ++i) {
        const auto col = colors[ev.vars[i]];
        if (col < c) bits[i] = bit_of_color[col];
        else if (col == c) at = i;
        else free_pos.push_back(i);
      }
      for (int b = 0; b < 2; ++b) {
        bits[at] = static_cast<std::uint8_t>(b);
        for_each_completion(bits, free_pos, [&](std::uint32_t ones) {
          if (ev.occurs(bits)) V[b] += weight[free_pos.size()][ones];
        });
      }
    }
    DigitFixer fx(p);
    while (!fx.done()) {
      BigInt total[2];
      std::uint64_t size[2];
      for (int d = 0; d < 2; ++d) {
        auto [lo, hi] = fx.candidate(d);
        const std::uint64_t zeros = lo < half ? std::min(hi, half) - lo : 0;
        size[d] = hi - lo;
        total[d] = V[0] * zeros + V[1] * (size[d] - zeros);
      }
      const bool one = size[1] > 0 && (size[0] == 0 || total[1] * size[0] < total[0] * size[1]);
      fx.take(one ? 1 : 0);
    }
    value[c] = fx.value();
    bit_of_color[c] = value[c] < half ? 0 : 1;
  }
  std::vector<std::uint64_t> points(f.k), values(f.k, 0);
  for (std::uint32_t i = 0; i < f.k; ++i) points[i] = i;
  std::copy(value.begin(), value.end(), values.begin());
  out.seed = interpolate_seed(f, points, values);
  out.assignment.resize(inst.variables());
  for (std::uint32_t x = 0; x < inst.variables(); ++x) {
    out.assignment[x] = kwise_eval(f, out.seed, colors[x]) < half ? 0 : 1;
    if (out.assignment[x] != bit_of_color[colors[x]]) throw std::logic_error("interpolated seed disagrees");
  }
  out.violations = inst.violated(out.assignment);
  out.achieved = Rational(out.violations);
  if (out.achieved > out.expected)
    throw std::logic_error("single-shot violations exceed the expectation: " + std::to_string(out.violations) + " > " +
                           rational_string(out.expected));
  return out;
}

const char* to_string(OrientationMode m) {
  switch (m) {
    case OrientationMode::single_shot:
      return "single_shot";
    case OrientationMode::moser_tardos:
      return "moser_tardos";
    case OrientationMode::unconstrained:
      return "unconstrained";
  }
  return "?";
}

SinklessInstance sinkless_instance(const LegalGraph& g) {
  std::vector<BadEvent> events;
  std::vector<NodeIndex> constrained;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) < 3) continue;
    BadEvent ev;
    std::vector<std::uint8_t> inward;
    for (EdgeIndex e : g.incident_edges(v)) {
      ev.vars.push_back(e);
      inward.push_back(g.edge(e).v == v ? 0 : 1);
    }
    ev.occurs = [inward](std::span<const std::uint8_t> bits) { return std::equal(bits.begin(), bits.end(), inward.begin()); };
    events.push_back(std::move(ev));
    constrained.push_back(v);
  }
  return {LllInstance(static_cast<std::uint32_t>(g.edge_count()), std::move(events)), std::move(constrained)};
}

Orientation sinkless_orientation(const LegalGraph& g, std::uint64_t fallback_seed, std::uint64_t fallback_cap) {
  auto si = sinkless_instance(g);
  Orientation out;
  out.labeling = Labeling::edges(g.edge_count(), 0);
  if (si.lll.events().empty()) return out;
  const auto f = lll_family(si.lll);
  out.expected = lll_expectation(si.lll, f.prime);
  std::vector<std::uint8_t> bits;
  if (out.expected < 1) {
    auto shot = derand_lll_single_shot(si.lll, f);
    if (shot.violations != 0) throw std::logic_error("single shot left violations although E < 1");
    bits = std::move(shot.assignment);
    out.mode = OrientationMode::single_shot;
  } else {
    auto mt = moser_tardos(si.lll, fallback_seed, {fallback_cap, true});
    bits = std::move(mt.assignment);
    out.resamples = mt.resamples;
    out.mode = OrientationMode::moser_tardos;
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) out.labeling.values[e] = bits[e];
  return out;
}

std::string format_orientation(const LegalGraph& g, const Labeling& l) {
  std::string s;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const bool forward = l.values[e] == 0;
    s += "orient " + std::to_string(forward ? ed.u : ed.v) + " " + std::to_string(forward ? ed.v : ed.u) + " ->\n";
  }
  return s;
}

}  // namespace mpclab
