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

#include <algorithm>

#include "doctest.h"
#include "mpclab/generators.hpp"
#include "mpclab/lll.hpp"

using namespace mpclab;

namespace {

BadEvent equals_event(std::vector<std::uint32_t> vars, std::vector<std::uint8_t> pattern) {
  return {std::move(vars), [pattern](std::span<const std::uint8_t> b) { return std::equal(b.begin(), b.end(), pattern.begin()); }};
}

// Average violations over every seed of the family: the exact expectation oracle.
Rational enumerated_expectation(const LllInstance& inst, const KWiseFamily& f) {
  auto colors = variable_colors(inst);
  const std::uint64_t half = f.prime / 2;
  BigInt total = 0;
  std::vector<std::uint8_t> a(inst.variables());
  enumerate_seeds(f).for_each([&](std::span<const std::uint64_t> seed) {
    for (std::uint32_t x = 0; x < inst.variables(); ++x) a[x] = kwise_eval(f, seed, colors[x]) >= half;
    total += inst.violated(a);
    return true;
  });
  return Rational(total, BigInt(f.seed_count()));
}

}  // namespace

TEST_CASE("instance parameters are recomputed") {
  LllInstance one(2, {equals_event({0, 1}, {0, 0})});
  CHECK(one.max_probability() == Rational(1, 4));
  CHECK(one.dependency_degree() == 0);
  CHECK(one.symmetric_criterion());
  LllInstance chain(3, {equals_event({0, 1}, {1, 1}), equals_event({1, 2}, {0, 1}), equals_event({2}, {1})});
  CHECK(chain.dependency_degree() == 2);
  CHECK(chain.max_probability() == Rational(1, 2));
  CHECK_FALSE(chain.symmetric_criterion());
  CHECK_THROWS_AS(LllInstance(2, {equals_event({0, 0}, {0, 0})}), Error);
  CHECK_THROWS_AS(LllInstance(2, {equals_event({0, 2}, {0, 0})}), Error);
}

TEST_CASE("Moser-Tardos") {
  LllInstance none(5, {});
  auto r0 = moser_tardos(none, 9);
  Rng rng(9);
  for (auto b : r0.assignment) CHECK(b == rng.coin());
  CHECK(r0.resamples == 0);

  LllInstance one(2, {equals_event({0, 1}, {0, 0})});
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto r = moser_tardos(one, s);
    CHECK((r.assignment[0] | r.assignment[1]) == 1);
  }

  LllInstance chain(3, {equals_event({0, 1}, {1, 1}), equals_event({1, 2}, {0, 1}), equals_event({2}, {1})});
  CHECK_THROWS_AS(moser_tardos(chain, 1), Error);
  auto forced = moser_tardos(chain, 1, {1000, true});
  CHECK(chain.violated(forced.assignment) == 0);
  LllInstance impossible(1, {equals_event({0}, {0}), equals_event({0}, {1})});
  CHECK_THROWS_AS(moser_tardos(impossible, 1, {50, true}), ResampleCapExceeded);

  auto g = random_regular(32, 4, 2);
  auto si = sinkless_instance(g);
  CHECK(si.lll.symmetric_criterion());
  auto r = moser_tardos(si.lll, 4, {100000, false});
  Labeling l = Labeling::edges(g.edge_count(), 0);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) l.values[e] = r.assignment[e];
  CHECK(validate(sinkless_orientation_problem(), g, l).valid);
}

TEST_CASE("single shot: seed-enumeration oracle for the expectation") {
  Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const std::uint32_t vars = 2 + static_cast<std::uint32_t>(rng.below(3));
    std::vector<BadEvent> events;
    const std::size_t count = 1 + rng.below(4);
    for (std::size_t e = 0; e < count; ++e) {
      std::vector<std::uint32_t> on;
      for (std::uint32_t x = 0; x < vars; ++x)
        if (rng.coin()) on.push_back(x);
      if (on.empty()) on.push_back(static_cast<std::uint32_t>(rng.below(vars)));
      std::vector<std::uint8_t> pattern(on.size());
      for (auto& b : pattern) b = rng.coin();
      events.push_back(equals_event(on, pattern));
    }
    LllInstance inst(vars, std::move(events));
    auto colors = variable_colors(inst);
    const std::uint32_t palette = *std::max_element(colors.begin(), colors.end()) + 1;
    const std::uint64_t p = std::vector<std::uint64_t>{5, 7, 11}[rng.below(3)];
    auto f = KWiseFamily::make(p, palette, p);
    auto shot = derand_lll_single_shot(inst, f);
    CHECK(shot.expected == enumerated_expectation(inst, f));
    CHECK(shot.expected == lll_expectation(inst, p));
    CHECK(shot.achieved <= shot.expected);
    if (shot.expected < 1) CHECK(shot.violations == 0);
    // The reported seed really produces the assignment.
    std::vector<std::uint8_t> a(vars);
    for (std::uint32_t x = 0; x < vars; ++x) a[x] = kwise_eval(f, shot.seed, colors[x]) >= p / 2;
    CHECK(a == shot.assignment);
  }
}

TEST_CASE("single shot: examples and errors") {
  LllInstance one(2, {equals_event({0, 1}, {0, 0})});
  auto f = lll_family(one);
  auto shot = derand_lll_single_shot(one, f);
  CHECK(shot.violations == 0);
  CHECK(shot.expected < Rational(1, 4));
  LllInstance both(1, {equals_event({0}, {0}), equals_event({0}, {1})});
  auto honest = derand_lll_single_shot(both, lll_family(both));
  CHECK(honest.violations == 1);
  CHECK(honest.expected == 1);
  CHECK_THROWS_WITH_AS(derand_lll_single_shot(one, KWiseFamily::make(1031, 1, 1031)), doctest::Contains("k too small"),
                       HashError);
}

TEST_CASE("sinkless orientation") {
  auto c = cycle_graph(7);
  auto oc = sinkless_orientation(c);
  CHECK(oc.mode == OrientationMode::unconstrained);
  CHECK(validate(sinkless_orientation_problem(), c, oc.labeling).valid);

  auto k4 = clique_graph(4);
  std::size_t valid = 0;
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    Labeling l = Labeling::edges(6, 0);
    for (int e = 0; e < 6; ++e) l.values[e] = (mask >> e) & 1;
    bool ok = true;
    for (NodeIndex v = 0; v < 4; ++v) {
      bool out = false;
      for (EdgeIndex e : k4.incident_edges(v)) out = out || ((k4.edge(e).u == v) == (l.values[e] == 0));
      ok = ok && out;
    }
    valid += ok;
    CHECK(validate(sinkless_orientation_problem(), k4, l).valid == ok);
  }
  CHECK(valid > 0);
  auto o4 = sinkless_orientation(k4);
  CHECK(o4.mode == OrientationMode::single_shot);
  CHECK(validate(sinkless_orientation_problem(), k4, o4.labeling).valid);

  auto g = random_regular(64, 8, 7);
  auto og = sinkless_orientation(g);
  CHECK(og.expected < 1);
  CHECK(og.expected > Rational(64, 256));
  CHECK(og.mode == OrientationMode::single_shot);
  CHECK(validate(sinkless_orientation_problem(), g, og.labeling).valid);

  auto dense = random_regular(12, 3, 1);
  auto od = sinkless_orientation(dense);
  CHECK(od.expected >= 1);
  CHECK(od.mode == OrientationMode::moser_tardos);
  CHECK(validate(sinkless_orientation_problem(), dense, od.labeling).valid);

  auto p2 = path_graph(2, IdPolicy::sequential());
  CHECK(format_orientation(p2, Labeling::edges(1, 1)) == "orient 1 0 ->\n");
}
