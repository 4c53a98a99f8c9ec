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
#include "mpclab/derandomize.hpp"
#include "mpclab/generators.hpp"
#include "mpclab/luby.hpp"
#include "mpclab/programs.hpp"

using namespace mpclab;

namespace {

// Direct per-seed cost: brute-force priorities over every neighbor.
Wide luby_cost_direct(const LegalGraph& g, const KWiseFamily& f, std::span<const std::uint64_t> seed,
                      std::span<const std::uint64_t> inputs, LubyCost mode) {
  const NodeIndex n = g.node_count();
  std::vector<std::uint64_t> h(n);
  for (NodeIndex v = 0; v < n; ++v) {
    std::uint64_t x = 1, acc = 0;
    for (auto a : seed) {
      acc = (acc + mulmod(a, x, f.prime)) % f.prime;
      x = mulmod(x, inputs[v], f.prime);
    }
    h[v] = acc;
  }
  std::vector<bool> in(n);
  for (NodeIndex v = 0; v < n; ++v) {
    bool ok = true;
    for (NodeIndex u : g.neighbors(v)) {
      auto key_v = std::pair(h[v], g.node(v).id), key_u = std::pair(h[u], g.node(u).id);
      if (!(key_v < key_u)) ok = false;
    }
    in[v] = ok;
  }
  Wide t = 0;
  for (NodeIndex v = 0; v < n; ++v) {
    if (mode == LubyCost::independent_set) {
      t -= in[v];
      continue;
    }
    bool covered = in[v];
    for (NodeIndex u : g.neighbors(v)) covered = covered || in[u];
    t += !covered;
  }
  return t;
}

std::vector<std::uint64_t> ids_of(const LegalGraph& g) {
  std::vector<std::uint64_t> ids;
  for (const auto& r : g.nodes()) ids.push_back(r.id);
  return ids;
}

void check_shift_matches_enumeration(const LegalGraph& g, const KWiseFamily& f, std::vector<std::uint64_t> inputs,
                                     LubyCost mode) {
  LubyShiftOracle shift(g, f, inputs, mode);
  LubyShiftOracle shift_serial(g, f, inputs, mode, Exec::serial);
  EnumeratingOracle direct(f, [&](std::span<const std::uint64_t> s) { return luby_cost_direct(g, f, s, inputs, mode); });
  auto t0 = shift.value_totals({});
  CHECK(t0 == direct.value_totals({}));
  CHECK(t0 == shift_serial.value_totals({}));
  for (std::uint64_t a0 = 0; a0 < f.prime; a0 += 1 + f.prime / 7) {
    std::uint64_t pre[1] = {a0};
    CHECK(shift.value_totals(pre) == direct.value_totals(pre));
  }
}

}  // namespace

TEST_CASE("shift oracle equals enumeration on C5 and C4 with p = 13") {
  auto f = KWiseFamily::make(13, 2, 13);
  for (auto g : {cycle_graph(5, IdPolicy::sequential()), cycle_graph(4, IdPolicy::shuffled(3))}) {
    for (auto mode : {LubyCost::independent_set, LubyCost::undecided}) check_shift_matches_enumeration(g, f, ids_of(g), mode);
  }
}

TEST_CASE("shift oracle equals enumeration on random graphs, including colliding inputs") {
  Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    auto g = random_bounded(6 + rng.below(10), 2 + rng.below(4), 1, 2, rng.next());
    const std::uint64_t p = next_prime(std::max<std::uint64_t>(g.node_count(), 5 + rng.below(30)));
    auto f = KWiseFamily::make(p, 2, p);
    std::vector<std::uint64_t> inputs = ids_of(g);
    if (trial % 3 == 2)
      for (auto& x : inputs) x = rng.below(4);  // colour-like inputs force ID tie-breaks
    for (auto mode : {LubyCost::independent_set, LubyCost::undecided}) check_shift_matches_enumeration(g, f, inputs, mode);
  }
}

TEST_CASE("all 169 seeds: chosen seed beats the exact average") {
  auto f = KWiseFamily::make(13, 2, 13);
  for (auto g : {cycle_graph(5, IdPolicy::sequential()), cycle_graph(4, IdPolicy::sequential())}) {
    auto ids = ids_of(g);
    Wide sum = 0;
    for (std::uint64_t a0 = 0; a0 < 13; ++a0)
      for (std::uint64_t a1 = 0; a1 < 13; ++a1) {
        std::uint64_t s[2] = {a0, a1};
        sum += luby_cost_direct(g, f, s, ids, LubyCost::independent_set);
      }
    // p = 13 is below 8 Delta^2, so the step itself refuses it; the seed fixing does not.
    CHECK_THROWS_AS(derand_luby_step(g, f), HashError);
    auto c = fix_seed_cond_exp(f, luby_is_cost(), g);
    CHECK(c.average == Rational(big(sum), 169));
    CHECK(c.achieved <= c.average);
    Wide achieved = luby_cost_direct(g, f, c.coeffs, ids, LubyCost::independent_set);
    CHECK(c.achieved == Rational(big(achieved)));
    CHECK(achieved <= -1);
    CHECK(fix_seed(LubyShiftOracle(g, f, ids, LubyCost::independent_set)).coeffs == c.coeffs);
  }
}

TEST_CASE("derand_luby_step on its smallest admissible family") {
  for (auto g : {cycle_graph(5, IdPolicy::sequential()), cycle_graph(4, IdPolicy::shuffled(2)),
                 random_bounded(40, 5, 1, 3, 9)}) {
    auto f = luby_family(g.node_count(), g.max_degree(), g.max_id());
    auto step = derand_luby_step(g, f);
    CHECK(step.seed.achieved <= step.seed.average);
    Labeling l = Labeling::nodes(g.node_count(), kOut);
    for (NodeIndex v = 0; v < g.node_count(); ++v) l.values[v] = step.joined[v] ? kIn : kOut;
    CHECK(validate(independent_set_problem(), g, l).valid);
    const auto size = static_cast<std::size_t>(std::count(step.joined.begin(), step.joined.end(), true));
    CHECK(size * (4 * g.max_degree() + 1) >= g.node_count());
    CHECK(step.seed.achieved == Rational(-static_cast<long>(size)));
  }
}

TEST_CASE("cost-function path, enumerating path and shift path pick the same seed") {
  Rng rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    auto g = random_bounded(10, 3, 1, 2, rng.next());
    auto f = luby_family(g.node_count(), g.max_degree(), g.max_id());
    auto via_shift = derand_luby_step(g, f);
    auto via_cost = fix_seed_cond_exp(f, luby_is_cost(), g);
    auto ids = ids_of(g);
    auto via_enum = fix_seed(EnumeratingOracle(
        f, [&](std::span<const std::uint64_t> s) { return luby_cost_direct(g, f, s, ids, LubyCost::independent_set); }));
    CHECK(via_shift.seed.coeffs == via_cost.coeffs);
    CHECK(via_shift.seed.coeffs == via_enum.coeffs);
    CHECK(via_shift.seed.average == via_cost.average);
    auto undecided = fix_seed_cond_exp(f, luby_undecided_cost(), g);
    auto undecided_shift = fix_seed(LubyShiftOracle(g, f, ids, LubyCost::undecided));
    CHECK(undecided.coeffs == undecided_shift.coeffs);
    CHECK(undecided.achieved <= undecided.average);
  }
}

TEST_CASE("deterministic Luby MPC program equals the library step") {
  Rng rng(17);
  MpcConfig cfg{0.8, 256, {}, {}};
  for (int trial = 0; trial < 8; ++trial) {
    auto g = random_bounded(12 + rng.below(20), 4, 1, 2, rng.next());
    auto lib = derand_luby_step(g, luby_family(g.node_count(), g.max_degree(), g.max_id()));
    auto r = run(DeterministicLubyProgram{}, g, cfg, make_meta(g, BitString::expand(trial, 1024)));
    for (NodeIndex v = 0; v < g.node_count(); ++v) CHECK((r.labeling.values[v] == kIn) == lib.joined[v]);
  }
}

TEST_CASE("derand_luby_step preconditions") {
  auto g = cycle_graph(5, IdPolicy::sequential());
  CHECK_THROWS_WITH_AS(derand_luby_step(g, KWiseFamily::make(31, 1, 31)), doctest::Contains("family too small"),
                       HashError);
  CHECK_THROWS_WITH_AS(derand_luby_step(g, KWiseFamily::make(29, 2, 29)), doctest::Contains("family too small"),
                       HashError);
  auto star = star_graph(4, IdPolicy::sequential());
  CHECK_NOTHROW(derand_luby_step(star, KWiseFamily::make(73, 2, 73)));
  auto three = derand_luby_step(g, KWiseFamily::make(37, 3, 37));
  CHECK(three.seed.coeffs.size() == 3);
  CHECK(three.seed.achieved <= three.seed.average);
}

TEST_CASE("digit fixing never lands above the average on arbitrary costs") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t p = next_prime(2 + rng.below(20));
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(3));
    auto f = KWiseFamily::make(p, k, p);
    std::vector<Wide> table(f.seed_count());
    for (auto& t : table) t = static_cast<Wide>(rng.below(100)) - 50;
    auto index = [&](std::span<const std::uint64_t> s) {
      std::uint64_t i = 0;
      for (auto a : s) i = i * p + a;
      return i;
    };
    EnumeratingOracle oracle(f, [&](std::span<const std::uint64_t> s) { return table[index(s)]; }, 3);
    auto c = fix_seed(oracle);
    Wide sum = 0;
    for (auto t : table) sum += t;
    CHECK(c.average == Rational(big(sum), big(static_cast<Wide>(table.size()) * 3)));
    CHECK(c.achieved == Rational(big(table[index(c.coeffs)]), 3));
    CHECK(c.achieved <= c.average);
  }
}

TEST_CASE("sparsification of a random 8-regular graph") {
  auto g = random_regular(64, 8, 3);
  auto f = KWiseFamily::make(67, 2, 67);
  auto s = derand_sparsify(g, 2, f);
  REQUIRE(s.seed.has_value());
  CHECK(s.kept >= 8);
  CHECK(s.kept <= 24);
  CHECK(s.max_induced_degree <= 8);
  CHECK(s.threshold == 16);
  CHECK(s.seed->achieved <= s.seed->average);
  // Kept set as an independent recount.
  std::size_t kept = 0;
  for (const auto& r : g.nodes()) kept += kwise_eval(f, s.seed->coeffs, r.id) < 16;
  CHECK(kept == s.kept);
  CHECK(s.subgraph.graph.node_count() == kept);

  auto low = derand_sparsify(cycle_graph(6), 2, f);
  CHECK_FALSE(low.seed.has_value());
  CHECK(low.kept == 6);
  auto empty = derand_sparsify(LegalGraph(), 2, f);
  CHECK(empty.kept == 0);
}

TEST_CASE("amplify picks the lowest valid branch, otherwise the most valid nodes") {
  auto g = path_graph(6, IdPolicy::sequential());
  auto problem = independent_set_problem();
  // Branch seeds start with a 4-bit code: code c labels the first c nodes In (invalid for c >= 2).
  SeededAlgorithm alg = [](const LegalGraph& h, const MpcMeta& m) {
    const auto c = m.seed.read(0, 4);
    Labeling l = Labeling::nodes(h.node_count(), kOut);
    for (std::uint64_t v = 0; v < std::min<std::uint64_t>(c, h.node_count()); ++v) l.values[v] = kIn;
    return l;
  };
  auto seed_with = [](std::vector<std::uint64_t> codes) {
    BitString s = BitString::zeros(codes.size() * 8);
    for (std::size_t b = 0; b < codes.size(); ++b)
      for (int i = 0; i < 4; ++i) s.set(b * 8 + i, (codes[b] >> (3 - i)) & 1);
    return s;
  };
  auto meta = make_meta(g, seed_with({5, 3, 1, 0}));
  auto a = amplify(alg, problem, g, 4, meta, 8);
  CHECK(a.valid);
  CHECK(a.branch == 2);
  CHECK(a.labeling.values[0] == kIn);
  auto none = amplify(alg, problem, g, 3, make_meta(g, seed_with({6, 3, 4})), 8, Exec::serial);
  CHECK_FALSE(none.valid);
  CHECK(none.branch == 1);
  CHECK(none.valid_nodes == std::vector<std::size_t>{0, 3, 2});
  CHECK_THROWS_AS(amplify(alg, problem, g, 5, meta, 8), Error);
}

TEST_CASE("universal seed search returns the first seed valid on the whole corpus") {
  std::vector<LegalGraph> corpus = {path_graph(3), cycle_graph(4), cycle_graph(5)};
  SeedSpace space{6, 64};
  // Valid iff the low 3 bits of the seed's first byte exceed the graph size minus 3.
  SeededAlgorithm alg = [](const LegalGraph& h, const MpcMeta& m) {
    const bool good = (m.seed.read(0, 8) & 7) > h.node_count() - 3;
    Labeling l = Labeling::nodes(h.node_count(), kOut);
    if (!good) l.values.assign(h.node_count(), kIn);
    return l;
  };
  auto r = find_universal_seed(alg, corpus, space, independent_set_problem());
  std::optional<std::uint64_t> expected;
  for (std::uint64_t i = 0; i < space.size() && !expected; ++i)
    if ((space.seed(i).read(0, 8) & 7) > 2) expected = i;
  CHECK(r.index == expected);
  REQUIRE(r.seed.has_value());
  CHECK(*r.seed == space.seed(*expected));
  CHECK(r.seed->size() == 64);

  SeededAlgorithm never = [](const LegalGraph& h, const MpcMeta&) { return Labeling::nodes(h.node_count(), kIn); };
  auto miss = find_universal_seed(never, corpus, space, independent_set_problem());
  CHECK_FALSE(miss.index.has_value());
  CHECK(miss.runs == space.size());
  CHECK_THROWS_AS(find_universal_seed(never, corpus, SeedSpace{30, 64}, independent_set_problem(), 1 << 20), Error);
}
