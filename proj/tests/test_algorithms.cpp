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
#include <numeric>
#include <set>

#include "doctest.h"
#include "mpclab/algorithms.hpp"
#include "mpclab/generators.hpp"
#include "mpclab/luby.hpp"

using namespace mpclab;

namespace {

const MpcConfig kRoomy{0.9, 64, {}, {}};

std::size_t count_in(const std::vector<bool>& in) { return static_cast<std::size_t>(std::count(in.begin(), in.end(), true)); }

bool proper_on(const LegalGraph& power, const std::vector<std::uint32_t>& colors) {
  for (const Edge& e : power.edges())
    if (colors[e.u] == colors[e.v]) return false;
  return true;
}

}  // namespace

TEST_CASE("library Luby variants equal their MPC programs") {
  Rng rng(3);
  MpcConfig cfg{0.8, 256, {}, {}};
  for (int trial = 0; trial < 10; ++trial) {
    auto g = random_bounded(5 + rng.below(40), 1 + rng.below(6), 1, 2, rng.next());
    auto meta = make_meta(g, BitString::expand(rng.next(), 16 * kLubySeedBits));
    CHECK(run(LubyProgram{}, g, cfg, meta).labeling == membership_labeling(randomized_large_is(g, meta)));
    CHECK(run(AmplifiedLubyProgram{16}, g, cfg, meta).labeling ==
          membership_labeling(amplified_large_is(g, meta, 16).joined));
    CHECK(run(DeterministicLubyProgram{}, g, cfg, meta).labeling ==
          membership_labeling(deterministic_large_is(g).joined));
  }
}

TEST_CASE("randomized large IS: small cases and the C100 mean") {
  auto meta1 = make_meta(path_graph(1), BitString::expand(1, kLubySeedBits));
  CHECK(randomized_large_is(path_graph(1), meta1) == std::vector<bool>{true});
  auto k2 = path_graph(2);
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(count_in(randomized_large_is(k2, make_meta(k2, BitString::expand(s, 256)))) == 1);

  auto c = cycle_graph(100);
  Rational expectation = 0;
  for (NodeIndex v = 0; v < c.node_count(); ++v) expectation += Rational(1, c.degree(v) + 1);
  CHECK(expectation == Rational(100, 3));
  std::size_t total = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    auto joined = randomized_large_is(c, make_meta(c, BitString::expand(s, 256)));
    CHECK(validate(independent_set_problem(), c, membership_labeling(joined)).valid);
    total += count_in(joined);
  }
  CHECK(static_cast<double>(total) / 1000 >= 0.97 * to_double(expectation));
}

TEST_CASE("amplified large IS") {
  auto c9 = cycle_graph(9);
  auto meta = make_meta(c9, BitString::expand(4, 16 * 256));
  CHECK(amplified_large_is(c9, meta, 1).joined == randomized_large_is(c9, meta));
  LegalGraph isolated = from_edges(6, {});
  CHECK(count_in(amplified_large_is(isolated, make_meta(isolated, BitString::expand(1, 4096)), 5).joined) == 6);

  std::size_t single_ok = 0, amplified_ok = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    auto m = make_meta(c9, BitString::expand(1000 + s, 16 * 256));
    single_ok += count_in(randomized_large_is(c9, m)) * 6 >= 9;
    auto a = amplified_large_is(c9, m, 16);
    CHECK(a.sizes.size() == 16);
    CHECK(a.sizes[a.branch] == *std::max_element(a.sizes.begin(), a.sizes.end()));
    amplified_ok += count_in(a.joined) >= 2;
  }
  MESSAGE("C9 single-branch success " << single_ok << "/1000");
  CHECK(amplified_ok >= 990);
}

TEST_CASE("deterministic large IS") {
  LegalGraph isolated = from_edges(5, {});
  CHECK(count_in(deterministic_large_is(isolated).joined) == 5);
  auto k5 = clique_graph(5);
  CHECK(count_in(deterministic_large_is(k5).joined) == 1);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& g : connected_graphs(n)) {
      auto r = deterministic_large_is(g);
      CHECK(validate(independent_set_problem(), g, membership_labeling(r.joined)).valid);
      CHECK(count_in(r.joined) * (4 * g.max_degree() + 1) >= n);
      CHECK_FALSE(r.sparsified.has_value());
    }
  }
  auto dense = random_regular(60, 24, 5);
  auto r = deterministic_large_is(dense);
  REQUIRE(r.sparsified.has_value());
  CHECK(r.sparsified->max_induced_degree < 24);
  CHECK(validate(independent_set_problem(), dense, membership_labeling(r.joined)).valid);
  REQUIRE(r.bound_constant.has_value());
  MESSAGE("sparsified path: |I| = " << count_in(r.joined) << ", c = " << rational_string(*r.bound_constant));
  CHECK(count_in(r.joined) > 0);
  LargeIsOptions no_sparse{64, Exec::parallel};
  CHECK_FALSE(deterministic_large_is(dense, no_sparse).sparsified.has_value());
}

TEST_CASE("reduce_id_space colours the power graph properly") {
  CHECK(reduce_id_space(path_graph(1), 4) == std::vector<std::uint32_t>{0});
  auto k2 = reduce_id_space(path_graph(2), 6);
  CHECK(std::set<std::uint32_t>(k2.begin(), k2.end()) == std::set<std::uint32_t>{0, 1});
  auto c8 = cycle_graph(8);
  auto colors = reduce_id_space(c8, 2);
  CHECK(*std::max_element(colors.begin(), colors.end()) < 5);
  CHECK(proper_on(graph_power(c8, 2), colors));
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_bounded(2 + rng.below(63), 1 + rng.below(5), 1, 2, rng.next());
    for (std::uint32_t r : {2u, 4u}) {
      auto col = reduce_id_space(g, r);
      auto power = graph_power(g, r);
      CHECK(proper_on(power, col));
      CHECK(*std::max_element(col.begin(), col.end()) <= power.max_degree());
    }
  }
}

TEST_CASE("extendability clauses") {
  auto p3 = path_graph(3, IdPolicy::sequential());
  auto lab = [](std::vector<Label> v) { return Labeling{LabelDomain::nodes, std::move(v)}; };
  CHECK(check_extendable(p3, lab({kBottom, kBottom, kBottom})) == Extendability::ok);
  CHECK(check_extendable(p3, lab({kIn, kOut, kBottom})) == Extendability::ok);
  CHECK(check_extendable(p3, lab({kIn, kIn, kOut})) == Extendability::in_not_independent);
  CHECK(check_extendable(p3, lab({kOut, kBottom, kBottom})) == Extendability::out_not_dominated);
  CHECK(check_extendable(p3, lab({kIn, kBottom, kBottom})) == Extendability::bottom_next_to_in);
}

TEST_CASE("extendable MIS") {
  auto meta_of = [](const LegalGraph& g) { return make_meta(g, BitString::expand(1, 1024)); };
  LegalGraph empty;
  CHECK(extendable_mis(empty, kRoomy, meta_of(empty)).labeling.values.empty());
  auto k3 = clique_graph(3);
  auto r3 = extendable_mis(k3, kRoomy, meta_of(k3));
  CHECK(count_label(r3.labeling, kIn) == 1);
  CHECK(count_label(r3.labeling, kOut) == 2);

  auto g = random_regular(128, 4, 9);
  ExtendableMisOptions opts;
  opts.keep_history = true;
  auto r = extendable_mis(g, kRoomy, meta_of(g), opts);
  CHECK(validate(mis_problem(), g, r.labeling).valid);
  CHECK(r.iterations.size() <= 10);
  CHECK(r.history.size() == r.iterations.size());
  for (std::size_t i = 0; i < r.history.size(); ++i) {
    CHECK(check_extendable(g, r.history[i]) == Extendability::ok);
    CHECK(r.iterations[i].seed.achieved <= r.iterations[i].seed.average);
    CHECK(static_cast<std::size_t>(count_label(r.history[i], kBottom)) == r.iterations[i].undecided);
  }
  CHECK(r.iterations.front().colors <= 17);
  CHECK(summarize(r.trace).max_peak_words <= kRoomy.budget(128));
  MESSAGE("4-regular n=128: " << r.iterations.size() << " iterations, " << r.trace.rounds << " rounds");

  ExtendableMisOptions capped;
  capped.iteration_cap = 1;
  CHECK_THROWS_AS(extendable_mis(g, kRoomy, meta_of(g), capped), IterationCapExceeded);
  CHECK_THROWS_AS(extendable_mis(g, MpcConfig{0.3, 2, {}, {}}, meta_of(g)), SpaceExceeded);
}

TEST_CASE("maximal matching through the line graph") {
  auto meta_of = [](const LegalGraph& g) { return make_meta(g, BitString::expand(2, 1024)); };
  auto k2 = path_graph(2);
  CHECK(maximal_matching(k2, kRoomy, meta_of(k2)).labeling.values == std::vector<Label>{kIn});
  auto p3 = path_graph(3);
  CHECK(count_label(maximal_matching(p3, kRoomy, meta_of(p3)).labeling, kIn) == 1);
  auto c6 = cycle_graph(6);
  auto m6 = maximal_matching(c6, kRoomy, meta_of(c6));
  CHECK(count_label(m6.labeling, kIn) >= 2);
  CHECK(validate(maximal_matching_problem(), c6, m6.labeling).valid);
  Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    auto g = random_bounded(20 + rng.below(60), 2 + rng.below(5), 1, 2, rng.next());
    auto m = maximal_matching(g, kRoomy, meta_of(g));
    CHECK(validate(matching_problem(), g, m.labeling).valid);
    CHECK(validate(maximal_matching_problem(), g, m.labeling).valid);
  }
}
