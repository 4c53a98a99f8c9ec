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

#include <map>

#include "doctest.h"
#include "mpclab/hashing.hpp"

using namespace mpclab;

TEST_CASE("kwise_eval") {
  auto f = KWiseFamily::make(5, 2, 5);
  std::vector<std::uint64_t> zero{0, 0}, s{1, 2};
  for (std::uint64_t x = 0; x < 5; ++x) CHECK(kwise_eval(f, zero, x) == 0);
  CHECK(kwise_eval(f, s, 3) == 2);
  auto c = KWiseFamily::make(7, 1, 7);
  std::vector<std::uint64_t> a{4};
  for (std::uint64_t x = 0; x < 7; ++x) CHECK(kwise_eval(c, a, x) == 4);
  CHECK_THROWS_AS(kwise_eval(f, s, 5), HashError);
  CHECK_THROWS_AS(kwise_eval(f, a, 1), HashError);
  // Naive sum of a_i x^i against Horner.
  auto g = KWiseFamily::make(101, 4, 101);
  std::vector<std::uint64_t> q{7, 33, 91, 5};
  for (std::uint64_t x = 0; x < 101; ++x) {
    std::uint64_t want = 0, pw = 1;
    for (auto coef : q) {
      want = (want + coef * pw) % 101;
      pw = pw * x % 101;
    }
    CHECK(kwise_eval(g, q, x) == want);
    CHECK(kwise_eval(g, q, x) == kwise_eval(g, q, x));
  }
}

TEST_CASE("family construction errors") {
  CHECK_THROWS_AS(KWiseFamily::make(6, 2, 5), HashError);
  CHECK_THROWS_AS(KWiseFamily::make(5, 0, 5), HashError);
  CHECK_THROWS_AS(KWiseFamily::make(5, 2, 6), HashError);
  auto f = KWiseFamily::make(13, 3, 11);
  CHECK(KWiseFamily::parse(f.descriptor()) == f);
  CHECK(f.descriptor() == "kwise p=13 k=3 dom=11");
}

TEST_CASE("enumerate_seeds") {
  CHECK(enumerate_seeds(KWiseFamily::make(3, 1, 3)).size() == 3);
  CHECK(enumerate_seeds(KWiseFamily::make(5, 2, 5)).size() == 25);
  CHECK(enumerate_seeds(KWiseFamily::make(13, 2, 13)).size() == 169);
  CHECK_THROWS_AS(enumerate_seeds(KWiseFamily::make(13, 3, 13), 100), HashError);
  auto e = enumerate_seeds(KWiseFamily::make(5, 3, 5));
  std::uint64_t i = 0;
  Coefficients prev;
  e.for_each([&](std::span<const std::uint64_t> s) {
    Coefficients c(s.begin(), s.end());
    CHECK(c == e.decode(i));
    if (i) CHECK(prev < c);
    prev = c;
    ++i;
    return true;
  });
  CHECK(i == 125);
}

TEST_CASE("independence is exact for polynomial families") {
  // Direct tally for p=5, k=2, t=2.
  auto f = KWiseFamily::make(5, 2, 5);
  std::uint64_t worst = 0;
  for (std::uint64_t x1 = 0; x1 < 5; ++x1)
    for (std::uint64_t x2 = 0; x2 < 5; ++x2) {
      if (x1 == x2) continue;
      std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> hits;
      for (std::uint64_t a0 = 0; a0 < 5; ++a0)
        for (std::uint64_t a1 = 0; a1 < 5; ++a1) ++hits[{(a0 + a1 * x1) % 5, (a0 + a1 * x2) % 5}];
      for (std::uint64_t y1 = 0; y1 < 5; ++y1)
        for (std::uint64_t y2 = 0; y2 < 5; ++y2) {
          std::uint64_t c = hits[{y1, y2}];
          worst = std::max(worst, c > 1 ? c - 1 : 1 - c);
        }
    }
  CHECK(worst == 0);
  CHECK(verify_independence(f, 2) == 0);
  CHECK(verify_independence(f, 1) == 0);
  CHECK_THROWS_AS(verify_independence(f, 3), HashError);
  for (std::uint64_t p : {3, 5, 7, 13}) {
    for (std::uint32_t k = 1; k <= 3; ++k) {
      auto g = KWiseFamily::make(p, k, p);
      for (std::uint32_t t = 1; t <= k; ++t) {
        CHECK(verify_independence(g, t, Exec::serial) == 0);
        CHECK(verify_independence(g, t, Exec::parallel) == 0);
      }
    }
  }
}

TEST_CASE("interpolation and seed lines") {
  auto f = KWiseFamily::make(13, 3, 13);
  Coefficients s{4, 9, 2};
  std::vector<std::uint64_t> pts{0, 5, 11}, vals;
  for (auto x : pts) vals.push_back(kwise_eval(f, s, x));
  CHECK(interpolate_seed(f, pts, vals) == s);
  auto line = format_seed(f, s, Rational(7, 3));
  CHECK(line == "seed family=kwise p=13 k=3 dom=13 coeffs=4,9,2 cost=7/3");
  auto parsed = parse_seed(line);
  CHECK(parsed.family == f);
  CHECK(parsed.coeffs == s);
  CHECK(*parsed.cost == Rational(7, 3));
  CHECK_THROWS_AS(parse_seed("seed family=kwise p=13 k=3 dom=13 coeffs=4,9"), HashError);
}

TEST_CASE("nano PRG search") {
  PrgSpec empty{1, 2, {}, Rational(0)};
  auto r0 = nano_prg_search(empty);
  REQUIRE(r0.table);
  CHECK(r0.deviation == 0);

  PrgSpec first{1, 2, {bit_projection_test(2, 0)}, Rational(0)};
  CHECK(prg_deviation(first, PrgTable{2, {0b10, 0b01}}) == 0);
  auto r1 = nano_prg_search(first);
  REQUIRE(r1.table);
  CHECK(r1.mode == PrgSearchMode::exhaustive);
  CHECK(prg_deviation(first, *r1.table) == 0);

  PrgSpec proj{2, 4, {}, Rational(1, 4)};
  for (std::uint32_t b = 0; b < 4; ++b) proj.tests.push_back(bit_projection_test(4, b));
  auto r2 = nano_prg_search(proj);
  REQUIRE(r2.table);
  CHECK(prg_deviation(proj, *r2.table) <= Rational(1, 4));
  CHECK(parse_prg_table(format_prg_table(*r2.table), 4) == *r2.table);

  // 16 entries of 8 bits is beyond exhaustive range; random restarts find a table.
  PrgSpec wide{4, 8, {parity_test(0xff), threshold_test(8, 4)}, Rational(1, 8)};
  auto r3 = nano_prg_search(wide);
  CHECK(r3.mode == PrgSearchMode::random_restarts);
  REQUIRE(r3.table);
  CHECK(prg_deviation(wide, *r3.table) <= Rational(1, 8));

  // Two entries realize only probabilities 0, 1/2, 1; the test needs 3/4.
  PrgSpec hard{1, 2, {threshold_test(2, 1)}, Rational(0)};
  auto r4 = nano_prg_search(hard);
  CHECK_FALSE(r4.table);
  CHECK(r4.examined == 16);
  CHECK_THROWS_AS(nano_prg_search(PrgSpec{3, 3, {}, Rational(0)}), HashError);
}
