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

#include <doctest.h>

#include "mpclab/generators.hpp"
#include "mpclab/report.hpp"

using namespace mpclab;

TEST_CASE("csv tables") {
  CHECK(csv_table({"a", "b"}, {}) == "a,b\n");
  CHECK(csv_table({"a", "b"}, {{"1", "x,y"}}) == "a,b\n1,\"x,y\"\n");
  CHECK(csv_table({"q"}, {{"say \"hi\""}}) == "q\n\"say \"\"hi\"\"\"\n");
  CHECK(run_report_csv({}) == "rep,algorithm,n,delta,rounds,peak_words,valid,seed_hex\n");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.8) == "0.8");
}

TEST_CASE("run reports") {
  RunReport r{"constant", 3, 0.5, 1, 4, true, "0x1"};
  CHECK(run_report_json({r}) ==
        "{\n  \"algorithm\": \"constant\",\n  \"n\": 3,\n  \"delta\": 0.5,\n  \"rounds\": 1,\n  \"peak_words\": 4,\n"
        "  \"valid\": true,\n  \"seed_hex\": \"0x1\"\n}\n");
  CHECK(run_report_json({}) == "[]\n");
  CHECK(run_report_json({r, r}).front() == '[');
  CHECK(run_report_csv({r}) == "rep,algorithm,n,delta,rounds,peak_words,valid,seed_hex\n0,constant,3,0.5,1,4,true,0x1\n");
}

TEST_CASE("experiments") {
  CHECK(repetition_seed("0xab", 0) == "0xab");
  CHECK(repetition_seed("0xab", 3) == "0xab0003");

  ExperimentConfig cfg;
  cfg.graph = cycle_graph(9);
  cfg.algorithm = "randomized_large_is";
  cfg.cfg = {0.8, 256, {}, {}};
  cfg.seed_hex = "0x77";
  cfg.reps = 6;
  auto a = run_experiment(cfg);
  REQUIRE(a.runs.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.runs[i].seed_hex == repetition_seed("0x77", i));
    ExperimentConfig single = cfg;
    single.reps = 1;
    single.seed_hex = repetition_seed("0x77", i);
    auto one = run_experiment(single);
    CHECK(one.labelings[0] == a.labelings[i]);
    CHECK(one.runs[0].valid == a.runs[i].valid);
  }
  CHECK(run_report_csv(run_experiment(cfg).runs) == run_report_csv(a.runs));

  cfg.algorithm = "no_such";
  CHECK_THROWS_AS(run_experiment(cfg), Error);
  cfg.reps = 0;
  cfg.algorithm = "constant";
  CHECK(run_experiment(cfg).all_valid());
}
