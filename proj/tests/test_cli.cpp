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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "mpclab/graph_io.hpp"
#include "mpclab/problems.hpp"

using namespace mpclab;

namespace {

const std::string kCli = MPCLAB_CLI;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome sh(const std::string& cmd) {
  Outcome o;
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) o.out.append(buf, got);
  const int status = pclose(p);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) { return std::string(MPCLAB_TMP) + "/cli_" + name; }

}  // namespace

TEST_CASE("gen piped into run") {
  const std::string labels = tmp("labels.txt");
  auto o = sh(kCli + " gen cycle 12 | " + kCli + " run deterministic_large_is --labels " + labels);
  CHECK(o.code == 0);
  CHECK(o.out.find("\"valid\": true") != std::string::npos);
  CHECK(o.out.rfind("{\n  \"algorithm\": \"deterministic_large_is\",\n  \"n\": 12,", 0) == 0);

  auto g = graph_from_text(sh(kCli + " gen cycle 12").out);
  std::istringstream in(slurp(labels));
  Labeling l{LabelDomain::nodes, {}};
  for (std::string line; std::getline(in, line);) l.values.push_back(std::stoll(line));
  REQUIRE(l.values.size() == 12);
  CHECK(validate(independent_set_problem(), g, l).valid);
  CHECK(count_label(l, kIn) >= 2);
}

TEST_CASE("lift sweep agrees on every row") {
  auto o = sh(kCli + " lift sweep --hmax 4 --dmax 4");
  CHECK(o.code == 0);
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "h_assignment,case_predicted,case_structural,agree");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "true");
  }
  CHECK(rows > 1000);
  CHECK(sh(kCli + " lift sweep --hmax 4 --dmax 4").out == o.out);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(sh(kCli + " run < /dev/null").code == 2);
  CHECK(sh(kCli + " run no_such_algorithm < /dev/null").code == 2);
  CHECK(sh(kCli).code == 2);
  CHECK(sh(kCli + " gen cycle 5 --bogus").code == 2);
  CHECK(sh(kCli + " gen nonsense 5").code == 2);
  CHECK(sh(kCli + " run constant --format xml < /dev/null").code == 2);
  CHECK(sh("echo 'nodes x' | " + kCli + " run constant").code == 2);
}

TEST_CASE("reports") {
  const std::string graph = tmp("c9.txt");
  REQUIRE(sh(kCli + " gen cycle 9 --out " + graph).code == 0);
  auto empty = sh(kCli + " run randomized_large_is --reps 0 --format csv --input " + graph);
  CHECK(empty.code == 0);
  CHECK(empty.out == "rep,algorithm,n,delta,rounds,peak_words,valid,seed_hex\n");

  auto one = sh(kCli + " run randomized_large_is --format csv --seed 0x5 --input " + graph);
  CHECK(std::count(one.out.begin(), one.out.end(), '\n') == 2);

  const std::string cmd = kCli + " run amplified_large_is --reps 4 --format csv --seed 0xabc --input " + graph;
  auto a = sh(cmd);
  CHECK(a.code == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 5);
  CHECK(sh(cmd).out == a.out);
  CHECK(sh("MPCLAB_THREADS=1 " + cmd).out == a.out);

  const std::string file = tmp("report.json");
  REQUIRE(sh(kCli + " run constant --out " + file + " --input " + graph).code == 0);
  CHECK(slurp(file) == sh(kCli + " run constant --input " + graph).out);
}

TEST_CASE("validation failures exit with 1") {
  // The constant In labeling is not an independent set on an edge.
  CHECK(sh(kCli + " gen path 2 | " + kCli + " run constant").code == 0);
  auto o = sh(kCli + " gen path 2 | " + kCli + " run constant --constant 1");
  CHECK(o.code == 1);
  CHECK(o.out.find("\"valid\": false") != std::string::npos);
  // Space exceeded is a module error.
  CHECK(sh(kCli + " gen cycle 100 | " + kCli + " run amplified_large_is --delta 0.3 --space-constant 4").code == 1);
}

TEST_CASE("other subcommands") {
  const std::string r8 = tmp("r8.txt");
  REQUIRE(sh(kCli + " gen regular 64 8 --seed 3 --out " + r8).code == 0);
  auto lll = sh(kCli + " lll --input " + r8);
  CHECK(lll.code == 0);
  CHECK(lll.out.find("\"mode\": \"single_shot\"") != std::string::npos);

  auto derand = sh(kCli + " derand --format csv --input " + r8);
  CHECK(derand.code == 0);
  CHECK(derand.out.rfind("n,max_degree,sparsified,kept,luby_seed,achieved,average,size,bound_constant,valid\n", 0) == 0);

  const std::string tc = tmp("tc.txt");
  REQUIRE(sh(kCli + " gen two_cycles 10 --out " + tc).code == 0);
  auto st = sh(kCli + " stability amplified_large_is --seed 0x3 --input " + tc);
  CHECK(st.code == 0);
  CHECK(st.out.find("\"stable\": false") != std::string::npos);
  CHECK(st.out.find("\"replayed\": true") != std::string::npos);
  CHECK(sh(kCli + " stability ball_local_is --budget 60 --input " + tc).out.find("\"stable\": true") !=
        std::string::npos);

  auto seeds = sh(kCli + " seedsearch amplified_large_is --max-nodes 4 --bits 10");
  CHECK(seeds.code == 0);
  CHECK(seeds.out.find("\"corpus\": 17") != std::string::npos);

  const std::string p1 = tmp("p1.txt"), p2 = tmp("p2.txt");
  REQUIRE(sh(kCli + " gen path 6 --sequential-ids --out " + p1).code == 0);
  std::string text = slurp(p1);
  const auto at = text.find("node 5 5 ");
  REQUIRE(at != std::string::npos);
  text.replace(at, 9, "node 5 9 ");
  std::ofstream(p2) << text;
  auto sens = sh(kCli + " sensitivity ball_local_is --left " + p1 + " --right " + p2 + " -D 3");
  CHECK(sens.code == 0);
  CHECK(sens.out.find("\"fraction\": \"0\"") != std::string::npos);
  CHECK(sh(kCli + " sensitivity ball_local_is --left " + p1 + " --right " + p2 + " -D 5").code == 2);

  auto rep = sh(kCli + " lift replicate --copies 3 --isolated 1 --input " + p1);
  CHECK(rep.code == 0);
  CHECK(graph_from_text(rep.out).node_count() == 19);
}
