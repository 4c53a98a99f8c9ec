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

#ifndef MPCLAB_REPORT_HPP
#define MPCLAB_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "mpclab/registry.hpp"

namespace mpclab {

struct RunReport {
  std::string algorithm;
  std::size_t n = 0;
  double delta = 0;
  std::uint32_t rounds = 0;
  std::uint64_t peak_words = 0;
  bool valid = false;
  std::string seed_hex;
};

struct ExperimentConfig {
  LegalGraph graph;
  std::string algorithm;
  MpcConfig cfg{0.5, 8, {}, {}};
  std::string seed_hex = "0x1";
  std::optional<std::uint64_t> estimate;
  std::size_t reps = 1;
  AlgorithmParams params;
};

struct ExperimentResult {
  std::vector<RunReport> runs;  // by repetition
  std::vector<Labeling> labelings;
  bool all_valid() const;
};

// Repetition 0 uses the configured seed key, repetition i appends i as four hex digits.
std::string repetition_seed(const std::string& seed_hex, std::size_t rep);

// Repetitions run in parallel and are merged by index.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// One object for a single run, otherwise an array; fields in declaration order.
std::string run_report_json(const std::vector<RunReport>& runs);
// rep,algorithm,n,delta,rounds,peak_words,valid,seed_hex
std::string run_report_csv(const std::vector<RunReport>& runs);

// Header line plus rows; cells containing ',', '"' or newlines are quoted.
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace mpclab

#endif  // MPCLAB_REPORT_HPP
