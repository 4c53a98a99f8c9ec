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

#include "mpclab/report.hpp"

#include <exception>
#include <iomanip>
#include <json.hpp>
#include <sstream>

namespace mpclab {

bool ExperimentResult::all_valid() const {
  for (const auto& r : runs)
    if (!r.valid) return false;
  return true;
}

std::string repetition_seed(const std::string& seed_hex, std::size_t rep) {
  if (rep == 0) return seed_hex;
  std::ostringstream os;
  os << seed_hex << std::hex << std::setw(4) << std::setfill('0') << rep;
  return os.str();
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto alg = make_algorithm(cfg.algorithm, cfg.params);
  cfg.cfg.validate();
  ExperimentResult out;
  out.runs.resize(cfg.reps);
  out.labelings.resize(cfg.reps);
  std::exception_ptr failure;
  auto one = [&](std::size_t rep) {
    const std::string key = repetition_seed(cfg.seed_hex, rep);
    const auto meta = make_meta(cfg.graph, seed_from_text(key, kDefaultSeedBits), cfg.estimate);
    auto run = alg.run(cfg.graph, cfg.cfg, meta, {});
    const auto summary = summarize(run.trace);
    out.runs[rep] = {alg.name, cfg.graph.node_count(), cfg.cfg.delta, summary.rounds, summary.max_peak_words,
                     validate(alg.problem, cfg.graph, run.labeling).valid, key};
    out.labelings[rep] = std::move(run.labeling);
  };
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(cfg.reps); ++rep) {
    try {
      one(static_cast<std::size_t>(rep));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace {

nlohmann::ordered_json to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["algorithm"] = r.algorithm;
  j["n"] = r.n;
  j["delta"] = r.delta;
  j["rounds"] = r.rounds;
  j["peak_words"] = r.peak_words;
  j["valid"] = r.valid;
  j["seed_hex"] = r.seed_hex;
  return j;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + '"';
}

}  // namespace

std::string format_double(double x) { return nlohmann::json(x).dump(); }

std::string run_report_json(const std::vector<RunReport>& runs) {
  if (runs.size() == 1) return to_json(runs[0]).dump(2) + "\n";
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : runs) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::string run_report_csv(const std::vector<RunReport>& runs) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    rows.push_back({std::to_string(i), r.algorithm, std::to_string(r.n), format_double(r.delta),
                    std::to_string(r.rounds), std::to_string(r.peak_words), r.valid ? "true" : "false", r.seed_hex});
  }
  return csv_table({"rep", "algorithm", "n", "delta", "rounds", "peak_words", "valid", "seed_hex"}, rows);
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

}  // namespace mpclab
