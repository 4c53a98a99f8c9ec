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

#ifndef MPCLAB_LIFTING_HPP
#define MPCLAB_LIFTING_HPP

#include <optional>
#include <string>
#include <vector>

#include "mpclab/derandomize.hpp"
#include "mpclab/graph.hpp"
#include "mpclab/problems.hpp"
#include "mpclab/registry.hpp"

namespace mpclab {

// ---- Replication graphs ----

struct ReplicationSpec {
  LegalGraph base;
  std::size_t copies = 1;
  std::size_t isolated = 0;  // < |V(base)| unless zero
  Label isolated_label = kOut;
  std::uint32_t replication_exponent = 2;  // R; the copy count stands in for N^(R+2) / n
};

struct Replication {
  LegalGraph graph;  // copy c of node i is node c * n + i; isolated nodes follow
  std::size_t base_nodes = 0;
  std::size_t base_edges = 0;
};

// Copy 0 keeps the base names; every other node gets a fresh name. Isolated nodes share
// one fresh ID.
Replication build_replication(const ReplicationSpec& spec);

// L on every copy, the isolated label on the isolated nodes.
Labeling replicate_labeling(const ReplicationSpec& spec, const Replication& rep, const Labeling& l);

// valid(L', Gamma) implies valid(L, G).
bool check_replication_implication(const ProblemDescriptor& problem, const Labeling& l, const ReplicationSpec& spec);

// ---- s-t connectivity simulation graphs ----

struct StConnInstance {
  LegalGraph host;
  NodeIndex s = 0;
  NodeIndex t = 0;
  std::uint32_t D = 1;
  std::vector<std::uint32_t> h;  // values in [1, D]
  CenteredGraph left;
  CenteredGraph right;
  bool pad_degree = false;  // append a full copy of the left graph
  std::size_t pad_nodes = 0;
};

struct StConnSimulation {
  bool early_exit = false;  // s or t does not have degree 1: the answer is NO
  LegalGraph left;
  LegalGraph right;
  std::optional<NodeIndex> v_s;  // the copy of the center assigned to s, in both graphs
  std::vector<char> survivors;   // host nodes kept by the local consistency rule
};

// Throws Error when the two centered graphs are not D-radius identical or h is out of range.
StConnSimulation build_stconn_simulation(const StConnInstance& inst);

enum class StCase { case1, case2 };
const char* to_string(StCase c);

// Case 1: s and t are the ends of a path component of p <= D + 1 nodes with h(s) = D - p + 2
// and h rising by one per step up to the node before t.
StCase classify_case(const StConnInstance& inst);

// From the built graphs: case 1 when CC(v_s) is the left graph and CC'(v_s) the right one,
// case 2 when the two components coincide; nullopt when neither or both hold.
std::optional<StCase> structural_case(const StConnInstance& inst, const StConnSimulation& sim);

struct SweepHost {
  std::string name;
  LegalGraph graph;
  NodeIndex s = 0;
  NodeIndex t = 0;
};

// Paths, paths with t inside, s and t in separate paths, cycles, paths with a pendant node and
// paths with an isolated node, on 2..max_nodes nodes, sequential IDs.
std::vector<SweepHost> sweep_hosts(std::size_t max_nodes);

// Random connected pair on at most max_nodes nodes, D-radius identical around centers of
// eccentricity > D, differing as ID-labelled centered graphs.
std::pair<CenteredGraph, CenteredGraph> random_identical_pair(std::uint32_t D, std::size_t max_nodes, Rng& rng);

struct SweepRow {
  std::string host;
  std::uint32_t D = 0;
  std::size_t pair = 0;
  std::string h_assignment;
  StCase predicted = StCase::case2;
  std::optional<StCase> structural;
  bool agree() const { return structural && *structural == predicted; }
};

struct SweepOptions {
  std::size_t min_host_nodes = 2;
  std::size_t max_host_nodes = 6;
  std::uint32_t min_D = 1;
  std::uint32_t max_D = 4;
  std::size_t pairs = 20;
  std::size_t max_pair_nodes = 6;  // raised to D + 3 when smaller
  std::uint64_t seed = 1;
  bool keep_rows = true;
  Exec exec = Exec::parallel;
};

struct SweepSummary {
  std::uint64_t cases = 0;
  std::uint64_t agreements = 0;
  std::uint64_t case1 = 0;
  std::vector<SweepRow> rows;
};

SweepSummary stconn_sweep(const SweepOptions& options);

// h_assignment,case_predicted,case_structural,agree
std::string sweep_csv(const SweepSummary& summary);

// ---- Component stability ----

enum class PerturbationKind { rename, redistribute, replace_components };
const char* to_string(PerturbationKind k);

struct StabilityWitness {
  PerturbationKind kind = PerturbationKind::rename;
  LegalGraph base;
  LegalGraph perturbed;
  MpcMeta meta;
  RunOptions base_options;
  RunOptions perturbed_options;
  NodeIndex node = 0;            // in base
  NodeIndex perturbed_node = 0;  // the same node in perturbed
  Label base_label = 0;
  Label perturbed_label = 0;
};

struct StabilityReport {
  bool stable = true;
  std::optional<StabilityWitness> witness;
  std::uint64_t trials = 0;
};

struct StabilityOptions {
  std::uint64_t budget = 2000;  // perturbation x seed trials
  std::size_t seeds = 16;
  std::uint64_t rng_seed = 1;
  MpcConfig cfg{0.9, 64, {}, {}};
};

// Every trial keeps one component's ID-labelled topology, n, Delta and the seed, and compares
// the outputs on that component.
StabilityReport test_component_stability(const RegisteredAlgorithm& alg, const LegalGraph& g, const MpcMeta& meta,
                                         const StabilityOptions& options = {});

// Reruns both sides of the witness; true when the divergence reproduces.
bool replay_witness(const RegisteredAlgorithm& alg, const StabilityWitness& w, const MpcConfig& cfg);

// ---- Sensitivity ----

// Appends a star raising the maximum degree to delta_ctx (when needed) and isolated nodes up
// to n_ctx; padding IDs start at id_base. The center keeps its index.
LegalGraph embed_in_context(const CenteredGraph& g, std::size_t n_ctx, std::size_t delta_ctx, std::uint64_t id_base);

enum class SensitivityMode { exact, monte_carlo };

struct SensitivitySeeds {
  SeedSpace space{8, 4096};
  std::optional<std::uint64_t> samples;  // sample this many indices instead of enumerating
  std::uint64_t sample_seed = 1;
};

struct SensitivityEstimate {
  Rational fraction;
  std::uint64_t differing = 0;
  std::uint64_t trials = 0;
  SensitivityMode mode = SensitivityMode::exact;
};

SensitivityEstimate estimate_sensitivity(const RegisteredAlgorithm& alg, const CenteredGraph& a, const CenteredGraph& b,
                                         std::uint32_t D, std::size_t n_ctx, std::size_t delta_ctx,
                                         const SensitivitySeeds& seeds, const MpcConfig& cfg = {0.9, 64, {}, {}});

}  // namespace mpclab

#endif  // MPCLAB_LIFTING_HPP
