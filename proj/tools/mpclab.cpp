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

#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "mpclab/algorithms.hpp"
#include "mpclab/bench.hpp"
#include "mpclab/derandomize.hpp"
#include "mpclab/generators.hpp"
#include "mpclab/graph_io.hpp"
#include "mpclab/lifting.hpp"
#include "mpclab/lll.hpp"
#include "mpclab/registry.hpp"
#include "mpclab/report.hpp"

using namespace mpclab;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  double delta = 0.8;
  std::uint64_t space_constant = 256;
  std::string seed = "0x1";
  std::optional<std::uint64_t> estimate;
  std::size_t reps = 1;
  std::string out = "-";
  std::string format = "json";
  std::string input = "-";
};

void add_common(CLI::App* app, Common& c, bool graph_input = true) {
  app->add_option("--delta", c.delta, "local space exponent")->capture_default_str();
  app->add_option("--space-constant", c.space_constant, "local space constant")->capture_default_str();
  app->add_option("--seed", c.seed, "seed key (hex)")->capture_default_str();
  app->add_option("--estimate", c.estimate, "size estimate N");
  app->add_option("--reps", c.reps, "repetitions")->capture_default_str();
  app->add_option("--out", c.out, "output path, - for stdout")->capture_default_str();
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  if (graph_input) app->add_option("--input", c.input, "graph file, - for stdin")->capture_default_str();
}

MpcConfig mpc_config(const Common& c) {
  MpcConfig cfg{c.delta, c.space_constant, {}, {}};
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

LegalGraph load_graph(const std::string& path) {
  try {
    if (path == "-") return read_graph(std::cin);
    return read_graph_file(path);
  } catch (const Error& e) {
    throw UsageError(std::string("cannot read graph: ") + e.what());
  }
}

RegisteredAlgorithm lookup(const std::string& name, const AlgorithmParams& params) {
  try {
    return make_algorithm(name, params);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error("cannot write " + c.out);
  f << text;
}

// A flat object as a one-row CSV.
std::string flat_csv(const Json& j) {
  std::vector<std::string> header, row;
  for (const auto& [k, v] : j.items()) {
    header.push_back(k);
    row.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  }
  return csv_table(header, {row});
}

void emit_object(const Common& c, const Json& j) { emit(c, c.format == "csv" ? flat_csv(j) : j.dump(2) + "\n"); }

std::string rational_json(const Rational& r) { return rational_string(r); }

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("MPCLAB_THREADS")) {
    const int threads = std::atoi(t);
    if (threads > 0) omp_set_num_threads(threads);
  }

  CLI::App app{"mpclab: low-space MPC laboratory"};
  app.require_subcommand(1);
  Common c;
  AlgorithmParams params;
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--branches", params.reps, "amplification branches")->capture_default_str();
    sub->add_option("--threshold", params.sparsify_threshold, "sparsification degree threshold")->capture_default_str();
    sub->add_option("--iteration-cap", params.iteration_cap, "extendable MIS iteration cap")->capture_default_str();
    sub->add_option("--radius", params.ball_radius, "ball radius for ball_local_is")->capture_default_str();
    sub->add_option("--constant", params.constant, "label output by the constant algorithm")->capture_default_str();
  };

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph");
  std::string family;
  std::vector<std::uint64_t> gen_params;
  std::uint64_t gen_seed = 1;
  bool sequential = false;
  gen->add_option("family", family, "graph family")->required()->check(CLI::IsMember(generator_families()));
  gen->add_option("params", gen_params, "family parameters");
  gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  gen->add_flag("--sequential-ids", sequential, "IDs 0..n-1 instead of a random permutation");
  gen->add_option("--out", c.out, "output path")->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "run a registered algorithm and validate its output");
  std::string algorithm;
  std::string labels_out;
  run->add_option("algorithm", algorithm, "algorithm name")->required();
  run->add_option("--labels", labels_out, "write the repetition-0 labeling to this file");
  add_common(run, c);
  add_params(run);

  // derand
  auto* derand = app.add_subcommand("derand", "deterministic large independent set with its seed choices");
  add_common(derand, c);
  add_params(derand);

  // lll
  auto* lll = app.add_subcommand("lll", "sinkless orientation through the derandomized LLL");
  std::string orientation_out;
  std::uint64_t resample_cap = 100000;
  lll->add_option("--orientation", orientation_out, "write the orientation to this file");
  lll->add_option("--resample-cap", resample_cap, "Moser-Tardos fallback cap")->capture_default_str();
  add_common(lll, c);

  // lift
  auto* lift = app.add_subcommand("lift", "lower-bound constructions");
  lift->require_subcommand(1);
  auto* sweep = lift->add_subcommand("sweep", "s-t simulation agreement sweep");
  SweepOptions so;
  sweep->add_option("--hmax", so.max_host_nodes, "largest host size")->capture_default_str();
  sweep->add_option("--dmax", so.max_D, "largest D")->capture_default_str();
  sweep->add_option("--pairs", so.pairs, "random graph pairs per D")->capture_default_str();
  sweep->add_option("--pair-nodes", so.max_pair_nodes, "largest pair graph size")->capture_default_str();
  sweep->add_option("--seed", so.seed, "pair seed")->capture_default_str();
  sweep->add_option("--out", c.out, "output path")->capture_default_str();
  std::string sweep_format = "csv";
  sweep->add_option("--format", sweep_format, "csv rows or a json summary")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  auto* replicate = lift->add_subcommand("replicate", "replication graph of the input");
  std::size_t copies = 2, isolated = 0;
  replicate->add_option("--copies", copies, "copies of the input")->capture_default_str();
  replicate->add_option("--isolated", isolated, "isolated nodes")->capture_default_str();
  replicate->add_option("--input", c.input, "graph file")->capture_default_str();
  replicate->add_option("--out", c.out, "output path")->capture_default_str();

  // stability
  auto* stability = app.add_subcommand("stability", "component-stability tester");
  StabilityOptions st;
  stability->add_option("algorithm", algorithm, "algorithm name")->required();
  stability->add_option("--budget", st.budget, "perturbation x seed trials")->capture_default_str();
  stability->add_option("--seeds", st.seeds, "seeds tried")->capture_default_str();
  add_common(stability, c);
  add_params(stability);

  // sensitivity
  auto* sensitivity = app.add_subcommand("sensitivity", "center-output sensitivity of two centered graphs");
  std::string left, right;
  std::uint32_t radius = 1, seed_bits = 8;
  std::size_t n_ctx = 0, delta_ctx = 0;
  std::optional<std::uint64_t> samples;
  NodeIndex left_center = 0, right_center = 0;
  sensitivity->add_option("algorithm", algorithm, "algorithm name")->required();
  sensitivity->add_option("--left", left, "left graph file")->required();
  sensitivity->add_option("--right", right, "right graph file")->required();
  sensitivity->add_option("--left-center", left_center)->capture_default_str();
  sensitivity->add_option("--right-center", right_center)->capture_default_str();
  sensitivity->add_option("-D,--identical-radius", radius, "radius of identity")->capture_default_str();
  sensitivity->add_option("--n-ctx", n_ctx, "context size (default: smallest that fits)");
  sensitivity->add_option("--delta-ctx", delta_ctx, "context maximum degree (default: graphs' maximum)");
  sensitivity->add_option("--seed-bits", seed_bits, "log2 of the enumerated seed space")->capture_default_str();
  sensitivity->add_option("--samples", samples, "sample this many seeds instead of enumerating");
  add_common(sensitivity, c, false);
  add_params(sensitivity);

  // seedsearch
  auto* seedsearch = app.add_subcommand("seedsearch", "universal seed over labeled paths");
  std::size_t max_nodes = 4;
  std::uint32_t space_bits = 10;
  seedsearch->add_option("algorithm", algorithm, "algorithm name")->required();
  seedsearch->add_option("--max-nodes", max_nodes, "largest path in the corpus")->capture_default_str();
  seedsearch->add_option("--bits", space_bits, "log2 of the seed space")->capture_default_str();
  add_common(seedsearch, c, false);
  add_params(seedsearch);

  // bench
  auto* bench = app.add_subcommand("bench", "serial vs OpenMP kernel timings");
  std::size_t scale = 1;
  bench->add_option("--scale", scale, "input scale")->capture_default_str();
  bench->add_option("--out", c.out, "output path")->capture_default_str();
  bench->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (gen->parsed()) {
      IdPolicy ids = sequential ? IdPolicy::sequential() : IdPolicy::shuffled(gen_seed);
      LegalGraph g;
      try {
        g = generate(family, gen_params, gen_seed, ids);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      emit(c, graph_to_text(g));
      return kPass;
    }

    if (run->parsed()) {
      const auto alg = lookup(algorithm, params);
      ExperimentConfig ec{load_graph(c.input), alg.name, mpc_config(c), c.seed, c.estimate, c.reps, params};
      auto result = run_experiment(ec);
      emit(c, c.format == "csv" ? run_report_csv(result.runs) : run_report_json(result.runs));
      if (!labels_out.empty() && !result.labelings.empty()) {
        std::ofstream f(labels_out);
        for (Label l : result.labelings[0].values) f << (l == kBottom ? std::string("bottom") : std::to_string(l)) << '\n';
      }
      return result.all_valid() ? kPass : kInvalid;
    }

    if (derand->parsed()) {
      const auto g = load_graph(c.input);
      LargeIsOptions opts;
      opts.sparsify_threshold = params.sparsify_threshold;
      auto r = deterministic_large_is(g, opts);
      const auto l = membership_labeling(r.joined);
      const bool valid = validate(large_is_problem(4, 1), g, l).valid;
      Json j;
      j["n"] = g.node_count();
      j["max_degree"] = g.max_degree();
      j["sparsified"] = r.sparsified && r.sparsified->seed.has_value();
      j["kept"] = r.sparsified ? r.sparsified->kept : g.node_count();
      j["luby_seed"] = r.luby_seed.line();
      j["achieved"] = rational_json(r.luby_seed.achieved);
      j["average"] = rational_json(r.luby_seed.average);
      j["size"] = count_label(l, kIn);
      j["bound_constant"] = r.bound_constant ? rational_json(*r.bound_constant) : std::string("none");
      j["valid"] = valid;
      emit_object(c, j);
      return valid ? kPass : kInvalid;
    }

    if (lll->parsed()) {
      const auto g = load_graph(c.input);
      const auto inst = sinkless_instance(g);
      auto o = sinkless_orientation(g, seed_from_text(c.seed, 64).read(0, 64), resample_cap);
      const bool valid = validate(sinkless_orientation_problem(), g, o.labeling).valid;
      Json j;
      j["n"] = g.node_count();
      j["events"] = inst.lll.events().size();
      j["mode"] = to_string(o.mode);
      j["expected"] = rational_json(o.expected);
      j["resamples"] = o.resamples;
      j["valid"] = valid;
      emit_object(c, j);
      if (!orientation_out.empty()) std::ofstream(orientation_out) << format_orientation(g, o.labeling);
      return valid ? kPass : kInvalid;
    }

    if (sweep->parsed()) {
      auto s = stconn_sweep(so);
      if (sweep_format == "csv") {
        emit(c, sweep_csv(s));
      } else {
        Json j;
        j["cases"] = s.cases;
        j["agreements"] = s.agreements;
        j["case1"] = s.case1;
        j["all_agree"] = s.agreements == s.cases;
        emit(c, j.dump(2) + "\n");
      }
      return s.agreements == s.cases ? kPass : kInvalid;
    }

    if (replicate->parsed()) {
      ReplicationSpec spec{load_graph(c.input), copies, isolated, kOut, 2};
      Replication rep;
      try {
        rep = build_replication(spec);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      emit(c, graph_to_text(rep.graph));
      return kPass;
    }

    if (stability->parsed()) {
      const auto alg = lookup(algorithm, params);
      const auto g = load_graph(c.input);
      st.cfg = mpc_config(c);
      st.rng_seed = seed_from_text(c.seed, 64).read(0, 64);
      const auto meta = make_meta(g, seed_from_text(c.seed, kDefaultSeedBits), c.estimate);
      auto r = test_component_stability(alg, g, meta, st);
      Json j;
      j["algorithm"] = alg.name;
      j["claimed"] = to_string(alg.stability);
      j["stable"] = r.stable;
      j["trials"] = r.trials;
      bool replayed = true;
      if (r.witness) {
        replayed = replay_witness(alg, *r.witness, st.cfg);
        j["perturbation"] = to_string(r.witness->kind);
        j["node"] = r.witness->node;
        j["base_label"] = r.witness->base_label;
        j["perturbed_label"] = r.witness->perturbed_label;
        j["replayed"] = replayed;
      }
      emit_object(c, j);
      return replayed ? kPass : kInvalid;
    }

    if (sensitivity->parsed()) {
      const auto alg = lookup(algorithm, params);
      CenteredGraph a{load_graph(left), left_center, {}}, b{load_graph(right), right_center, {}};
      if (a.center >= a.graph.node_count() || b.center >= b.graph.node_count()) throw UsageError("center out of range");
      if (!d_radius_identical(a, b, radius)) throw UsageError("graphs are not D-radius identical");
      if (delta_ctx == 0) delta_ctx = std::max(a.graph.max_degree(), b.graph.max_degree());
      const std::size_t fit = std::max(a.graph.node_count(), b.graph.node_count()) +
                              (delta_ctx > std::min(a.graph.max_degree(), b.graph.max_degree()) ? delta_ctx + 1 : 0);
      if (n_ctx == 0) n_ctx = fit;
      SensitivitySeeds seeds{{seed_bits, kDefaultSeedBits}, samples, seed_from_text(c.seed, 64).read(0, 64)};
      SensitivityEstimate e;
      try {
        e = estimate_sensitivity(alg, a, b, radius, n_ctx, delta_ctx, seeds, mpc_config(c));
      } catch (const MpcError&) {
        throw;
      } catch (const Error& err) {
        throw UsageError(err.what());
      }
      Json j;
      j["algorithm"] = alg.name;
      j["D"] = radius;
      j["n_ctx"] = n_ctx;
      j["delta_ctx"] = delta_ctx;
      j["mode"] = e.mode == SensitivityMode::exact ? "exact" : "monte_carlo";
      j["trials"] = e.trials;
      j["differing"] = e.differing;
      j["fraction"] = rational_json(e.fraction);
      emit_object(c, j);
      return kPass;
    }

    if (seedsearch->parsed()) {
      const auto alg = lookup(algorithm, params);
      const auto cfg = mpc_config(c);
      std::vector<LegalGraph> corpus;
      for (std::size_t n = 1; n <= max_nodes; ++n)
        for (auto& g : labeled_paths(n)) corpus.push_back(std::move(g));
      SeededAlgorithm seeded = [&](const LegalGraph& g, const MpcMeta& m) { return alg.run(g, cfg, m, {}).labeling; };
      auto r = find_universal_seed(seeded, corpus, SeedSpace{space_bits, kDefaultSeedBits}, alg.problem);
      Json j;
      j["algorithm"] = alg.name;
      j["corpus"] = corpus.size();
      j["space_bits"] = space_bits;
      j["found"] = r.index.has_value();
      j["index"] = r.index ? static_cast<std::int64_t>(*r.index) : -1;
      j["runs"] = r.runs;
      emit_object(c, j);
      return r.index ? kPass : kInvalid;
    }

    if (bench->parsed()) {
      const auto t = benchmark_kernels(scale);
      if (c.format == "csv") {
        emit(c, kernel_timings_csv(t));
      } else {
        auto arr = Json::array();
        for (const auto& k : t) {
          Json j;
          j["kernel"] = k.kernel;
          j["size"] = k.size;
          j["serial_ms"] = k.serial_ms;
          j["parallel_ms"] = k.parallel_ms;
          j["outputs_match"] = k.outputs_match;
          arr.push_back(j);
        }
        emit(c, arr.dump(2) + "\n");
      }
      for (const auto& k : t)
        if (!k.outputs_match) return kInvalid;
      return kPass;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}
