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

#include "mpclab/bench.hpp"

#include <chrono>
#include <cstdio>

#include "mpclab/algorithms.hpp"
#include "mpclab/derandomize.hpp"
#include "mpclab/generators.hpp"
#include "mpclab/lifting.hpp"
#include "mpclab/luby.hpp"
#include "mpclab/report.hpp"

namespace mpclab {

namespace {

template <class F>
auto timed(F f, double& ms) {
  const auto t0 = std::chrono::steady_clock::now();
  auto out = f();
  ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

template <class F>
KernelTiming compare(std::string kernel, std::string size, F f) {
  KernelTiming t{std::move(kernel), std::move(size)};
  auto a = timed([&] { return f(Exec::serial); }, t.serial_ms);
  auto b = timed([&] { return f(Exec::parallel); }, t.parallel_ms);
  t.outputs_match = a == b;
  return t;
}

std::vector<std::uint64_t> ids_of(const LegalGraph& g) {
  std::vector<std::uint64_t> ids;
  for (const auto& r : g.nodes()) ids.push_back(r.id);
  return ids;
}

}  // namespace

std::vector<KernelTiming> benchmark_kernels(std::size_t scale) {
  scale = std::max<std::size_t>(scale, 1);
  std::vector<KernelTiming> out;

  const std::uint64_t p = next_prime(10 * scale);
  const auto kf = KWiseFamily::make(p, 3, p);
  out.push_back(compare("verify_independence", "p=" + std::to_string(p) + ",k=3",
                        [&](Exec e) { return verify_independence(kf, 3, e); }));

  const auto big = random_regular(2000 * scale, 6, 7);
  const auto lf = luby_family(big.node_count(), big.max_degree(), big.max_id());
  out.push_back(compare("shift_oracle_totals", "n=" + std::to_string(big.node_count()), [&](Exec e) {
    LubyShiftOracle o(big, lf, ids_of(big), LubyCost::undecided, e);
    return o.value_totals({});
  }));

  const auto small = random_regular(60 * scale, 4, 3);
  const auto ef = KWiseFamily::make(next_prime(std::max<std::uint64_t>(small.max_id() + 1, 128)), 2, small.max_id() + 1);
  const auto ids = ids_of(small);
  out.push_back(compare("enumerating_oracle_totals", "n=" + std::to_string(small.node_count()), [&](Exec e) {
    EnumeratingOracle o(
        ef,
        [&](std::span<const std::uint64_t> seed) {
          auto joined = luby_step_with_seed(small, ef, seed, ids);
          return -static_cast<Wide>(std::count(joined.begin(), joined.end(), true));
        },
        1, e);
    return o.value_totals({});
  }));

  const auto amp_graph = random_bounded(1000 * scale, 8, 1, 2, 5);
  const auto meta = make_meta(amp_graph, BitString::expand(9, 16 * kLubySeedBits));
  SeededAlgorithm luby = [](const LegalGraph& g, const MpcMeta& m) {
    return membership_labeling(randomized_large_is(g, m));
  };
  out.push_back(compare("amplify", "n=" + std::to_string(amp_graph.node_count()) + ",ell=16", [&](Exec e) {
    auto r = amplify(luby, large_is_problem(2, 2), amp_graph, 16, meta, kLubySeedBits, e);
    return std::pair(r.labeling, r.valid_nodes);
  }));

  out.push_back(compare("stconn_sweep", "hosts<=5,D<=3", [&](Exec e) {
    SweepOptions o;
    o.max_host_nodes = 5;
    o.max_D = 3;
    o.pairs = 2 * scale;
    o.exec = e;
    return sweep_csv(stconn_sweep(o));
  }));
  return out;
}

std::string kernel_timings_csv(const std::vector<KernelTiming>& t) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& k : t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", k.parallel_ms > 0 ? k.serial_ms / k.parallel_ms : 0.0);
    rows.push_back({k.kernel, k.size, format_double(k.serial_ms), format_double(k.parallel_ms), buf,
                    k.outputs_match ? "true" : "false"});
  }
  return csv_table({"kernel", "size", "serial_ms", "parallel_ms", "speedup", "outputs_match"}, rows);
}

}  // namespace mpclab
