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

#include "mpclab/derandomize.hpp"

#include <algorithm>
#include <exception>
#include <omp.h>

#include "mpclab/luby.hpp"

namespace mpclab {

namespace {


std::uint64_t completions(const KWiseFamily& f, std::size_t fixed) {
  return saturating_pow(f.prime, f.k - static_cast<std::uint32_t>(fixed));
}

std::vector<std::uint64_t> node_ids(const LegalGraph& g) {
  std::vector<std::uint64_t> ids(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) ids[v] = g.node(v).id;
  return ids;
}

void check_inputs(const KWiseFamily& f, std::span<const std::uint64_t> inputs) {
  for (auto x : inputs)
    if (x >= f.domain_bound)
      throw HashError("hash input " + std::to_string(x) + " outside domain " + std::to_string(f.domain_bound));
}

}  // namespace

EnumeratingOracle::EnumeratingOracle(KWiseFamily f, SeedCost cost, std::int64_t scale, Exec exec, std::uint64_t cap)
    : family_(f), cost_(std::move(cost)), scale_(scale), exec_(exec) {
  if (f.seed_count() > cap)
    throw HashError("family " + f.descriptor() + " has more than " + std::to_string(cap) + " seeds");
  if (scale <= 0) throw Error("cost scale must be positive");
}

std::vector<Wide> EnumeratingOracle::value_totals(std::span<const std::uint64_t> prefix) const {
  const std::uint64_t p = family_.prime;
  if (prefix.size() >= family_.k) throw Error("prefix already fixes every coefficient");
  const std::uint64_t tails = completions(family_, prefix.size() + 1);
  std::vector<Wide> totals(p, 0);
  const std::size_t k = family_.k, i = prefix.size();
  auto tally = [&](std::uint64_t a) {
    Coefficients seed(k, 0);
    std::copy(prefix.begin(), prefix.end(), seed.begin());
    seed[i] = a;
    Wide t = 0;
    for (std::uint64_t r = 0; r < tails; ++r) {
      std::uint64_t rest = r;
      for (std::size_t j = k; j-- > i + 1;) {
        seed[j] = rest % p;
        rest /= p;
      }
      t += cost_(seed);
    }
    totals[a] = t;
  };
  if (exec_ == Exec::serial) {
    for (std::uint64_t a = 0; a < p; ++a) tally(a);
    return totals;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(p); ++a) {
    try {
      tally(static_cast<std::uint64_t>(a));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return totals;
}

LubyShiftOracle::LubyShiftOracle(const LegalGraph& g, KWiseFamily f, std::vector<std::uint64_t> inputs, LubyCost mode,
                                 Exec exec)
    : g_(g), family_(f), inputs_(std::move(inputs)), mode_(mode), exec_(exec) {
  if (f.k != 2) throw HashError("shift oracle needs a pairwise family");
  if (inputs_.size() != g.node_count()) throw Error("one hash input per node expected");
  check_inputs(f, inputs_);
}

Wide LubyShiftOracle::cost(std::span<const std::uint64_t> seed) const {
  auto joined = luby_step_with_seed(g_, family_, seed, inputs_);
  if (mode_ == LubyCost::independent_set) return -static_cast<Wide>(std::count(joined.begin(), joined.end(), true));
  auto open = luby_undecided(g_, joined);
  return static_cast<Wide>(std::count(open.begin(), open.end(), true));
}

std::vector<Wide> LubyShiftOracle::value_totals(std::span<const std::uint64_t> prefix) const {
  const std::uint64_t p = family_.prime;
  const NodeIndex n = g_.node_count();
  if (prefix.size() == 1) {
    std::vector<Wide> totals(p, 0);
    std::uint64_t seed[2] = {prefix[0], 0};
    for (std::uint64_t a1 = 0; a1 < p; ++a1) {
      seed[1] = a1;
      totals[a1] = cost(seed);
    }
    return totals;
  }
  if (!prefix.empty()) throw Error("prefix already fixes every coefficient");

  // For each a_1, node windows over a_0; the cost is accumulated into a difference array.
  auto accumulate = [&](std::uint64_t a1, std::vector<Wide>& diff, std::vector<JoinWindow>& windows,
                        std::vector<Contender>& scratch) {
    for (NodeIndex v = 0; v < n; ++v) {
      scratch.clear();
      for (NodeIndex u : g_.neighbors(v)) scratch.push_back({mulmod(a1, inputs_[u], p), g_.node(u).id});
      windows[v] = join_window(p, mulmod(a1, inputs_[v], p), g_.node(v).id, scratch);
    }
    if (mode_ == LubyCost::independent_set) {
      for (NodeIndex v = 0; v < n; ++v) add_window(diff, p, windows[v], -1);
      return;
    }
    std::vector<JoinWindow> closed;
    for (NodeIndex v = 0; v < n; ++v) {
      closed.assign(1, windows[v]);
      for (NodeIndex u : g_.neighbors(v)) closed.push_back(windows[u]);
      for (auto [lo, hi] : uncovered(p, closed)) {
        diff[lo] += 1;
        diff[hi] -= 1;
      }
    }
  };

  std::vector<Wide> diff(p + 1, 0);
  if (exec_ == Exec::serial) {
    std::vector<JoinWindow> windows(n);
    std::vector<Contender> scratch;
    for (std::uint64_t a1 = 0; a1 < p; ++a1) accumulate(a1, diff, windows, scratch);
  } else {
    std::exception_ptr failure;
#pragma omp parallel
    {
      std::vector<Wide> local(p + 1, 0);
      std::vector<JoinWindow> windows(n);
      std::vector<Contender> scratch;
#pragma omp for schedule(static)
      for (std::int64_t a1 = 0; a1 < static_cast<std::int64_t>(p); ++a1) {
        try {
          accumulate(static_cast<std::uint64_t>(a1), local, windows, scratch);
        } catch (...) {
#pragma omp critical
          if (!failure) failure = std::current_exception();
        }
      }
#pragma omp critical
      for (std::uint64_t i = 0; i <= p; ++i) diff[i] += local[i];
    }
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<Wide> totals(p);
  Wide run = 0;
  for (std::uint64_t a = 0; a < p; ++a) totals[a] = run += diff[a];
  return totals;
}

SeedChoice fix_seed(const ConditionalCostOracle& oracle) {
  const KWiseFamily& f = oracle.family();
  Coefficients fixed;
  Wide grand = 0;
  for (std::uint32_t i = 0; i < f.k; ++i) {
    auto totals = oracle.value_totals(fixed);
    std::vector<Wide> prefix(totals.size() + 1, 0);
    for (std::size_t a = 0; a < totals.size(); ++a) prefix[a + 1] = prefix[a] + totals[a];
    if (i == 0) grand = prefix.back();
    DigitFixer fx(f.prime);
    while (!fx.done()) {
      auto [l0, h0] = fx.candidate(0);
      auto [l1, h1] = fx.candidate(1);
      fx.decide(prefix[h0] - prefix[l0], prefix[h1] - prefix[l1]);
    }
    fixed.push_back(fx.value());
  }
  SeedChoice out;
  out.family = f;
  out.coeffs = fixed;
  out.achieved = ratio(oracle.cost(fixed), oracle.scale());
  BigInt seeds = 1;
  for (std::uint32_t i = 0; i < f.k; ++i) seeds *= f.prime;
  out.average = Rational(big(grand), seeds * big(oracle.scale()));
  if (out.achieved > out.average)
    throw std::logic_error("conditional expectations exceeded the average: " + rational_string(out.achieved) + " > " +
                           rational_string(out.average));
  return out;
}

SeedChoice fix_seed_cond_exp(const KWiseFamily& f, const CostFunction& cost, const LegalGraph& g, Exec exec) {
  std::vector<CenteredGraph> balls;
  balls.reserve(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) balls.push_back(radius_ball(g, v, cost.radius));
  EnumeratingOracle oracle(
      f,
      [&](std::span<const std::uint64_t> seed) {
        Wide t = 0;
        for (const auto& b : balls) t += cost.evaluate(b, seed, f);
        return t;
      },
      cost.scale, exec);
  return fix_seed(oracle);
}

namespace {

bool center_joins(const CenteredGraph& b, std::span<const std::uint64_t> seed, const KWiseFamily& f, NodeIndex c) {
  const auto& g = b.graph;
  const std::uint64_t hc = kwise_eval(f, seed, g.node(c).id);
  for (NodeIndex u : g.neighbors(c))
    if (!precedes(hc, g.node(c).id, kwise_eval(f, seed, g.node(u).id), g.node(u).id)) return false;
  return true;
}

}  // namespace

CostFunction luby_is_cost() {
  return {1, 1, [](const CenteredGraph& b, std::span<const std::uint64_t> seed, const KWiseFamily& f) -> std::int64_t {
            return center_joins(b, seed, f, b.center) ? -1 : 0;
          }};
}

CostFunction luby_undecided_cost() {
  return {2, 1, [](const CenteredGraph& b, std::span<const std::uint64_t> seed, const KWiseFamily& f) -> std::int64_t {
            if (center_joins(b, seed, f, b.center)) return 0;
            for (NodeIndex u : b.graph.neighbors(b.center))
              if (center_joins(b, seed, f, u)) return 0;
            return 1;
          }};
}

std::vector<bool> luby_step_with_seed(const LegalGraph& g, const KWiseFamily& f, std::span<const std::uint64_t> seed,
                                      std::span<const std::uint64_t> inputs) {
  std::vector<std::uint64_t> chi(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) chi[v] = kwise_eval(f, seed, inputs[v]);
  return luby_join(g, chi);
}

LubyStepResult derand_luby_step(const LegalGraph& g, const KWiseFamily& f, Exec exec) {
  const std::uint64_t delta = g.max_degree();
  if (f.k < 2) throw HashError("family too small: need k >= 2");
  if (f.prime < std::max<std::uint64_t>(saturating_mul(8, delta * delta), g.node_count()))
    throw HashError("family too small: need p >= max(8 Delta^2, n), got p = " + std::to_string(f.prime));
  auto ids = node_ids(g);
  check_inputs(f, ids);
  LubyStepResult out;
  if (f.k == 2) {
    out.seed = fix_seed(LubyShiftOracle(g, f, ids, LubyCost::independent_set, exec));
  } else {
    out.seed = fix_seed(EnumeratingOracle(
        f,
        [&](std::span<const std::uint64_t> seed) {
          auto joined = luby_step_with_seed(g, f, seed, ids);
          return -static_cast<Wide>(std::count(joined.begin(), joined.end(), true));
        },
        1, exec));
  }
  out.joined = luby_step_with_seed(g, f, out.seed.coeffs, ids);
  return out;
}

SparsifyResult derand_sparsify(const LegalGraph& g, std::size_t target, const KWiseFamily& f, Exec exec) {
  const std::size_t n = g.node_count(), delta = g.max_degree();
  SparsifyResult out;
  if (target == 0) throw Error("sparsification target must be positive");
  if (delta <= target) {
    std::vector<NodeIndex> all(n);
    for (NodeIndex v = 0; v < n; ++v) all[v] = v;
    out.subgraph = induced_subgraph(g, all);
    out.kept = n;
    out.max_induced_degree = delta;
    out.threshold = f.prime;
    return out;
  }
  auto ids = node_ids(g);
  check_inputs(f, ids);
  const std::uint64_t tau = static_cast<std::uint64_t>(static_cast<unsigned __int128>(f.prime) * target / delta);
  out.threshold = tau;
  auto keep_mask = [&](std::span<const std::uint64_t> seed) {
    std::vector<bool> keep(n);
    for (NodeIndex v = 0; v < n; ++v) keep[v] = kwise_eval(f, seed, ids[v]) < tau;
    return keep;
  };
  auto cost = [&](std::span<const std::uint64_t> seed) -> Wide {
    auto keep = keep_mask(seed);
    Wide kept = 0, bad = 0;
    for (NodeIndex v = 0; v < n; ++v) {
      if (!keep[v]) continue;
      ++kept;
      std::size_t d = 0;
      for (NodeIndex u : g.neighbors(v)) d += keep[u];
      if (d > 4 * target) ++bad;
    }
    Wide dev = static_cast<Wide>(delta) * kept - static_cast<Wide>(n) * static_cast<Wide>(target);
    return static_cast<Wide>(delta) * bad + (dev < 0 ? -dev : dev);
  };
  out.seed = fix_seed(EnumeratingOracle(f, cost, static_cast<std::int64_t>(delta), exec));
  auto keep = keep_mask(out.seed->coeffs);
  std::vector<NodeIndex> kept;
  for (NodeIndex v = 0; v < n; ++v)
    if (keep[v]) kept.push_back(v);
  out.subgraph = induced_subgraph(g, kept);
  out.kept = kept.size();
  out.max_induced_degree = out.subgraph.graph.max_degree();
  return out;
}

AmplifyResult amplify(const SeededAlgorithm& alg, const ProblemDescriptor& problem, const LegalGraph& g,
                      std::size_t ell, const MpcMeta& meta, std::size_t slice_bits, Exec exec) {
  if (ell == 0) throw Error("amplification needs at least one branch");
  if (meta.seed.size() < ell * slice_bits)
    throw Error("seed too short for " + std::to_string(ell) + " branches of " + std::to_string(slice_bits) + " bits");
  std::vector<Labeling> labels(ell);
  std::vector<std::size_t> good(ell, 0);
  std::vector<char> valid(ell, 0);
  auto branch = [&](std::size_t b) {
    MpcMeta m = meta;
    m.seed = meta.seed.slice(b * slice_bits, slice_bits);
    labels[b] = alg(g, m);
    try {
      Verdict v = validate(problem, g, labels[b]);
      valid[b] = v.valid;
      good[b] = g.node_count() - v.violations.size();
    } catch (const LabelError&) {
      valid[b] = 0;
      good[b] = 0;
    }
  };
  if (exec == Exec::serial) {
    for (std::size_t b = 0; b < ell; ++b) branch(b);
  } else {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(ell); ++b) {
      try {
        branch(static_cast<std::size_t>(b));
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  AmplifyResult out;
  out.valid_nodes = good;
  auto first_valid = std::find(valid.begin(), valid.end(), 1);
  if (first_valid != valid.end()) {
    out.branch = static_cast<std::size_t>(first_valid - valid.begin());
    out.valid = true;
  } else {
    out.branch = static_cast<std::size_t>(std::max_element(good.begin(), good.end()) - good.begin());
  }
  out.labeling = std::move(labels[out.branch]);
  return out;
}

BitString SeedSpace::seed(std::uint64_t index) const { return BitString::expand(mix64(index ^ 0x5eed5eedULL), expand_bits); }

UniversalSeedResult find_universal_seed(const SeededAlgorithm& alg, std::span<const LegalGraph> corpus,
                                        const SeedSpace& space, const ProblemDescriptor& problem, std::uint64_t cap) {
  if (space.bits >= 63 || space.size() > cap)
    throw Error("seed space of " + std::to_string(space.bits) + " bits exceeds the search cap");
  UniversalSeedResult out;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    BitString s = space.seed(i);
    bool all = true;
    for (const auto& g : corpus) {
      ++out.runs;
      MpcMeta meta = make_meta(g, s);
      bool ok = false;
      try {
        ok = validate(problem, g, alg(g, meta)).valid;
      } catch (const LabelError&) {
      }
      if (!ok) {
        all = false;
        break;
      }
    }
    if (all) {
      out.index = i;
      out.seed = std::move(s);
      return out;
    }
  }
  return out;
}

}  // namespace mpclab
