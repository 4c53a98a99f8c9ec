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

#ifndef MPCLAB_GENERATORS_HPP
#define MPCLAB_GENERATORS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpclab/graph.hpp"

namespace mpclab {

// IDs are a permutation of 0..n-1 (random unless sequential); names are base + index,
// base defaulting to n.
struct IdPolicy {
  bool shuffle = true;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> name_base;

  static IdPolicy sequential() { return {false, 0, std::nullopt}; }
  static IdPolicy shuffled(std::uint64_t seed) { return {true, seed, std::nullopt}; }
};

LegalGraph from_edges(std::size_t n, std::vector<Edge> edges, const IdPolicy& ids = {});

LegalGraph cycle_graph(std::size_t n, const IdPolicy& ids = {});
// Two disjoint copies of C_{n/2}, n even.
LegalGraph two_cycles(std::size_t n, const IdPolicy& ids = {});
LegalGraph path_graph(std::size_t n, const IdPolicy& ids = {});
// n nodes in total: one hub and n - 1 leaves.
LegalGraph star_graph(std::size_t n, const IdPolicy& ids = {});
LegalGraph clique_graph(std::size_t n, const IdPolicy& ids = {});
LegalGraph random_regular(std::size_t n, std::size_t d, std::uint64_t seed, const IdPolicy& ids = {});
// Each pair becomes an edge with probability num/den unless an endpoint already has max_degree.
LegalGraph random_bounded(std::size_t n, std::size_t max_degree, std::uint64_t num, std::uint64_t den,
                          std::uint64_t seed, const IdPolicy& ids = {});
LegalGraph random_tree(std::size_t n, std::uint64_t seed, const IdPolicy& ids = {});
LegalGraph random_connected(std::size_t n, std::size_t extra_edges, std::size_t max_degree,
                            std::uint64_t seed, const IdPolicy& ids = {});

// "cycle 12", "two_cycles 5", "path 6", "star 5", "clique 4", "regular 64 4", "tree 10",
// "bounded 100 8" (edge probability 1/4). `seed` drives the random families.
LegalGraph generate(std::string_view family, std::span<const std::uint64_t> params, std::uint64_t seed,
                    const IdPolicy& ids = {});
std::vector<std::string> generator_families();

// Every labeled simple graph on n nodes, sequential IDs.
void for_each_graph(std::size_t n, const std::function<void(const LegalGraph&)>& f);
// Connected graphs on n nodes up to isomorphism, sequential IDs.
std::vector<LegalGraph> connected_graphs(std::size_t n);
// Paths on n nodes under every ID labeling, one per reversal class.
std::vector<LegalGraph> labeled_paths(std::size_t n);

}  // namespace mpclab

#endif  // MPCLAB_GENERATORS_HPP
