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

#ifndef MPCLAB_GRAPH_IO_HPP
#define MPCLAB_GRAPH_IO_HPP

#include <iosfwd>
#include <string>

#include "mpclab/graph.hpp"

namespace mpclab {

// Text format:
//   nodes <n>
//   node <index> <id> <name>     (one per node)
//   edge <i> <j>                 (one per edge)
// Blank lines and lines starting with '#' are ignored.
void write_graph(std::ostream& out, const LegalGraph& g);
std::string graph_to_text(const LegalGraph& g);

LegalGraph read_graph(std::istream& in);
LegalGraph graph_from_text(const std::string& text);
LegalGraph read_graph_file(const std::string& path);

}  // namespace mpclab

#endif  // MPCLAB_GRAPH_IO_HPP
