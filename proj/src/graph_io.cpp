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

#include "mpclab/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mpclab {

void write_graph(std::ostream& out, const LegalGraph& g) {
  out << "nodes " << g.node_count() << '\n';
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    out << "node " << v << ' ' << g.node(v).id << ' ' << g.node(v).name << '\n';
  }
  for (const Edge& e : g.edges()) out << "edge " << e.u << ' ' << e.v << '\n';
}

std::string graph_to_text(const LegalGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

LegalGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<NodeRecord> records;
  std::vector<bool> seen;
  std::vector<Edge> edges;
  auto fail = [&](const std::string& what) {
    throw GraphError("line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "nodes") {
      std::size_t count;
      if (n || !(ls >> count)) fail("bad nodes header");
      n = count;
      records.assign(count, {});
      seen.assign(count, false);
    } else if (tag == "node") {
      std::uint64_t idx, id, name;
      if (!n) fail("node before header");
      if (!(ls >> idx >> id >> name)) fail("bad node line");
      if (idx >= *n) fail("node index out of range");
      if (seen[idx]) fail("node listed twice");
      seen[idx] = true;
      records[idx] = {id, name};
    } else if (tag == "edge") {
      std::uint64_t i, j;
      if (!n) fail("edge before header");
      if (!(ls >> i >> j)) fail("bad edge line");
      if (i >= *n || j >= *n) fail("edge endpoint out of range");
      edges.push_back({static_cast<NodeIndex>(i), static_cast<NodeIndex>(j)});
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra && extra[0] != '#') fail("trailing tokens");
  }
  if (!n) throw GraphError("missing nodes header");
  for (std::size_t i = 0; i < *n; ++i) {
    if (!seen[i]) throw GraphError("node " + std::to_string(i) + " missing");
  }
  return LegalGraph(std::move(records), std::move(edges));
}

LegalGraph graph_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

LegalGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  return read_graph(in);
}

}  // namespace mpclab
