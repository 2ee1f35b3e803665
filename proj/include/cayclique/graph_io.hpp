#pragma once

// DIMACS edge format: "p edge <n> <m>" header, "e <u> <v>" lines with
// 1-based vertices, "c ..." comments.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cayclique/graph.hpp"

namespace cayclique {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Graph read_dimacs(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t declared_edges = 0;
  Graph g;
  auto fail = [&](const std::string& msg) {
    throw ParseError("dimacs line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      long long n = -1;
      long long m = -1;
      if (have_header) fail("duplicate header");
      if (!(ls >> kind >> n >> m) || (kind != "edge" && kind != "col") || n < 0 || m < 0)
        fail("malformed header, expected 'p edge <n> <m>'");
      g = Graph(static_cast<std::size_t>(n));
      declared_edges = static_cast<std::size_t>(m);
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) fail("edge before header");
      long long u = 0;
      long long v = 0;
      if (!(ls >> u >> v)) fail("malformed edge line");
      if (u < 1 || v < 1 || static_cast<std::size_t>(u) > g.order() || static_cast<std::size_t>(v) > g.order())
        fail("edge endpoint out of range");
      if (u == v) fail("self-loop");
      g.add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    } else {
      fail("unknown line tag '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError("dimacs: missing 'p edge' header");
  if (g.edge_count() > declared_edges)
    throw ParseError("dimacs: more distinct edges than declared in header");
  return g;
}

inline Graph parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return read_dimacs(in);
}

inline Graph load_dimacs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_dimacs(in);
}

inline void write_dimacs(std::ostream& out, const Graph& g) {
  out << "p edge " << g.order() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

inline std::string to_dimacs(const Graph& g) {
  std::ostringstream out;
  write_dimacs(out, g);
  return out.str();
}

}  // namespace cayclique
