#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "annealco/graph.hpp"

namespace annealco {

enum class GraphFormat { EdgeList, Dimacs, Json };

// Accepts "edge-list", "dimacs", "json".
GraphFormat graph_format_from_name(const std::string& name);
const char* graph_format_name(GraphFormat format);

// Raised on malformed input; message carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Formats:
//  - edge-list: first line "n", then "i j [w]" per edge (0-based).
//  - DIMACS:    "c" comments, "p edge n m" header, "e i j" lines (1-based).
//  - JSON:      {"n":, "edges": [[i, j, w], ...], "node_weights": [...]}.
Graph parse_graph(std::istream& in, GraphFormat format);
Graph load_graph(const std::string& path, GraphFormat format);

void write_graph(const Graph& g, std::ostream& out, GraphFormat format);
void save_graph(const Graph& g, const std::string& path, GraphFormat format);

}  // namespace annealco
