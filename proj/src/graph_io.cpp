#include "annealco/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace annealco {

namespace {

// Shortest representation that round-trips through parsing.
std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Graph parse_edge_list(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> weights;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n) || n < 0)
        throw ParseError("edge-list: expected node count", lineno);
      continue;
    }
    int i, j;
    if (!(ls >> i)) continue;  // blank line
    if (!(ls >> j)) throw ParseError("edge-list: expected 'i j [w]'", lineno);
    double w = 1.0;
    ls >> w;
    edges.emplace_back(i, j);
    weights.push_back(w);
  }
  if (n < 0) throw ParseError("edge-list: empty input", lineno);
  try {
    return Graph(n, std::move(edges), {}, std::move(weights));
  } catch (const std::exception& e) {
    throw ParseError(std::string("edge-list: ") + e.what(), lineno);
  }
}

Graph parse_dimacs(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    char tag;
    ls >> tag;
    if (tag == 'p') {
      std::string kind;
      if (!(ls >> kind >> n >> m) || kind != "edge")
        throw ParseError("dimacs: malformed problem line", lineno);
    } else if (tag == 'e') {
      if (n < 0) throw ParseError("dimacs: edge before problem line", lineno);
      int i, j;
      if (!(ls >> i >> j)) throw ParseError("dimacs: malformed edge", lineno);
      if (i < 1 || j < 1 || i > n || j > n)
        throw ParseError("dimacs: node id out of range", lineno);
      edges.emplace_back(i - 1, j - 1);
    } else {
      throw ParseError("dimacs: unknown line tag", lineno);
    }
  }
  if (n < 0) throw ParseError("dimacs: missing problem line", lineno);
  if (m >= 0 && m != static_cast<int>(edges.size()))
    throw ParseError("dimacs: edge count mismatch", lineno);
  try {
    return Graph(n, std::move(edges));
  } catch (const std::exception& e) {
    throw ParseError(std::string("dimacs: ") + e.what(), lineno);
  }
}

Graph parse_json_graph(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what(), 0);
  }
  const int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  std::vector<double> weights;
  for (const auto& e : j.at("edges")) {
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    weights.push_back(e.size() > 2 ? e.at(2).get<double>() : 1.0);
  }
  std::vector<double> node_weights;
  if (j.contains("node_weights"))
    node_weights = j.at("node_weights").get<std::vector<double>>();
  return Graph(n, std::move(edges), std::move(node_weights),
               std::move(weights));
}

}  // namespace

GraphFormat graph_format_from_name(const std::string& name) {
  if (name == "edge-list" || name == "edgelist") return GraphFormat::EdgeList;
  if (name == "dimacs") return GraphFormat::Dimacs;
  if (name == "json") return GraphFormat::Json;
  throw std::invalid_argument("unknown graph format: " + name);
}

const char* graph_format_name(GraphFormat format) {
  switch (format) {
    case GraphFormat::EdgeList: return "edge-list";
    case GraphFormat::Dimacs: return "dimacs";
    case GraphFormat::Json: return "json";
  }
  return "?";
}

Graph parse_graph(std::istream& in, GraphFormat format) {
  switch (format) {
    case GraphFormat::EdgeList: return parse_edge_list(in);
    case GraphFormat::Dimacs: return parse_dimacs(in);
    case GraphFormat::Json: return parse_json_graph(in);
  }
  throw std::invalid_argument("parse_graph: bad format");
}

Graph load_graph(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return parse_graph(in, format);
}

void write_graph(const Graph& g, std::ostream& out, GraphFormat format) {
  switch (format) {
    case GraphFormat::EdgeList: {
      out << g.num_nodes() << "\n";
      for (int e = 0; e < g.num_edges(); ++e) {
        const auto& [i, j] = g.edges()[e];
        out << i << " " << j << " " << format_double(g.edge_weight(e)) << "\n";
      }
      break;
    }
    case GraphFormat::Dimacs: {
      out << "p edge " << g.num_nodes() << " " << g.num_edges() << "\n";
      for (const auto& [i, j] : g.edges())
        out << "e " << i + 1 << " " << j + 1 << "\n";
      break;
    }
    case GraphFormat::Json: {
      nlohmann::json j;
      j["n"] = g.num_nodes();
      auto edges = nlohmann::json::array();
      for (int e = 0; e < g.num_edges(); ++e) {
        const auto& [a, b] = g.edges()[e];
        edges.push_back({a, b, g.edge_weight(e)});
      }
      j["edges"] = std::move(edges);
      j["node_weights"] = g.node_weights();
      out << j.dump(2) << "\n";
      break;
    }
  }
}

void save_graph(const Graph& g, const std::string& path, GraphFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  write_graph(g, out, format);
}

}  // namespace annealco
