#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace annealco {

// Half-edge entry of an adjacency list: neighbor id plus the index of the
// underlying undirected edge in Graph::edges().
struct AdjEntry {
  int to = 0;
  int edge = 0;
};

// Weighted undirected simple graph. Immutable after construction, so
// instances can be shared freely across concurrent solver runs.
//
// Edges are normalized to (i, j) with i < j and stored in lexicographic
// order; edge weights follow that order. Construction validates index
// ranges and rejects self-loops and duplicate unordered pairs.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<std::pair<int, int>> edges,
        std::vector<double> node_weights = {},
        std::vector<double> edge_weights = {});

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<double>& node_weights() const { return node_weights_; }
  const std::vector<double>& edge_weights() const { return edge_weights_; }

  double node_weight(int i) const { return node_weights_[i]; }
  double edge_weight(int e) const { return edge_weights_[e]; }

  // Neighbors of i sorted by node id.
  std::span<const AdjEntry> neighbors(int i) const {
    return {adj_flat_.data() + adj_offset_[i],
            adj_flat_.data() + adj_offset_[i + 1]};
  }
  int degree(int i) const { return adj_offset_[i + 1] - adj_offset_[i]; }
  int max_degree() const;

  bool has_edge(int i, int j) const { return edge_index(i, j) >= 0; }
  // Index into edges() of the unordered pair {i, j}, or -1 if absent.
  int edge_index(int i, int j) const;

  // vol(V) = sum of degrees = 2|E|.
  long long total_degree() const { return 2ll * num_edges(); }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<double> node_weights_;
  std::vector<double> edge_weights_;
  std::vector<AdjEntry> adj_flat_;
  std::vector<int> adj_offset_;
};

// Barabasi-Albert preferential attachment graph. Starts from a complete
// core on m_attach + 1 nodes; every later node attaches to m_attach
// distinct existing nodes with probability proportional to degree.
// Deterministic for a fixed seed. Requires n > m_attach >= 1.
Graph generate_ba(int n, int m_attach, std::uint64_t seed);

struct RbInstance {
  Graph graph;
  // Size of the planted maximum independent set (one node per group).
  int known_optimum = 0;
};

// RB-style hard instance: `groups` disjoint cliques of `group_size` nodes,
// plus round(r * groups * ln(groups)) random group pairs each receiving
// ceil(p * group_size^2) random inter-group edges. One planted node per
// group is kept mutually non-adjacent, so the maximum independent set has
// size exactly `groups` under unit weights.
RbInstance generate_rb(int groups, int group_size, double p, double r,
                       std::uint64_t seed);

// Lazy range over the complement edge set E^c = {(i,j): i < j, (i,j) not in E},
// yielded once each in lexicographic order.
class ComplementEdgeRange {
 public:
  class iterator {
   public:
    using value_type = std::pair<int, int>;

    iterator(const Graph* g, int i, int j);
    value_type operator*() const { return {i_, j_}; }
    iterator& operator++();
    bool operator==(const iterator& o) const {
      return i_ == o.i_ && j_ == o.j_;
    }
    bool operator!=(const iterator& o) const { return !(*this == o); }

   private:
    void skip_adjacent();
    const Graph* g_ = nullptr;
    int i_ = 0;
    int j_ = 0;
    std::size_t ai_ = 0;  // cursor into neighbors(i_)
  };

  explicit ComplementEdgeRange(const Graph& g) : g_(&g) {}
  iterator begin() const;
  iterator end() const;
  long long count() const {
    long long n = g_->num_nodes();
    return n * (n - 1) / 2 - g_->num_edges();
  }

 private:
  const Graph* g_;
};

inline ComplementEdgeRange complement_edges(const Graph& g) {
  return ComplementEdgeRange(g);
}

std::vector<std::pair<int, int>> complement_edge_list(const Graph& g);

// O(log deg) mapping from a complement pair (i < j) to its position in the
// lexicographic E^c enumeration. Used to key per-complement-edge penalties.
class ComplementIndexer {
 public:
  explicit ComplementIndexer(const Graph& g);
  long long count() const { return prefix_.back(); }
  long long index(int i, int j) const;

 private:
  const Graph* g_;
  std::vector<long long> prefix_;  // prefix_[i] = #complement pairs (a,b), a < i
};

}  // namespace annealco
