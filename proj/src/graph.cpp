#include "annealco/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace annealco {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges,
             std::vector<double> node_weights, std::vector<double> edge_weights)
    : n_(n) {
  if (n < 0) throw std::invalid_argument("graph: negative node count");

  if (node_weights.empty()) node_weights.assign(n, 1.0);
  if (static_cast<int>(node_weights.size()) != n)
    throw std::invalid_argument("graph: node_weights size != n");
  for (double w : node_weights)
    if (!std::isfinite(w))
      throw std::invalid_argument("graph: non-finite node weight");

  if (edge_weights.empty()) edge_weights.assign(edges.size(), 1.0);
  if (edge_weights.size() != edges.size())
    throw std::invalid_argument("graph: edge_weights size != |edges|");
  for (double w : edge_weights)
    if (!std::isfinite(w))
      throw std::invalid_argument("graph: non-finite edge weight");

  for (auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw std::out_of_range("graph: edge endpoint " + std::to_string(a) +
                              "-" + std::to_string(b) + " out of range");
    if (a == b)
      throw std::invalid_argument("graph: self-loop at node " +
                                  std::to_string(a));
    if (a > b) std::swap(a, b);
  }

  // Sort edges lexicographically, carrying weights along.
  std::vector<int> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return edges[x] < edges[y]; });
  edges_.reserve(edges.size());
  edge_weights_.reserve(edges.size());
  for (int idx : order) {
    edges_.push_back(edges[idx]);
    edge_weights_.push_back(edge_weights[idx]);
  }
  for (std::size_t e = 1; e < edges_.size(); ++e)
    if (edges_[e] == edges_[e - 1])
      throw std::invalid_argument(
          "graph: duplicate edge " + std::to_string(edges_[e].first) + "-" +
          std::to_string(edges_[e].second));

  node_weights_ = std::move(node_weights);

  adj_offset_.assign(n_ + 1, 0);
  for (const auto& [a, b] : edges_) {
    ++adj_offset_[a + 1];
    ++adj_offset_[b + 1];
  }
  for (int i = 0; i < n_; ++i) adj_offset_[i + 1] += adj_offset_[i];
  adj_flat_.resize(2 * edges_.size());
  std::vector<int> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
  for (int e = 0; e < num_edges(); ++e) {
    const auto& [a, b] = edges_[e];
    adj_flat_[cursor[a]++] = {b, e};
    adj_flat_[cursor[b]++] = {a, e};
  }
  for (int i = 0; i < n_; ++i)
    std::sort(adj_flat_.begin() + adj_offset_[i],
              adj_flat_.begin() + adj_offset_[i + 1],
              [](const AdjEntry& x, const AdjEntry& y) { return x.to < y.to; });
}

int Graph::max_degree() const {
  int best = 0;
  for (int i = 0; i < n_; ++i) best = std::max(best, degree(i));
  return best;
}

int Graph::edge_index(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || i == j) return -1;
  auto nb = neighbors(i);
  auto it = std::lower_bound(
      nb.begin(), nb.end(), j,
      [](const AdjEntry& e, int target) { return e.to < target; });
  if (it != nb.end() && it->to == j) return it->edge;
  return -1;
}

Graph generate_ba(int n, int m_attach, std::uint64_t seed) {
  if (m_attach < 1)
    throw std::invalid_argument("generate_ba: m_attach must be >= 1");
  if (n <= m_attach)
    throw std::invalid_argument("generate_ba: requires n > m_attach");

  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  // Complete core on m_attach + 1 nodes.
  const int core = m_attach + 1;
  for (int i = 0; i < core; ++i)
    for (int j = i + 1; j < core; ++j) edges.emplace_back(i, j);

  // One entry per incident edge endpoint; sampling uniformly from this list
  // is sampling nodes proportionally to degree.
  std::vector<int> endpoints;
  endpoints.reserve(2 * (edges.size() + static_cast<std::size_t>(n) * m_attach));
  for (const auto& [a, b] : edges) {
    endpoints.push_back(a);
    endpoints.push_back(b);
  }

  std::vector<int> targets;
  for (int v = core; v < n; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < m_attach) {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      int cand = endpoints[pick(rng)];
      if (std::find(targets.begin(), targets.end(), cand) == targets.end())
        targets.push_back(cand);
    }
    for (int t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(n, std::move(edges));
}

RbInstance generate_rb(int groups, int group_size, double p, double r,
                       std::uint64_t seed) {
  if (groups < 2) throw std::invalid_argument("generate_rb: groups must be >= 2");
  if (group_size < 2)
    throw std::invalid_argument("generate_rb: group_size must be >= 2");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("generate_rb: p must lie in (0, 1)");
  if (!(r > 0.0)) throw std::invalid_argument("generate_rb: r must be > 0");

  std::mt19937_64 rng(seed);
  const int n = groups * group_size;
  std::set<std::pair<int, int>> edge_set;

  for (int g = 0; g < groups; ++g) {
    const int base = g * group_size;
    for (int a = 0; a < group_size; ++a)
      for (int b = a + 1; b < group_size; ++b)
        edge_set.insert({base + a, base + b});
  }

  // One planted node per group stays mutually non-adjacent, so picking the
  // planted nodes is always independent and the optimum equals `groups`.
  std::vector<int> planted(groups);
  std::uniform_int_distribution<int> member(0, group_size - 1);
  for (int g = 0; g < groups; ++g) planted[g] = g * group_size + member(rng);

  const int pair_count =
      static_cast<int>(std::lround(r * groups * std::log(groups)));
  int edges_per_pair =
      static_cast<int>(std::ceil(p * group_size * group_size));
  edges_per_pair = std::min(edges_per_pair, group_size * group_size - 1);

  std::uniform_int_distribution<int> pick_group(0, groups - 1);
  for (int c = 0; c < pair_count; ++c) {
    int ga = pick_group(rng);
    int gb = pick_group(rng);
    while (gb == ga) gb = pick_group(rng);
    for (int e = 0; e < edges_per_pair; ++e) {
      int u = ga * group_size + member(rng);
      int v = gb * group_size + member(rng);
      if (u == planted[ga] && v == planted[gb]) continue;
      if (u > v) std::swap(u, v);
      edge_set.insert({u, v});
    }
  }

  RbInstance out;
  out.graph = Graph(
      n, std::vector<std::pair<int, int>>(edge_set.begin(), edge_set.end()));
  out.known_optimum = groups;
  return out;
}

ComplementEdgeRange::iterator::iterator(const Graph* g, int i, int j)
    : g_(g), i_(i), j_(j) {
  if (g_ && i_ < g_->num_nodes()) {
    auto nb = g_->neighbors(i_);
    while (ai_ < nb.size() && nb[ai_].to <= i_) ++ai_;
    skip_adjacent();
  }
}

void ComplementEdgeRange::iterator::skip_adjacent() {
  const int n = g_->num_nodes();
  while (i_ < n) {
    auto nb = g_->neighbors(i_);
    while (j_ < n && ai_ < nb.size() && nb[ai_].to == j_) {
      ++ai_;
      ++j_;
    }
    if (j_ < n) return;
    ++i_;
    j_ = i_ + 1;
    ai_ = 0;
    if (i_ < n) {
      nb = g_->neighbors(i_);
      while (ai_ < nb.size() && nb[ai_].to <= i_) ++ai_;
    }
  }
  // Normalize to end().
  i_ = n;
  j_ = n + 1;
}

ComplementEdgeRange::iterator& ComplementEdgeRange::iterator::operator++() {
  ++j_;
  skip_adjacent();
  return *this;
}

ComplementEdgeRange::iterator ComplementEdgeRange::begin() const {
  return iterator(g_, 0, 1);
}

ComplementEdgeRange::iterator ComplementEdgeRange::end() const {
  return iterator(g_, g_->num_nodes(), g_->num_nodes() + 1);
}

std::vector<std::pair<int, int>> complement_edge_list(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(complement_edges(g).count()));
  for (auto pr : complement_edges(g)) out.push_back(pr);
  return out;
}

ComplementIndexer::ComplementIndexer(const Graph& g) : g_(&g) {
  const int n = g.num_nodes();
  prefix_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    auto nb = g.neighbors(i);
    const long long greater =
        nb.end() - std::lower_bound(nb.begin(), nb.end(), i + 1,
                                    [](const AdjEntry& e, int t) {
                                      return e.to < t;
                                    });
    prefix_[i + 1] = prefix_[i] + (n - 1 - i) - greater;
  }
}

long long ComplementIndexer::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto nb = g_->neighbors(i);
  auto lo = std::lower_bound(
      nb.begin(), nb.end(), i + 1,
      [](const AdjEntry& e, int t) { return e.to < t; });
  auto hi = std::lower_bound(
      nb.begin(), nb.end(), j,
      [](const AdjEntry& e, int t) { return e.to < t; });
  // Neighbors of i inside (i, j) are the adjacent pairs skipped before j.
  return prefix_[i] + (j - i - 1) - (hi - lo);
}

}  // namespace annealco
