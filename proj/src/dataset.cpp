#include "annealco/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "annealco/graph_io.hpp"

namespace annealco {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::vector<double> draw_weights(int count, const DatasetSpec& spec,
                                 std::mt19937_64& rng) {
  if (spec.node_weights == "unit") return {};
  if (spec.node_weights != "uniform")
    throw std::invalid_argument("dataset: node_weights must be unit or uniform");
  std::uniform_real_distribution<double> dist(spec.weight_lo, spec.weight_hi);
  std::vector<double> w(count);
  for (auto& v : w) v = dist(rng);
  return w;
}

Graph reweight(Graph g, const DatasetSpec& spec, std::mt19937_64& rng) {
  auto w = draw_weights(g.num_nodes(), spec, rng);
  if (w.empty()) return g;
  std::vector<std::pair<int, int>> edges(g.edges().begin(), g.edges().end());
  return Graph(g.num_nodes(), std::move(edges), std::move(w),
               g.edge_weights());
}

GraphFormat format_for_path(const std::string& path) {
  auto ends_with = [&](const char* suffix) {
    const std::string s(suffix);
    return path.size() >= s.size() &&
           path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".json")) return GraphFormat::Json;
  if (ends_with(".col") || ends_with(".dimacs")) return GraphFormat::Dimacs;
  return GraphFormat::EdgeList;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b) {
  std::uint64_t s = splitmix64(base);
  s = splitmix64(s ^ (a + 0x9e3779b97f4a7c15ull));
  s = splitmix64(s ^ (b + 0xbf58476d1ce4e5b9ull));
  return s;
}

DatasetSpec dataset_spec_from_json(const nlohmann::json& j) {
  DatasetSpec spec;
  spec.name = j.value("name", spec.name);
  spec.type = j.value("type", spec.type);
  spec.count = j.value("count", spec.count);
  spec.n_min = j.value("n_min", spec.n_min);
  spec.n_max = j.value("n_max", spec.n_max);
  spec.m_attach = j.value("m_attach", spec.m_attach);
  spec.edge_prob = j.value("edge_prob", spec.edge_prob);
  spec.rb_groups = j.value("rb_groups", spec.rb_groups);
  spec.rb_group_size = j.value("rb_group_size", spec.rb_group_size);
  spec.rb_p = j.value("rb_p", spec.rb_p);
  spec.rb_r = j.value("rb_r", spec.rb_r);
  spec.node_weights = j.value("node_weights", spec.node_weights);
  spec.weight_lo = j.value("weight_lo", spec.weight_lo);
  spec.weight_hi = j.value("weight_hi", spec.weight_hi);
  if (j.contains("paths"))
    spec.paths = j.at("paths").get<std::vector<std::string>>();
  spec.seed = j.value("seed", spec.seed);
  return spec;
}

nlohmann::json dataset_spec_to_json(const DatasetSpec& spec) {
  nlohmann::json j;
  j["name"] = spec.name;
  j["type"] = spec.type;
  j["count"] = spec.count;
  j["n_min"] = spec.n_min;
  j["n_max"] = spec.n_max;
  j["m_attach"] = spec.m_attach;
  j["edge_prob"] = spec.edge_prob;
  j["rb_groups"] = spec.rb_groups;
  j["rb_group_size"] = spec.rb_group_size;
  j["rb_p"] = spec.rb_p;
  j["rb_r"] = spec.rb_r;
  j["node_weights"] = spec.node_weights;
  j["weight_lo"] = spec.weight_lo;
  j["weight_hi"] = spec.weight_hi;
  if (!spec.paths.empty()) j["paths"] = spec.paths;
  j["seed"] = spec.seed;
  return j;
}

std::vector<DatasetEntry> build_dataset(const DatasetSpec& spec) {
  std::vector<DatasetEntry> out;
  if (spec.type == "files") {
    for (const auto& path : spec.paths) {
      DatasetEntry e{load_graph(path, format_for_path(path)), {}};
      e.known_optimum = std::numeric_limits<double>::quiet_NaN();
      out.push_back(std::move(e));
    }
    return out;
  }

  if (spec.count < 1)
    throw std::invalid_argument("dataset: count must be >= 1");
  out.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    const std::uint64_t s = derive_seed(spec.seed, i, 0);
    std::mt19937_64 rng(derive_seed(spec.seed, i, 1));
    DatasetEntry entry;
    if (spec.type == "ba") {
      if (spec.n_min < 2 || spec.n_max < spec.n_min)
        throw std::invalid_argument("dataset: bad ba node range");
      const int n =
          spec.n_min + static_cast<int>(derive_seed(spec.seed, i, 2) %
                                        (spec.n_max - spec.n_min + 1));
      entry.graph = reweight(generate_ba(n, spec.m_attach, s), spec, rng);
    } else if (spec.type == "rb") {
      auto rb = generate_rb(spec.rb_groups, spec.rb_group_size, spec.rb_p,
                            spec.rb_r, s);
      entry.graph = reweight(std::move(rb.graph), spec, rng);
      if (spec.node_weights == "unit")
        entry.known_optimum = rb.known_optimum;
    } else if (spec.type == "er") {
      if (spec.n_min < 1 || spec.n_max < spec.n_min)
        throw std::invalid_argument("dataset: bad er node range");
      const int n =
          spec.n_min + static_cast<int>(derive_seed(spec.seed, i, 2) %
                                        (spec.n_max - spec.n_min + 1));
      const bool unit = spec.node_weights == "unit";
      entry.graph = sample_er_graph(n, spec.edge_prob, rng, unit,
                                    spec.weight_lo, spec.weight_hi);
    } else {
      throw std::invalid_argument("dataset: unknown type " + spec.type);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

Graph sample_er_graph(int n, double p, std::mt19937_64& rng,
                      bool unit_weights, double wlo, double whi) {
  if (n < 0) throw std::invalid_argument("sample_er_graph: negative n");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("sample_er_graph: p outside [0,1]");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < p) edges.emplace_back(i, j);

  std::vector<double> node_w, edge_w;
  if (!unit_weights) {
    std::uniform_real_distribution<double> wd(wlo, whi);
    node_w.resize(n);
    for (auto& v : node_w) v = wd(rng);
    edge_w.resize(edges.size());
    for (auto& v : edge_w) v = wd(rng);
  }
  return Graph(n, std::move(edges), std::move(node_w), std::move(edge_w));
}

namespace {

// ER graph with a window centered on a random subset's volume, slack of a
// max-degree plus one on each side.
ProblemInstance sample_centered_cut(int n, std::mt19937_64& rng,
                                    bool unit_weights) {
  std::uniform_real_distribution<double> pd(0.2, 0.6);
  Graph g = sample_er_graph(n, pd(rng), rng, unit_weights);
  const long long total = g.total_degree();
  long long vol = 0;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int attempt = 0; attempt < 32 && (vol == 0 || vol == total);
       ++attempt) {
    vol = 0;
    for (int i = 0; i < n; ++i)
      if (coin(rng)) vol += g.degree(i);
  }
  if (total > 0 && (vol == 0 || vol == total)) vol = g.max_degree();
  const double slack = g.max_degree() + 1;
  VolumeBounds bounds{
      std::max(0.0, static_cast<double>(vol) - slack),
      std::min(static_cast<double>(total), static_cast<double>(vol) + slack)};
  return make_instance(ProblemKind::MinCut, std::move(g), bounds);
}

// Two cliques joined by one light bridge. The window starts one volume unit
// above the heavier clique's volume, so every feasible set must cut into a
// clique while the clean split sits just outside with a tiny cut.
ProblemInstance sample_bridged_cut(int n, std::mt19937_64& rng,
                                   bool unit_weights) {
  const int ka = (n + 1) / 2;  // the window-side clique is never the lighter
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < ka; ++i)
    for (int j = i + 1; j < ka; ++j) edges.emplace_back(i, j);
  for (int i = ka; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  std::uniform_int_distribution<int> pick_a(0, ka - 1), pick_b(ka, n - 1);
  edges.emplace_back(pick_a(rng), pick_b(rng));

  std::vector<double> node_w, edge_w;
  if (!unit_weights) {
    std::uniform_real_distribution<double> wd(0.5, 2.0);
    std::uniform_real_distribution<double> bridge_wd(0.5, 1.0);
    node_w.resize(n);
    for (auto& v : node_w) v = wd(rng);
    edge_w.resize(edges.size());
    for (auto& v : edge_w) v = wd(rng);
    edge_w.back() = bridge_wd(rng);
  }
  Graph g(n, std::move(edges), std::move(node_w), std::move(edge_w));

  long long vol_a = 0;
  for (int i = 0; i < ka; ++i) vol_a += g.degree(i);
  const double lo = static_cast<double>(vol_a) + 1.0;
  const double hi =
      std::min(static_cast<double>(g.total_degree()),
               lo + static_cast<double>(g.max_degree()));
  return make_instance(ProblemKind::MinCut, std::move(g), VolumeBounds{lo, hi});
}

}  // namespace

ProblemInstance sample_oracle_instance(ProblemKind kind, int n_min, int n_max,
                                       std::mt19937_64& rng,
                                       double penalty_scale,
                                       bool unit_weights) {
  if (n_min < 1 || n_max < n_min)
    throw std::invalid_argument("sample_oracle_instance: bad node range");
  std::uniform_int_distribution<int> nd(n_min, n_max);
  const int n = nd(rng);

  ProblemInstance inst;
  if (kind == ProblemKind::MinCut) {
    std::uniform_int_distribution<int> shape(0, 1);
    if (n >= 6 && shape(rng) == 1)
      inst = sample_bridged_cut(n, rng, unit_weights);
    else
      inst = sample_centered_cut(n, rng, unit_weights);
  } else {
    std::uniform_real_distribution<double> pd(0.2, 0.6);
    inst = make_instance(kind, sample_er_graph(n, pd(rng), rng, unit_weights));
  }
  if (penalty_scale != 1.0) scale_penalties(inst, penalty_scale);
  return inst;
}

}  // namespace annealco
