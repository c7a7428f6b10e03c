#include "annealco/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "annealco/graph_io.hpp"

namespace annealco {

namespace {

double hinge(double v) { return v > 0.0 ? v : 0.0; }

long long selected_volume(const Graph& g, const Assignment& x) {
  long long vol = 0;
  for (int i = 0; i < g.num_nodes(); ++i)
    if (x[i]) vol += g.degree(i);
  return vol;
}

// First violated complement pair in lexicographic order, or {-1, -1}.
std::pair<int, int> first_nonadjacent_selected_pair(const Graph& g,
                                                    const Assignment& x) {
  const int n = g.num_nodes();
  for (int i = 0; i < n; ++i) {
    if (!x[i]) continue;
    auto nb = g.neighbors(i);
    std::size_t a = 0;
    for (int j = i + 1; j < n; ++j) {
      while (a < nb.size() && nb[a].to < j) ++a;
      const bool adjacent = a < nb.size() && nb[a].to == j;
      if (!adjacent && x[j]) return {i, j};
    }
  }
  return {-1, -1};
}

}  // namespace

const char* kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::MIS: return "mis";
    case ProblemKind::MaxClique: return "maxclique";
    case ProblemKind::MinDominatingSet: return "mds";
    case ProblemKind::MinCut: return "mincut";
  }
  return "?";
}

ProblemKind kind_from_name(const std::string& name) {
  if (name == "mis") return ProblemKind::MIS;
  if (name == "maxclique" || name == "clique") return ProblemKind::MaxClique;
  if (name == "mds" || name == "dominating-set")
    return ProblemKind::MinDominatingSet;
  if (name == "mincut") return ProblemKind::MinCut;
  throw std::invalid_argument("unknown problem kind: " + name);
}

const char* penalty_rule_name(PenaltyRule rule) {
  return rule == PenaltyRule::SharpMin ? "sharp-min" : "strict-max";
}

PenaltyRule penalty_rule_from_name(const std::string& name) {
  if (name == "sharp-min") return PenaltyRule::SharpMin;
  if (name == "strict-max") return PenaltyRule::StrictMax;
  throw std::invalid_argument("unknown penalty rule: " + name);
}

PenaltyVector default_penalties(ProblemKind kind, const Graph& g,
                                PenaltyRule rule) {
  const auto pair_penalty = [&](int i, int j) {
    return rule == PenaltyRule::SharpMin
               ? std::min(g.node_weight(i), g.node_weight(j))
               : std::max(g.node_weight(i), g.node_weight(j));
  };
  PenaltyVector beta;
  switch (kind) {
    case ProblemKind::MIS:
      beta.reserve(g.num_edges());
      for (const auto& [i, j] : g.edges()) beta.push_back(pair_penalty(i, j));
      break;
    case ProblemKind::MaxClique:
      beta.reserve(static_cast<std::size_t>(complement_edges(g).count()));
      for (auto [i, j] : complement_edges(g)) beta.push_back(pair_penalty(i, j));
      break;
    case ProblemKind::MinDominatingSet:
      beta.reserve(g.num_nodes());
      for (int i = 0; i < g.num_nodes(); ++i) {
        double b = g.node_weight(i);
        for (const auto& e : g.neighbors(i))
          b = std::min(b, g.node_weight(e.to));
        beta.push_back(b);
      }
      break;
    case ProblemKind::MinCut: {
      double b = 0.0;
      for (int i = 0; i < g.num_nodes(); ++i) {
        double row = 0.0;
        for (const auto& e : g.neighbors(i))
          row += std::abs(g.edge_weight(e.edge));
        b = std::max(b, row);
      }
      beta.push_back(b);
      break;
    }
  }
  return beta;
}

ProblemInstance make_instance(ProblemKind kind, Graph g,
                              std::optional<VolumeBounds> bounds,
                              PenaltyRule rule) {
  ProblemInstance inst;
  inst.kind = kind;
  inst.penalties = default_penalties(kind, g, rule);
  inst.graph = std::move(g);
  inst.volume_bounds = bounds;
  validate_instance(inst);
  return inst;
}

void scale_penalties(ProblemInstance& inst, double factor) {
  if (factor < 0.0)
    throw std::invalid_argument("scale_penalties: negative factor");
  for (double& b : inst.penalties) b *= factor;
}

void validate_instance(const ProblemInstance& inst) {
  const Graph& g = inst.graph;
  std::size_t expected = 0;
  switch (inst.kind) {
    case ProblemKind::MIS: expected = g.num_edges(); break;
    case ProblemKind::MaxClique:
      expected = static_cast<std::size_t>(complement_edges(g).count());
      break;
    case ProblemKind::MinDominatingSet: expected = g.num_nodes(); break;
    case ProblemKind::MinCut: expected = 1; break;
  }
  if (inst.penalties.size() != expected)
    throw std::invalid_argument("instance: penalty vector size mismatch");
  for (double b : inst.penalties)
    if (!(b >= 0.0))
      throw std::invalid_argument("instance: penalties must be >= 0");
  if (inst.kind == ProblemKind::MinCut) {
    if (!inst.volume_bounds)
      throw std::invalid_argument("instance: MinCut requires volume bounds");
    const auto& vb = *inst.volume_bounds;
    if (!(0.0 <= vb.lo && vb.lo <= vb.hi &&
          vb.hi <= static_cast<double>(g.total_degree())))
      throw std::invalid_argument("instance: need 0 <= D0 <= D1 <= vol(V)");
  } else if (inst.volume_bounds) {
    throw std::invalid_argument("instance: volume bounds only apply to MinCut");
  }
}

void validate_assignment(const ProblemInstance& inst, const Assignment& x) {
  if (static_cast<int>(x.size()) != inst.graph.num_nodes())
    throw std::invalid_argument("assignment: length != node count");
  for (auto b : x)
    if (b > 1) throw std::invalid_argument("assignment: entries must be 0/1");
}

double objective(const ProblemInstance& inst, const Assignment& x) {
  validate_assignment(inst, x);
  const Graph& g = inst.graph;
  switch (inst.kind) {
    case ProblemKind::MIS:
    case ProblemKind::MaxClique: {
      double w = 0.0;
      for (int i = 0; i < g.num_nodes(); ++i)
        if (x[i]) w += g.node_weight(i);
      return -w;
    }
    case ProblemKind::MinDominatingSet: {
      double w = 0.0;
      for (int i = 0; i < g.num_nodes(); ++i)
        if (x[i]) w += g.node_weight(i);
      return w;
    }
    case ProblemKind::MinCut: {
      double cut = 0.0;
      for (int e = 0; e < g.num_edges(); ++e) {
        const auto& [i, j] = g.edges()[e];
        if (x[i] != x[j]) cut += g.edge_weight(e);
      }
      return cut;
    }
  }
  return 0.0;
}

double energy(const ProblemInstance& inst, const Assignment& x) {
  validate_assignment(inst, x);
  const Graph& g = inst.graph;
  switch (inst.kind) {
    case ProblemKind::MIS: {
      double f = objective(inst, x);
      for (int e = 0; e < g.num_edges(); ++e) {
        const auto& [i, j] = g.edges()[e];
        if (x[i] && x[j]) f += inst.penalties[e];
      }
      return f;
    }
    case ProblemKind::MaxClique: {
      double f = objective(inst, x);
      long long c = 0;
      for (auto [i, j] : complement_edges(g)) {
        if (x[i] && x[j]) f += inst.penalties[c];
        ++c;
      }
      return f;
    }
    case ProblemKind::MinDominatingSet: {
      double f = objective(inst, x);
      for (int i = 0; i < g.num_nodes(); ++i) {
        if (x[i]) continue;
        bool dominated = false;
        for (const auto& e : g.neighbors(i))
          if (x[e.to]) {
            dominated = true;
            break;
          }
        if (!dominated) f += inst.penalties[i];
      }
      return f;
    }
    case ProblemKind::MinCut: {
      const double beta = inst.penalties[0];
      const auto& vb = *inst.volume_bounds;
      const double vol = static_cast<double>(selected_volume(g, x));
      return objective(inst, x) + beta * hinge(vol - vb.hi) +
             beta * hinge(vb.lo - vol);
    }
  }
  return 0.0;
}

bool is_feasible(const ProblemInstance& inst, const Assignment& x) {
  validate_assignment(inst, x);
  const Graph& g = inst.graph;
  switch (inst.kind) {
    case ProblemKind::MIS:
      for (const auto& [i, j] : g.edges())
        if (x[i] && x[j]) return false;
      return true;
    case ProblemKind::MaxClique:
      return first_nonadjacent_selected_pair(g, x).first < 0;
    case ProblemKind::MinDominatingSet:
      for (int i = 0; i < g.num_nodes(); ++i) {
        if (x[i]) continue;
        bool dominated = false;
        for (const auto& e : g.neighbors(i))
          if (x[e.to]) {
            dominated = true;
            break;
          }
        if (!dominated) return false;
      }
      return true;
    case ProblemKind::MinCut: {
      const auto& vb = *inst.volume_bounds;
      const double vol = static_cast<double>(selected_volume(g, x));
      return vb.lo <= vol && vol <= vb.hi;
    }
  }
  return false;
}

Assignment repair(const ProblemInstance& inst, Assignment x) {
  validate_assignment(inst, x);
  const Graph& g = inst.graph;
  const int n = g.num_nodes();

  switch (inst.kind) {
    case ProblemKind::MIS: {
      for (int round = 0; round <= n; ++round) {
        int victim = -1;
        for (const auto& [i, j] : g.edges()) {
          if (x[i] && x[j]) {
            victim = g.node_weight(i) <= g.node_weight(j) ? i : j;
            break;
          }
        }
        if (victim < 0) return x;
        x[victim] = 0;
      }
      break;
    }
    case ProblemKind::MaxClique: {
      for (int round = 0; round <= n; ++round) {
        auto [i, j] = first_nonadjacent_selected_pair(g, x);
        if (i < 0) return x;
        x[g.node_weight(i) <= g.node_weight(j) ? i : j] = 0;
      }
      break;
    }
    case ProblemKind::MinDominatingSet: {
      for (int round = 0; round <= n; ++round) {
        int undominated = -1;
        for (int i = 0; i < n && undominated < 0; ++i) {
          if (x[i]) continue;
          bool dominated = false;
          for (const auto& e : g.neighbors(i))
            if (x[e.to]) {
              dominated = true;
              break;
            }
          if (!dominated) undominated = i;
        }
        if (undominated < 0) return x;
        int pick = undominated;
        double best = g.node_weight(undominated);
        for (const auto& e : g.neighbors(undominated)) {
          if (g.node_weight(e.to) < best ||
              (g.node_weight(e.to) == best && e.to < pick)) {
            best = g.node_weight(e.to);
            pick = e.to;
          }
        }
        x[pick] = 1;
      }
      break;
    }
    case ProblemKind::MinCut: {
      const auto& vb = *inst.volume_bounds;
      long long vol = selected_volume(g, x);
      for (int round = 0; round < 4 * n + 4; ++round) {
        if (vb.lo <= vol && vol <= vb.hi) return x;
        const bool grow = vol < vb.lo;
        int pick = -1;
        double pick_delta = 0.0;
        bool pick_in_window = false;
        for (int i = 0; i < n; ++i) {
          const int d = g.degree(i);
          if (d == 0) continue;
          if (grow ? x[i] : !x[i]) continue;
          const long long nvol = vol + (grow ? d : -d);
          const bool in_window = vb.lo <= nvol && nvol <= vb.hi;
          const double delta =
              grow ? discrete_gap(inst, x, i) : -discrete_gap(inst, x, i);
          const bool better =
              pick < 0 || (in_window && !pick_in_window) ||
              (in_window == pick_in_window && delta < pick_delta);
          if (better) {
            pick = i;
            pick_delta = delta;
            pick_in_window = in_window;
          }
        }
        if (pick < 0) break;
        x[pick] = grow ? 1 : 0;
        vol += grow ? g.degree(pick) : -g.degree(pick);
      }
      if (vb.lo <= vol && vol <= vb.hi) return x;
      throw std::runtime_error(
          "repair: no assignment reaches the volume window");
    }
  }
  throw std::runtime_error("repair: failed to reach a feasible assignment");
}

double discrete_gap(const ProblemInstance& inst, const Assignment& x, int i) {
  validate_assignment(inst, x);
  const Graph& g = inst.graph;
  if (i < 0 || i >= g.num_nodes())
    throw std::out_of_range("discrete_gap: node index out of range");

  switch (inst.kind) {
    case ProblemKind::MIS: {
      double gap = -g.node_weight(i);
      for (const auto& e : g.neighbors(i))
        if (x[e.to]) gap += inst.penalties[e.edge];
      return gap;
    }
    case ProblemKind::MaxClique: {
      ComplementIndexer idx(g);
      double gap = -g.node_weight(i);
      auto nb = g.neighbors(i);
      std::size_t a = 0;
      for (int j = 0; j < g.num_nodes(); ++j) {
        while (a < nb.size() && nb[a].to < j) ++a;
        if (j == i || (a < nb.size() && nb[a].to == j)) continue;
        if (x[j]) gap += inst.penalties[idx.index(i, j)];
      }
      return gap;
    }
    case ProblemKind::MinDominatingSet: {
      double gap = g.node_weight(i);
      double prod = 1.0;
      for (const auto& e : g.neighbors(i))
        if (x[e.to]) {
          prod = 0.0;
          break;
        }
      gap -= inst.penalties[i] * prod;
      for (const auto& e : g.neighbors(i)) {
        const int t = e.to;
        if (x[t]) continue;
        bool covered = false;
        for (const auto& f : g.neighbors(t))
          if (f.to != i && x[f.to]) {
            covered = true;
            break;
          }
        if (!covered) gap -= inst.penalties[t];
      }
      return gap;
    }
    case ProblemKind::MinCut: {
      const double beta = inst.penalties[0];
      const auto& vb = *inst.volume_bounds;
      double gap = 0.0;
      for (const auto& e : g.neighbors(i))
        gap += g.edge_weight(e.edge) * (1.0 - 2.0 * (x[e.to] ? 1.0 : 0.0));
      double vol0 = 0.0;
      for (int j = 0; j < g.num_nodes(); ++j)
        if (j != i && x[j]) vol0 += g.degree(j);
      const double d = g.degree(i);
      gap += beta * (hinge(vol0 + d - vb.hi) - hinge(vol0 - vb.hi));
      gap += beta * (hinge(vb.lo - vol0 - d) - hinge(vb.lo - vol0));
      return gap;
    }
  }
  return 0.0;
}

double lipschitz_bound(const ProblemInstance& inst) {
  const Graph& g = inst.graph;
  const int n = g.num_nodes();
  double bound = 0.0;
  switch (inst.kind) {
    case ProblemKind::MIS:
      for (int i = 0; i < n; ++i) {
        double b = g.node_weight(i);
        for (const auto& e : g.neighbors(i)) b += inst.penalties[e.edge];
        bound = std::max(bound, b);
      }
      break;
    case ProblemKind::MaxClique: {
      ComplementIndexer idx(g);
      for (int i = 0; i < n; ++i) {
        double b = g.node_weight(i);
        auto nb = g.neighbors(i);
        std::size_t a = 0;
        for (int j = 0; j < n; ++j) {
          while (a < nb.size() && nb[a].to < j) ++a;
          if (j == i || (a < nb.size() && nb[a].to == j)) continue;
          b += inst.penalties[idx.index(i, j)];
        }
        bound = std::max(bound, b);
      }
      break;
    }
    case ProblemKind::MinDominatingSet:
      for (int i = 0; i < n; ++i) {
        double b = g.node_weight(i) + inst.penalties[i];
        for (const auto& e : g.neighbors(i)) b += inst.penalties[e.to];
        bound = std::max(bound, b);
      }
      break;
    case ProblemKind::MinCut: {
      double row = 0.0;
      for (int i = 0; i < n; ++i) {
        double r = 0.0;
        for (const auto& e : g.neighbors(i))
          r += std::abs(g.edge_weight(e.edge));
        row = std::max(row, r);
      }
      bound = row + inst.penalties[0] * g.max_degree();
      break;
    }
  }
  return bound;
}

double local_conductance(const ProblemInstance& inst, const Assignment& x) {
  const double vol = static_cast<double>(selected_volume(inst.graph, x));
  if (vol <= 0.0) return std::numeric_limits<double>::infinity();
  return objective(inst, x) / vol;
}

nlohmann::json instance_to_json(const ProblemInstance& inst) {
  nlohmann::json j;
  j["kind"] = kind_name(inst.kind);
  std::ostringstream graph_os;
  write_graph(inst.graph, graph_os, GraphFormat::Json);
  j["graph"] = nlohmann::json::parse(graph_os.str());
  j["penalties"] = inst.penalties;
  if (inst.volume_bounds)
    j["volume_bounds"] = {inst.volume_bounds->lo, inst.volume_bounds->hi};
  return j;
}

ProblemInstance instance_from_json(const nlohmann::json& j) {
  ProblemInstance inst;
  inst.kind = kind_from_name(j.at("kind").get<std::string>());
  std::istringstream graph_is(j.at("graph").dump());
  inst.graph = parse_graph(graph_is, GraphFormat::Json);
  inst.penalties = j.at("penalties").get<std::vector<double>>();
  if (j.contains("volume_bounds")) {
    VolumeBounds vb;
    vb.lo = j.at("volume_bounds").at(0).get<double>();
    vb.hi = j.at("volume_bounds").at(1).get<double>();
    inst.volume_bounds = vb;
  }
  validate_instance(inst);
  return inst;
}

}  // namespace annealco
