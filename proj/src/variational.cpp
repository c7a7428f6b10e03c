#include "annealco/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace annealco {

namespace {

double hinge(double v) { return v > 0.0 ? v : 0.0; }

double clamp01(double p) {
  return std::min(std::max(p, kMarginClamp), 1.0 - kMarginClamp);
}

void check_size(const ProblemInstance& inst, const Marginals& phi,
                const char* op) {
  if (static_cast<int>(phi.size()) != inst.graph.num_nodes())
    throw std::invalid_argument(std::string(op) +
                                ": marginals size does not match node count");
}

double expected_volume(const Graph& g, const Marginals& phi) {
  double v = 0.0;
  for (int i = 0; i < g.num_nodes(); ++i) v += g.degree(i) * phi[i];
  return v;
}

// Per-node products of (1 - phi_j) over open neighborhoods, split into the
// count of exactly-zero factors and the product of the rest so leave-one-out
// values stay defined at phi_j = 1.
struct NeighborProducts {
  std::vector<int> zeros;
  std::vector<double> rest;

  void build(const Graph& g, const Marginals& phi) {
    const int n = g.num_nodes();
    zeros.assign(n, 0);
    rest.assign(n, 1.0);
    for (int i = 0; i < n; ++i)
      for (const auto& e : g.neighbors(i)) {
        const double f = 1.0 - phi[e.to];
        if (f == 0.0)
          ++zeros[i];
        else
          rest[i] *= f;
      }
  }

  double full(int i) const { return zeros[i] ? 0.0 : rest[i]; }

  double excluding(int i, double factor) const {
    if (factor == 0.0) return zeros[i] == 1 ? rest[i] : 0.0;
    return zeros[i] ? 0.0 : rest[i] / factor;
  }
};

}  // namespace

Marginals uniform_marginals(int n) {
  if (n < 0) throw std::invalid_argument("uniform_marginals: negative size");
  return Marginals(n, 0.5);
}

void clamp_marginals(Marginals& phi) {
  for (auto& p : phi) p = clamp01(p);
}

double expected_energy(const ProblemInstance& inst, const Marginals& phi) {
  check_size(inst, phi, "expected_energy");
  const Graph& g = inst.graph;
  const int n = g.num_nodes();

  switch (inst.kind) {
    case ProblemKind::MIS: {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc -= g.node_weight(i) * phi[i];
      const auto& edges = g.edges();
      for (std::size_t e = 0; e < edges.size(); ++e)
        acc += inst.penalties[e] * phi[edges[e].first] * phi[edges[e].second];
      return acc;
    }
    case ProblemKind::MaxClique: {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc -= g.node_weight(i) * phi[i];
      std::size_t idx = 0;
      for (auto [a, b] : complement_edges(g))
        acc += inst.penalties[idx++] * phi[a] * phi[b];
      return acc;
    }
    case ProblemKind::MinDominatingSet: {
      NeighborProducts np;
      np.build(g, phi);
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += g.node_weight(i) * phi[i];
        acc += inst.penalties[i] * (1.0 - phi[i]) * np.full(i);
      }
      return acc;
    }
    case ProblemKind::MinCut: {
      double acc = 0.0;
      const auto& edges = g.edges();
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const double pi = phi[edges[e].first];
        const double pj = phi[edges[e].second];
        acc += g.edge_weight(static_cast<int>(e)) * (pi + pj - 2.0 * pi * pj);
      }
      const double beta = inst.penalties[0];
      const double v = expected_volume(g, phi);
      const auto& b = *inst.volume_bounds;
      acc += beta * (hinge(v - b.hi) + hinge(b.lo - v));
      return acc;
    }
  }
  throw std::logic_error("expected_energy: unknown problem kind");
}

double expected_energy_partial(const ProblemInstance& inst,
                               const Marginals& phi, int t) {
  check_size(inst, phi, "expected_energy_partial");
  const Graph& g = inst.graph;
  if (t < 0 || t >= g.num_nodes())
    throw std::out_of_range("expected_energy_partial: node out of range");

  switch (inst.kind) {
    case ProblemKind::MIS: {
      double d = -g.node_weight(t);
      for (const auto& e : g.neighbors(t))
        d += inst.penalties[e.edge] * phi[e.to];
      return d;
    }
    case ProblemKind::MaxClique: {
      double d = -g.node_weight(t);
      const ComplementIndexer indexer(g);
      const auto nbrs = g.neighbors(t);
      std::size_t pos = 0;
      for (int j = 0; j < g.num_nodes(); ++j) {
        if (j == t) continue;
        while (pos < nbrs.size() && nbrs[pos].to < j) ++pos;
        if (pos < nbrs.size() && nbrs[pos].to == j) continue;
        d += inst.penalties[indexer.index(t, j)] * phi[j];
      }
      return d;
    }
    case ProblemKind::MinDominatingSet: {
      NeighborProducts np;
      np.build(g, phi);
      double d = g.node_weight(t) - inst.penalties[t] * np.full(t);
      const double ft = 1.0 - phi[t];
      for (const auto& e : g.neighbors(t))
        d -= inst.penalties[e.to] * (1.0 - phi[e.to]) * np.excluding(e.to, ft);
      return d;
    }
    case ProblemKind::MinCut: {
      double d = 0.0;
      for (const auto& e : g.neighbors(t))
        d += g.edge_weight(e.edge) * (1.0 - 2.0 * phi[e.to]);
      const double beta = inst.penalties[0];
      const double v = expected_volume(g, phi);
      const auto& b = *inst.volume_bounds;
      if (v > b.hi) d += beta * g.degree(t);
      if (b.lo > v) d -= beta * g.degree(t);
      return d;
    }
  }
  throw std::logic_error("expected_energy_partial: unknown problem kind");
}

void expected_energy_grad(const ProblemInstance& inst, const Marginals& phi,
                          std::vector<double>& grad) {
  check_size(inst, phi, "expected_energy_grad");
  const Graph& g = inst.graph;
  const int n = g.num_nodes();
  grad.assign(n, 0.0);

  switch (inst.kind) {
    case ProblemKind::MIS: {
      for (int i = 0; i < n; ++i) grad[i] = -g.node_weight(i);
      const auto& edges = g.edges();
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [a, b] = edges[e];
        grad[a] += inst.penalties[e] * phi[b];
        grad[b] += inst.penalties[e] * phi[a];
      }
      return;
    }
    case ProblemKind::MaxClique: {
      for (int i = 0; i < n; ++i) grad[i] = -g.node_weight(i);
      std::size_t idx = 0;
      for (auto [a, b] : complement_edges(g)) {
        grad[a] += inst.penalties[idx] * phi[b];
        grad[b] += inst.penalties[idx] * phi[a];
        ++idx;
      }
      return;
    }
    case ProblemKind::MinDominatingSet: {
      NeighborProducts np;
      np.build(g, phi);
      for (int i = 0; i < n; ++i)
        grad[i] = g.node_weight(i) - inst.penalties[i] * np.full(i);
      for (int i = 0; i < n; ++i) {
        const double coeff = inst.penalties[i] * (1.0 - phi[i]);
        for (const auto& e : g.neighbors(i))
          grad[e.to] -= coeff * np.excluding(i, 1.0 - phi[e.to]);
      }
      return;
    }
    case ProblemKind::MinCut: {
      const auto& edges = g.edges();
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [a, b] = edges[e];
        const double w = g.edge_weight(static_cast<int>(e));
        grad[a] += w * (1.0 - 2.0 * phi[b]);
        grad[b] += w * (1.0 - 2.0 * phi[a]);
      }
      const double beta = inst.penalties[0];
      const double v = expected_volume(g, phi);
      const auto& b = *inst.volume_bounds;
      double dir = 0.0;
      if (v > b.hi) dir += 1.0;
      if (b.lo > v) dir -= 1.0;
      if (dir != 0.0)
        for (int i = 0; i < n; ++i) grad[i] += beta * dir * g.degree(i);
      return;
    }
  }
  throw std::logic_error("expected_energy_grad: unknown problem kind");
}

double energy_gap(const ProblemInstance& inst, const Marginals& phi, int i) {
  check_size(inst, phi, "energy_gap");
  if (i < 0 || i >= inst.graph.num_nodes())
    throw std::out_of_range("energy_gap: node out of range");
  Marginals probe = phi;
  probe[i] = 1.0;
  const double high = expected_energy(inst, probe);
  probe[i] = 0.0;
  const double low = expected_energy(inst, probe);
  return high - low;
}

double entropy(const Marginals& phi) {
  double h = 0.0;
  for (double p : phi) {
    const double q = clamp01(p);
    h -= q * std::log(q) + (1.0 - q) * std::log(1.0 - q);
  }
  return h;
}

double loss(const ProblemInstance& inst, const Marginals& phi, double tau) {
  if (tau < 0.0) throw std::invalid_argument("loss: negative temperature");
  return expected_energy(inst, phi) - tau * entropy(phi);
}

void loss_grad(const ProblemInstance& inst, const Marginals& phi, double tau,
               std::vector<double>& grad) {
  if (tau < 0.0) throw std::invalid_argument("loss_grad: negative temperature");
  expected_energy_grad(inst, phi, grad);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double q = clamp01(phi[i]);
    grad[i] += tau * (std::log(q) - std::log(1.0 - q));
  }
}

double exact_expected_violation(const Graph& g, const Marginals& phi,
                                VolumeBounds bounds) {
  if (static_cast<int>(phi.size()) != g.num_nodes())
    throw std::invalid_argument(
        "exact_expected_violation: marginals size does not match node count");
  const long long total = g.total_degree();
  std::vector<double> dp(total + 1, 0.0);
  dp[0] = 1.0;
  long long reach = 0;
  for (int i = 0; i < g.num_nodes(); ++i) {
    const int d = g.degree(i);
    const double p = phi[i];
    if (d == 0) continue;  // volume unchanged either way
    for (long long v = reach; v >= 0; --v) {
      const double mass = dp[v];
      if (mass == 0.0) continue;
      dp[v] = mass * (1.0 - p);
      dp[v + d] += mass * p;
    }
    reach += d;
  }
  double acc = 0.0;
  for (long long v = 0; v <= total; ++v)
    if (dp[v] != 0.0)
      acc += dp[v] * (hinge(static_cast<double>(v) - bounds.hi) +
                      hinge(bounds.lo - static_cast<double>(v)));
  return acc;
}

}  // namespace annealco
