#include "annealco/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace annealco {

namespace {

Assignment greedy_independent_set(const Graph& g) {
  const int n = g.num_nodes();
  Assignment x(n, 0);
  std::vector<char> alive(n, 1);
  int remaining = n;
  while (remaining > 0) {
    int pick = -1;
    double score = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      int deg = 0;
      for (const auto& e : g.neighbors(i)) deg += alive[e.to];
      const double s = g.node_weight(i) / (deg + 1.0);
      if (pick < 0 || s > score) {
        pick = i;
        score = s;
      }
    }
    x[pick] = 1;
    alive[pick] = 0;
    --remaining;
    for (const auto& e : g.neighbors(pick))
      if (alive[e.to]) {
        alive[e.to] = 0;
        --remaining;
      }
  }
  return x;
}

Assignment greedy_clique(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<int> seeds(n);
  std::iota(seeds.begin(), seeds.end(), 0);
  std::stable_sort(seeds.begin(), seeds.end(), [&](int a, int b) {
    return g.node_weight(a) > g.node_weight(b);
  });

  Assignment best(n, 0);
  double best_weight = 0.0;
  std::vector<char> in_cand(n, 0);
  for (int s : seeds) {
    std::vector<int> clique = {s};
    double weight = g.node_weight(s);
    std::vector<int> cand;
    for (const auto& e : g.neighbors(s)) cand.push_back(e.to);
    while (!cand.empty()) {
      int pick = cand[0];
      for (int v : cand)
        if (g.node_weight(v) > g.node_weight(pick) ||
            (g.node_weight(v) == g.node_weight(pick) && v < pick))
          pick = v;
      clique.push_back(pick);
      weight += g.node_weight(pick);
      for (const auto& e : g.neighbors(pick)) in_cand[e.to] = 1;
      std::vector<int> next;
      for (int v : cand)
        if (v != pick && in_cand[v]) next.push_back(v);
      for (const auto& e : g.neighbors(pick)) in_cand[e.to] = 0;
      cand.swap(next);
    }
    if (weight > best_weight) {
      best_weight = weight;
      best.assign(n, 0);
      for (int v : clique) best[v] = 1;
    }
  }
  return best;
}

Assignment greedy_dominating_set(const Graph& g) {
  const int n = g.num_nodes();
  Assignment x(n, 0);
  std::vector<char> dominated(n, 0);
  int undominated = n;
  while (undominated > 0) {
    int pick = -1;
    double score = -1.0;
    for (int i = 0; i < n; ++i) {
      int fresh = !dominated[i];
      for (const auto& e : g.neighbors(i)) fresh += !dominated[e.to];
      if (fresh == 0) continue;
      const double s = fresh / g.node_weight(i);
      if (s > score) {
        score = s;
        pick = i;
      }
    }
    x[pick] = 1;
    if (!dominated[pick]) {
      dominated[pick] = 1;
      --undominated;
    }
    for (const auto& e : g.neighbors(pick))
      if (!dominated[e.to]) {
        dominated[e.to] = 1;
        --undominated;
      }
  }
  return x;
}

Assignment greedy_cut_seed(const ProblemInstance& inst) {
  const Graph& g = inst.graph;
  const int n = g.num_nodes();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return g.degree(a) > g.degree(b);
  });
  Assignment x(n, 0);
  long long vol = 0;
  const double lo = inst.volume_bounds->lo;
  for (int i : order) {
    if (static_cast<double>(vol) >= lo) break;
    x[i] = 1;
    vol += g.degree(i);
  }
  return x;
}

}  // namespace

Solution greedy_solve(const ProblemInstance& inst) {
  validate_instance(inst);
  Assignment x;
  switch (inst.kind) {
    case ProblemKind::MIS: x = greedy_independent_set(inst.graph); break;
    case ProblemKind::MaxClique: x = greedy_clique(inst.graph); break;
    case ProblemKind::MinDominatingSet:
      x = greedy_dominating_set(inst.graph);
      break;
    case ProblemKind::MinCut: x = greedy_cut_seed(inst); break;
  }

  Solution sol;
  sol.feasible_before_repair = is_feasible(inst, x);
  sol.assignment = repair(inst, std::move(x));
  sol.marginals.assign(sol.assignment.begin(), sol.assignment.end());
  sol.objective_value = objective(inst, sol.assignment);
  sol.energy_value = energy(inst, sol.assignment);
  return sol;
}

}  // namespace annealco
