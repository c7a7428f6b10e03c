#include "annealco/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace annealco {

namespace {

Assignment assignment_from_mask(std::uint64_t mask, int n) {
  Assignment x(n, 0);
  for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
  return x;
}

std::uint64_t mask_from_assignment(const Assignment& x) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) mask |= std::uint64_t{1} << i;
  return mask;
}

void require_cap(const char* op, int n, int cap) {
  if (n > cap)
    throw std::invalid_argument(std::string(op) + ": n = " + std::to_string(n) +
                                " exceeds enumeration cap " +
                                std::to_string(cap));
}

}  // namespace

BruteForceResult brute_force_optimum(const ProblemInstance& inst,
                                     const EnumerationCaps& caps) {
  const int n = inst.graph.num_nodes();
  require_cap("brute_force_optimum", n, caps.brute_force);

  BruteForceResult out;
  bool any = false;
  Assignment x(n, 0);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
    if (!is_feasible(inst, x)) continue;
    const double c = objective(inst, x);
    if (!any || c < out.opt_value) {
      any = true;
      out.opt_value = c;
      out.argmins.clear();
      out.argmins.push_back(x);
    } else if (c == out.opt_value) {
      out.argmins.push_back(x);
    }
  }
  if (!any)
    throw std::runtime_error("brute_force_optimum: no feasible assignment");
  return out;
}

ExactDistribution exact_ebm(const ProblemInstance& inst, double tau,
                            const EnumerationCaps& caps) {
  const int n = inst.graph.num_nodes();
  require_cap("exact_ebm", n, caps.ebm);
  if (!(tau > 0.0)) throw std::invalid_argument("exact_ebm: tau must be > 0");

  ExactDistribution dist;
  dist.temperature = tau;
  const std::uint64_t total = std::uint64_t{1} << n;
  dist.energies.resize(total);
  dist.probabilities.resize(total);

  Assignment x(n, 0);
  double min_energy = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
    dist.energies[mask] = energy(inst, x);
    min_energy = std::min(min_energy, dist.energies[mask]);
  }
  double z = 0.0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    dist.probabilities[mask] = std::exp(-(dist.energies[mask] - min_energy) / tau);
    z += dist.probabilities[mask];
  }
  for (auto& p : dist.probabilities) p /= z;
  return dist;
}

std::vector<LimitPoint> limit_check(const ProblemInstance& inst,
                                    std::span<const double> taus,
                                    const EnumerationCaps& caps) {
  const int n = inst.graph.num_nodes();
  require_cap("limit_check", n, caps.limit);

  const auto opt = brute_force_optimum(inst, caps);
  std::vector<std::uint64_t> opt_masks;
  opt_masks.reserve(opt.argmins.size());
  for (const auto& a : opt.argmins) opt_masks.push_back(mask_from_assignment(a));

  const double uniform = std::ldexp(1.0, -n);
  std::vector<LimitPoint> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    const auto dist = exact_ebm(inst, tau, caps);
    LimitPoint pt;
    pt.tau = tau;
    pt.mass_on_optima = 0.0;
    double tv = 0.0;
    for (double p : dist.probabilities) tv += std::abs(p - uniform);
    pt.tv_uniform = 0.5 * tv;
    for (auto mask : opt_masks) pt.mass_on_optima += dist.probabilities[mask];
    out.push_back(pt);
  }
  return out;
}

bool unbiasedness_check(const ProblemInstance& inst,
                        const EnumerationCaps& caps) {
  const int n = inst.graph.num_nodes();
  require_cap("unbiasedness_check", n, caps.ebm);

  double min_energy = std::numeric_limits<double>::infinity();
  double min_feasible_cost = std::numeric_limits<double>::infinity();
  Assignment x(n, 0);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
    min_energy = std::min(min_energy, energy(inst, x));
    if (is_feasible(inst, x))
      min_feasible_cost = std::min(min_feasible_cost, objective(inst, x));
  }
  if (!std::isfinite(min_feasible_cost))
    throw std::runtime_error("unbiasedness_check: no feasible assignment");
  return min_energy >= min_feasible_cost - 1e-9;
}

void dump_distribution_csv(const ExactDistribution& dist, std::ostream& out) {
  out << "bitmask,energy,probability\n";
  for (std::size_t mask = 0; mask < dist.probabilities.size(); ++mask)
    out << mask << "," << dist.energies[mask] << ","
        << dist.probabilities[mask] << "\n";
}

namespace {

struct MdsSearch {
  const Graph* g;
  int n;
  std::uint64_t full;
  std::vector<std::uint64_t> closed;  // closed neighborhood bitmasks
  double min_weight;
  int max_cover;
  double best_weight;
  std::uint64_t best_set;

  void run() {
    // Greedy cover supplies the initial upper bound.
    std::uint64_t dominated = 0, selected = 0;
    double weight = 0.0;
    while (dominated != full) {
      int pick = -1;
      double score = -1.0;
      for (int i = 0; i < n; ++i) {
        const int fresh = std::popcount(closed[i] & ~dominated);
        if (fresh == 0) continue;
        const double s = fresh / g->node_weight(i);
        if (s > score) {
          score = s;
          pick = i;
        }
      }
      dominated |= closed[pick];
      selected |= std::uint64_t{1} << pick;
      weight += g->node_weight(pick);
    }
    best_weight = weight;
    best_set = selected;
    dfs(0, 0, 0.0);
  }

  void dfs(std::uint64_t dominated, std::uint64_t selected, double weight) {
    if (dominated == full) {
      if (weight < best_weight) {
        best_weight = weight;
        best_set = selected;
      }
      return;
    }
    const int undominated = std::popcount(full & ~dominated);
    const double lower =
        std::ceil(static_cast<double>(undominated) / max_cover) * min_weight;
    if (weight + lower >= best_weight - 1e-12) return;

    // Branch on the undominated vertex with the fewest covering candidates.
    int branch = -1, branch_card = n + 2;
    for (int i = 0; i < n; ++i) {
      if ((dominated >> i) & 1u) continue;
      const int card = std::popcount(closed[i]);
      if (card < branch_card) {
        branch_card = card;
        branch = i;
      }
    }
    // Some vertex of N[branch] must be selected; try high-coverage first.
    std::vector<int> candidates;
    for (int u = 0; u < n; ++u)
      if ((closed[branch] >> u) & 1u) candidates.push_back(u);
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      const int ca = std::popcount(closed[a] & ~dominated);
      const int cb = std::popcount(closed[b] & ~dominated);
      if (ca != cb) return ca > cb;
      return a < b;
    });
    for (int u : candidates)
      dfs(dominated | closed[u], selected | (std::uint64_t{1} << u),
          weight + g->node_weight(u));
  }
};

}  // namespace

MdsOptimum exact_min_dominating_set(const Graph& g) {
  const int n = g.num_nodes();
  if (n > 64)
    throw std::invalid_argument("exact_min_dominating_set: n > 64");
  if (n == 0) return {0.0, {}};

  MdsSearch search;
  search.g = &g;
  search.n = n;
  search.full = n == 64 ? ~std::uint64_t{0}
                        : (std::uint64_t{1} << n) - 1;
  search.closed.resize(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t m = std::uint64_t{1} << i;
    for (const auto& e : g.neighbors(i)) m |= std::uint64_t{1} << e.to;
    search.closed[i] = m;
  }
  search.min_weight = *std::min_element(g.node_weights().begin(),
                                        g.node_weights().end());
  search.max_cover = 1;
  for (int i = 0; i < n; ++i)
    search.max_cover = std::max(search.max_cover, std::popcount(search.closed[i]));
  search.run();

  MdsOptimum out;
  out.weight = search.best_weight;
  out.assignment = assignment_from_mask(search.best_set, n);
  return out;
}

}  // namespace annealco
