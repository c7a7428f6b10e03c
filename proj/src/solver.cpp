#include "annealco/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace annealco {

const char* optimizer_kind_name(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::Langevin: return "langevin";
    case OptimizerKind::Mfa: return "mfa";
  }
  throw std::logic_error("optimizer_kind_name: unknown kind");
}

OptimizerKind optimizer_kind_from_name(const std::string& name) {
  if (name == "langevin") return OptimizerKind::Langevin;
  if (name == "mfa") return OptimizerKind::Mfa;
  throw std::invalid_argument("unknown optimizer kind: " + name);
}

namespace {

double clamp01(double p) {
  return std::clamp(p, kMarginClamp, 1.0 - kMarginClamp);
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Marginals initial_marginals(const ProblemInstance& inst,
                            const SolverConfig& cfg) {
  const int n = inst.graph.num_nodes();
  if (!cfg.initial_marginals) return uniform_marginals(n);
  if (static_cast<int>(cfg.initial_marginals->size()) != n)
    throw std::invalid_argument(
        "initial marginals size does not match node count");
  Marginals phi = *cfg.initial_marginals;
  clamp_marginals(phi);
  return phi;
}

void check_config(const SolverConfig& cfg) {
  if (cfg.steps_per_temperature < 1)
    throw std::invalid_argument("steps_per_temperature must be >= 1");
  if (cfg.noise_sigma < 0.0)
    throw std::invalid_argument("noise_sigma must be >= 0");
  if (cfg.learning_rate == 0.0)
    throw std::invalid_argument("learning_rate must be nonzero");
}

double resolve_learning_rate(const SolverConfig& cfg,
                             const ProblemInstance& inst) {
  if (cfg.learning_rate > 0.0) return cfg.learning_rate;
  return 0.1 / std::max(lipschitz_bound(inst), 1e-12);
}

}  // namespace

Marginals anneal_optimize(const ProblemInstance& inst, const SolverConfig& cfg,
                          const StepObserver& observer) {
  check_config(cfg);
  const Schedule sched = resolve_schedule(cfg.schedule, inst);
  const double lr = resolve_learning_rate(cfg, inst);
  Marginals phi = initial_marginals(inst, cfg);
  const int n = inst.graph.num_nodes();

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> grad;
  for (int k = 0; k <= sched.steps(); ++k) {
    const double tau = sched.temperature(k);
    for (int s = 0; s < cfg.steps_per_temperature; ++s) {
      loss_grad(inst, phi, tau, grad);
      for (int i = 0; i < n; ++i) {
        const double zeta =
            cfg.noise_sigma > 0.0 ? cfg.noise_sigma * noise(rng) : 0.0;
        phi[i] = clamp01(phi[i] - lr * (grad[i] + zeta));
      }
    }
    if (observer) observer(k, tau, phi);
  }
  return phi;
}

Marginals mfa_optimize(const ProblemInstance& inst, const SolverConfig& cfg,
                       const StepObserver& observer) {
  check_config(cfg);
  const Schedule sched = resolve_schedule(cfg.schedule, inst);
  Marginals phi = initial_marginals(inst, cfg);
  const int n = inst.graph.num_nodes();

  for (int k = 0; k <= sched.steps(); ++k) {
    const double tau = sched.temperature(k);
    for (int s = 0; s < cfg.steps_per_temperature; ++s)
      for (int i = 0; i < n; ++i) {
        const double g = expected_energy_partial(inst, phi, i);
        phi[i] = clamp01(sigmoid(-g / tau));
      }
    if (observer) observer(k, tau, phi);
  }
  return phi;
}

Assignment decode(const ProblemInstance& inst, const Marginals& phi) {
  const int n = inst.graph.num_nodes();
  if (static_cast<int>(phi.size()) != n)
    throw std::invalid_argument("decode: marginals size does not match");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(phi[a] - 0.5) > std::abs(phi[b] - 0.5);
  });

  Marginals work = phi;
  Assignment x(n, 0);
  for (int i : order) {
    const double gap = energy_gap(inst, work, i);
    const std::uint8_t bit = gap < 0.0 ? 1 : 0;
    x[i] = bit;
    work[i] = bit;
  }
  return x;
}

Solution solve(const ProblemInstance& inst, const SolverConfig& cfg) {
  validate_instance(inst);
  Marginals phi = cfg.optimizer == OptimizerKind::Langevin
                      ? anneal_optimize(inst, cfg)
                      : mfa_optimize(inst, cfg);
  Assignment x = decode(inst, phi);

  Solution sol;
  sol.marginals = std::move(phi);
  sol.feasible_before_repair = is_feasible(inst, x);
  sol.assignment = repair(inst, std::move(x));
  sol.objective_value = objective(inst, sol.assignment);
  sol.energy_value = energy(inst, sol.assignment);
  return sol;
}

nlohmann::json solution_to_json(const Solution& s) {
  nlohmann::json j;
  j["assignment"] = s.assignment;
  std::vector<int> selected;
  for (std::size_t i = 0; i < s.assignment.size(); ++i)
    if (s.assignment[i]) selected.push_back(static_cast<int>(i));
  j["selected"] = selected;
  j["objective"] = s.objective_value;
  j["energy"] = s.energy_value;
  j["feasible_before_repair"] = s.feasible_before_repair;
  j["marginals"] = s.marginals;
  return j;
}

}  // namespace annealco
