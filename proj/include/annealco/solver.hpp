#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "annealco/schedule.hpp"
#include "annealco/variational.hpp"

namespace annealco {

enum class OptimizerKind { Langevin, Mfa };

const char* optimizer_kind_name(OptimizerKind k);
OptimizerKind optimizer_kind_from_name(const std::string& name);

struct SolverConfig {
  ScheduleSpec schedule;
  OptimizerKind optimizer = OptimizerKind::Langevin;
  int steps_per_temperature = 5;
  double learning_rate = -1.0;  // < 0 selects 0.1 / Lipschitz bound
  double noise_sigma = 0.01;
  std::uint64_t seed = 0;
  std::optional<Marginals> initial_marginals;  // default: uniform 0.5
};

// Called after each temperature stage's inner updates.
using StepObserver =
    std::function<void(int step, double tau, const Marginals& phi)>;

// Noisy gradient descent on the free-energy objective along the cooling
// schedule. Returns the final marginals.
Marginals anneal_optimize(const ProblemInstance& inst, const SolverConfig& cfg,
                          const StepObserver& observer = {});

// Mean-field fixed point phi_i <- sigmoid(-g_i / tau) along the same
// schedule; updates sweep the nodes sequentially in index order.
Marginals mfa_optimize(const ProblemInstance& inst, const SolverConfig& cfg,
                       const StepObserver& observer = {});

// Derandomized rounding: coordinates are fixed in decreasing order of
// |phi_i - 0.5| (ties toward the lower index), each to the value with the
// smaller conditional expected energy (ties toward 0).
Assignment decode(const ProblemInstance& inst, const Marginals& phi);

struct Solution {
  Assignment assignment;
  Marginals marginals;
  double objective_value = 0.0;
  double energy_value = 0.0;
  bool feasible_before_repair = false;
};

nlohmann::json solution_to_json(const Solution& s);

// optimize, decode, repair.
Solution solve(const ProblemInstance& inst, const SolverConfig& cfg);

}  // namespace annealco
