#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "annealco/energy.hpp"

namespace annealco {

// Enumeration budgets, tuned for sub-minute desk runs.
struct EnumerationCaps {
  int brute_force = 24;
  int ebm = 20;
  int limit = 16;
};

struct BruteForceResult {
  double opt_value = 0.0;          // min of c over feasible assignments
  std::vector<Assignment> argmins;  // every feasible minimizer
};

// Exhaustive search over {0,1}^n. Throws on n above the cap and on
// instances with no feasible assignment.
BruteForceResult brute_force_optimum(const ProblemInstance& inst,
                                     const EnumerationCaps& caps = {});

// Boltzmann distribution p(x) proportional to exp(-f(x)/tau), tabulated over
// all bitmasks (bit i of the mask is x_i). Computed with max-subtraction so
// tiny temperatures do not underflow.
struct ExactDistribution {
  std::vector<double> probabilities;
  std::vector<double> energies;
  double temperature = 1.0;
};

ExactDistribution exact_ebm(const ProblemInstance& inst, double tau,
                            const EnumerationCaps& caps = {});

struct LimitPoint {
  double tau = 0.0;
  double tv_uniform = 0.0;      // total variation distance to uniform
  double mass_on_optima = 0.0;  // probability mass on brute-force argmins
};

std::vector<LimitPoint> limit_check(const ProblemInstance& inst,
                                    std::span<const double> taus,
                                    const EnumerationCaps& caps = {});

// True iff min_x f(x) equals the minimum of c over feasible assignments,
// i.e. the penalized energy is unbiased.
bool unbiasedness_check(const ProblemInstance& inst,
                        const EnumerationCaps& caps = {});

// CSV rows "bitmask,energy,probability".
void dump_distribution_csv(const ExactDistribution& dist, std::ostream& out);

struct MdsOptimum {
  double weight = 0.0;
  Assignment assignment;
};

// Exact minimum-weight dominating set via branch and bound (n <= 64).
// Serves as the reference optimum beyond the 2^n enumeration range.
MdsOptimum exact_min_dominating_set(const Graph& g);

}  // namespace annealco
