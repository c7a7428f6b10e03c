#pragma once

#include <vector>

#include "annealco/energy.hpp"

namespace annealco {

// Marginals of the independent-Bernoulli (mean-field) family: phi[i] is the
// probability that node i is selected. Optimization keeps them inside
// [kMarginClamp, 1 - kMarginClamp] so entropy terms stay finite.
inline constexpr double kMarginClamp = 1e-6;

using Marginals = std::vector<double>;

Marginals uniform_marginals(int n);
void clamp_marginals(Marginals& phi);

// Expectation of the penalized energy under independent Bernoulli(phi[i])
// draws. Closed form for every problem kind; the volume-window penalty uses
// the hinge of the expected volume (a surrogate upper-bounded by Jensen; see
// exact_expected_violation for the exact value used as a test reference).
double expected_energy(const ProblemInstance& inst, const Marginals& phi);

// Partial derivative of expected_energy with respect to phi[i]. At hinge
// kinks the subgradient 0 is returned.
double expected_energy_partial(const ProblemInstance& inst,
                               const Marginals& phi, int i);

// Full gradient of expected_energy; grad is resized to n.
void expected_energy_grad(const ProblemInstance& inst, const Marginals& phi,
                          std::vector<double>& grad);

// Conditional gap E[f | x_i = 1] - E[f | x_i = 0] with the remaining
// coordinates kept at phi. Drives derandomized rounding.
double energy_gap(const ProblemInstance& inst, const Marginals& phi, int i);

// Bernoulli entropy sum; phi values are clamped locally before the logs.
double entropy(const Marginals& phi);

// Temperature-weighted free-energy objective: expected energy minus
// tau * entropy, and its gradient.
double loss(const ProblemInstance& inst, const Marginals& phi, double tau);
void loss_grad(const ProblemInstance& inst, const Marginals& phi, double tau,
               std::vector<double>& grad);

// Exact E[(vol - hi)_+ + (lo - vol)_+] where vol is the random selected
// volume. Dynamic program over the integer volume distribution; reference
// oracle for the hinge-of-mean surrogate above.
double exact_expected_violation(const Graph& g, const Marginals& phi,
                                VolumeBounds bounds);

}  // namespace annealco
