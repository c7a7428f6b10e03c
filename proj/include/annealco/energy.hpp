#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "annealco/graph.hpp"
#include "json.hpp"

namespace annealco {

enum class ProblemKind { MIS, MaxClique, MinDominatingSet, MinCut };

const char* kind_name(ProblemKind kind);
ProblemKind kind_from_name(const std::string& name);

// Candidate discrete solution, one bit per node.
using Assignment = std::vector<std::uint8_t>;

// Nonnegative penalty coefficients, keyed per the problem's constraint set:
// per edge (MIS), per complement edge in lexicographic order (MaxClique),
// per node (MinDominatingSet), a single scalar (MinCut).
using PenaltyVector = std::vector<double>;

// Which unbiasedness threshold to use as the default penalty. `SharpMin`
// is min{w_i, w_j} per (complement) edge, the smallest coefficient that
// keeps the energy unbiased; `StrictMax` is the larger max{w_i, w_j}
// variant. Both are unbiased; SharpMin yields the smoother landscape.
enum class PenaltyRule { SharpMin, StrictMax };

const char* penalty_rule_name(PenaltyRule rule);
PenaltyRule penalty_rule_from_name(const std::string& name);

struct VolumeBounds {
  double lo = 0.0;
  double hi = 0.0;
};

struct ProblemInstance {
  ProblemKind kind = ProblemKind::MIS;
  Graph graph;
  PenaltyVector penalties;
  std::optional<VolumeBounds> volume_bounds;  // MinCut only
};

PenaltyVector default_penalties(ProblemKind kind, const Graph& g,
                                PenaltyRule rule = PenaltyRule::SharpMin);

// Builds an instance with default penalties. MinCut requires bounds with
// 0 <= lo <= hi <= vol(V).
ProblemInstance make_instance(ProblemKind kind, Graph g,
                              std::optional<VolumeBounds> bounds = std::nullopt,
                              PenaltyRule rule = PenaltyRule::SharpMin);

// Multiplies every penalty entry by `factor` (ablation support).
void scale_penalties(ProblemInstance& inst, double factor);

void validate_instance(const ProblemInstance& inst);
void validate_assignment(const ProblemInstance& inst, const Assignment& x);

// Raw objective c(x): negated selected weight for MIS/MaxClique, selected
// weight for MinDominatingSet, cut weight for MinCut.
double objective(const ProblemInstance& inst, const Assignment& x);

// Penalized energy f(x) = c(x) + sum of penalty terms. The MinCut cut term
// counts each unordered edge once when the endpoints differ.
double energy(const ProblemInstance& inst, const Assignment& x);

bool is_feasible(const ProblemInstance& inst, const Assignment& x);

// Constructive repair: iterates the move that removes one constraint
// violation without raising the energy (valid whenever penalties are at or
// above the defaults) until the assignment is feasible.
//   MIS/MaxClique: zero the lighter endpoint of a violated pair.
//   MinDominatingSet: select the lightest node in an undominated closed
//     neighborhood.
//   MinCut: flip the node that moves the volume toward the violated bound
//     at the least energy.
// Ties break toward the lowest node index. Throws if the instance admits
// no feasible assignment (possible for MinCut volume windows).
Assignment repair(const ProblemInstance& inst, Assignment x);

// f(x with x_i = 1) - f(x with x_i = 0).
double discrete_gap(const ProblemInstance& inst, const Assignment& x, int i);

// Term-wise upper bound on max |discrete_gap|; used as the automatic
// initial temperature.
double lipschitz_bound(const ProblemInstance& inst);

// Local conductance cut(S) / vol(S) of the selected set (MinCut metric).
double local_conductance(const ProblemInstance& inst, const Assignment& x);

nlohmann::json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& j);

}  // namespace annealco
