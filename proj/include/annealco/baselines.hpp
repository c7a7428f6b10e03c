#pragma once

#include "annealco/solver.hpp"

namespace annealco {

// Deterministic constructive baseline, one classical greedy rule per kind:
//  - independent set: select the max of weight / (residual degree + 1),
//    delete the closed neighborhood, repeat;
//  - clique: grow greedily from every seed node in descending-weight order,
//    keep the heaviest clique found;
//  - dominating set: select the node covering the most undominated nodes
//    per unit weight until everything is dominated;
//  - cut: take nodes in descending-degree order until the selected volume
//    enters the window, then run the standard repair.
// Ties always break toward the lower node index.
Solution greedy_solve(const ProblemInstance& inst);

}  // namespace annealco
