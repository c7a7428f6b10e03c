#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <stdexcept>

#include "annealco/dataset.hpp"
#include "annealco/energy.hpp"
#include "doctest.h"

using namespace annealco;

namespace {

Assignment random_assignment(int n, std::mt19937_64& rng) {
  Assignment x(n);
  for (auto& b : x) b = static_cast<std::uint8_t>(rng() % 2);
  return x;
}

const ProblemKind kAllKinds[] = {ProblemKind::MIS, ProblemKind::MaxClique,
                                 ProblemKind::MinDominatingSet,
                                 ProblemKind::MinCut};

}  // namespace

TEST_CASE("kind names round-trip") {
  for (ProblemKind k : kAllKinds) CHECK(kind_from_name(kind_name(k)) == k);
  CHECK_THROWS_AS(kind_from_name("tsp"), std::invalid_argument);
}

TEST_CASE("default penalties take the smaller endpoint weight") {
  Graph edge(3, {{1, 2}}, {5.0, 1.0, 2.0});
  PenaltyVector p = default_penalties(ProblemKind::MIS, edge);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == 1.0);

  // strict variant takes the larger endpoint
  PenaltyVector q =
      default_penalties(ProblemKind::MIS, edge, PenaltyRule::StrictMax);
  CHECK(q[0] == 2.0);

  CHECK(penalty_rule_from_name("sharp-min") == PenaltyRule::SharpMin);
  CHECK(penalty_rule_from_name("strict-max") == PenaltyRule::StrictMax);
  CHECK(penalty_rule_name(PenaltyRule::StrictMax) ==
        std::string("strict-max"));
  CHECK_THROWS_AS(penalty_rule_from_name("huge"), std::invalid_argument);
}

TEST_CASE("default clique penalties key the complement edges") {
  // path 0-1-2: single complement pair (0,2)
  Graph path(3, {{0, 1}, {1, 2}}, {3.0, 1.0, 2.0});
  PenaltyVector p = default_penalties(ProblemKind::MaxClique, path);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == 2.0);  // min{w_0, w_2}
}

TEST_CASE("default dominating-set penalties: min weight in closed nbhd") {
  Graph path(3, {{0, 1}, {1, 2}}, {3.0, 2.0, 5.0});
  PenaltyVector p = default_penalties(ProblemKind::MinDominatingSet, path);
  CHECK(p == PenaltyVector{2.0, 2.0, 2.0});

  Graph uw(4, {{0, 1}, {2, 3}});
  for (double b : default_penalties(ProblemKind::MinDominatingSet, uw))
    CHECK(b == 1.0);
}

TEST_CASE("default cut penalty is the max weighted row sum") {
  Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  PenaltyVector p = default_penalties(ProblemKind::MinCut, star);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == 3.0);  // center row
}

TEST_CASE("independent-set energy on a triangle") {
  Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  ProblemInstance inst = make_instance(ProblemKind::MIS, k3);
  CHECK(energy(inst, {1, 1, 0}) == -1.0);  // -2 + one violated edge
  CHECK(energy(inst, {1, 0, 0}) == -1.0);
  CHECK(energy(inst, {1, 1, 1}) == 0.0);   // -3 + 3
  CHECK(objective(inst, {1, 1, 0}) == -2.0);
}

TEST_CASE("clique energy penalizes selected non-edges") {
  Graph path(3, {{0, 1}, {1, 2}});
  ProblemInstance inst = make_instance(ProblemKind::MaxClique, path);
  CHECK(energy(inst, {1, 0, 1}) == -1.0);  // -2 + beta_02
  CHECK(energy(inst, {1, 1, 0}) == -2.0);
  CHECK(is_feasible(inst, {1, 1, 0}));
  CHECK(!is_feasible(inst, {1, 0, 1}));
}

TEST_CASE("dominating-set energy on an isolated node") {
  Graph one(1, {});
  ProblemInstance inst = make_instance(ProblemKind::MinDominatingSet, one);
  CHECK(energy(inst, {0}) == 1.0);  // pure penalty
  CHECK(energy(inst, {1}) == 1.0);  // pure weight
  CHECK(!is_feasible(inst, {0}));
  CHECK(is_feasible(inst, {1}));
}

TEST_CASE("cut energy counts each crossing edge once") {
  Graph edge(2, {{0, 1}});
  ProblemInstance inst =
      make_instance(ProblemKind::MinCut, edge, VolumeBounds{1.0, 1.0});
  inst.penalties = {2.0};
  CHECK(energy(inst, {1, 0}) == 1.0);  // cut 1, volume 1 in window
  CHECK(energy(inst, {0, 1}) == 1.0);
  CHECK(energy(inst, {1, 1}) == 2.0);  // cut 0, volume 2 -> (2-1)*beta
  CHECK(energy(inst, {0, 0}) == 2.0);  // (1-0)*beta
  CHECK(is_feasible(inst, {1, 0}));
  CHECK(!is_feasible(inst, {0, 0}));
}

TEST_CASE("volume window uses unweighted degrees") {
  Graph edge(2, {{0, 1}}, {}, {7.5});
  ProblemInstance inst =
      make_instance(ProblemKind::MinCut, edge, VolumeBounds{1.0, 2.0});
  CHECK(is_feasible(inst, {1, 0}));  // degree volume 1, not 7.5
  CHECK(is_feasible(inst, {1, 1}));
  CHECK(objective(inst, {1, 0}) == 7.5);  // cut weight is weighted
}

TEST_CASE("feasibility checks per kind") {
  Graph edge(2, {{0, 1}});
  CHECK(!is_feasible(make_instance(ProblemKind::MIS, edge), {1, 1}));
  CHECK(is_feasible(make_instance(ProblemKind::MIS, edge), {1, 0}));

  Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  auto mds = make_instance(ProblemKind::MinDominatingSet, star);
  CHECK(is_feasible(mds, {1, 0, 0, 0}));  // center dominates everything
  CHECK(!is_feasible(mds, {0, 1, 0, 0}));
}

TEST_CASE("instance construction validates volume bounds") {
  Graph edge(2, {{0, 1}});
  CHECK_THROWS_AS(make_instance(ProblemKind::MinCut, edge),
                  std::invalid_argument);  // bounds required
  CHECK_THROWS_AS(
      make_instance(ProblemKind::MinCut, edge, VolumeBounds{2.0, 1.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      make_instance(ProblemKind::MinCut, edge, VolumeBounds{0.0, 5.0}),
      std::invalid_argument);  // hi > vol(V) = 2
  CHECK_THROWS_AS(
      make_instance(ProblemKind::MIS, edge, VolumeBounds{0.0, 1.0}),
      std::invalid_argument);  // bounds only for cuts
}

TEST_CASE("scale_penalties multiplies every entry") {
  Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  ProblemInstance inst = make_instance(ProblemKind::MIS, k3);
  scale_penalties(inst, 0.5);
  for (double b : inst.penalties) CHECK(b == 0.5);
  CHECK_THROWS_AS(scale_penalties(inst, -1.0), std::invalid_argument);
}

TEST_CASE("repair zeroes the lighter endpoint of a violated pair") {
  Graph edge(2, {{0, 1}}, {1.0, 2.0});
  ProblemInstance inst = make_instance(ProblemKind::MIS, edge);
  Assignment fixed = repair(inst, {1, 1});
  CHECK(fixed == Assignment{0, 1});
  CHECK(energy(inst, {1, 1}) == -2.0);  // tie at the sharp threshold
  CHECK(energy(inst, fixed) == -2.0);
}

TEST_CASE("repair selects into an undominated closed neighborhood") {
  Graph one(1, {});
  auto inst = make_instance(ProblemKind::MinDominatingSet, one);
  CHECK(repair(inst, {0}) == Assignment{1});

  Graph path(3, {{0, 1}, {1, 2}});
  auto p = make_instance(ProblemKind::MinDominatingSet, path);
  // node 0 first (tie in N[0] kept at 0), then node 2 resolved via node 1
  CHECK(repair(p, {0, 0, 0}) == Assignment{1, 1, 0});
}

TEST_CASE("repair leaves feasible assignments alone") {
  Graph path(3, {{0, 1}, {1, 2}});
  auto inst = make_instance(ProblemKind::MIS, path);
  CHECK(repair(inst, {1, 0, 1}) == Assignment{1, 0, 1});
}

TEST_CASE("repair throws when no volume satisfies the window") {
  Graph edge(2, {{0, 1}});
  auto inst = make_instance(ProblemKind::MinCut, edge, VolumeBounds{1.0, 1.0});
  // volumes are 0, 1, 1, 2; shrink the window to the unreachable 1.5
  inst.volume_bounds = VolumeBounds{1.5, 1.5};
  CHECK_THROWS_AS(repair(inst, {0, 0}), std::runtime_error);
}

TEST_CASE("repair: feasible output, no energy increase, random sweep") {
  std::mt19937_64 rng(2024);
  for (ProblemKind kind : kAllKinds) {
    for (int trial = 0; trial < 120; ++trial) {
      ProblemInstance inst = sample_oracle_instance(kind, 4, 12, rng);
      Assignment x = random_assignment(inst.graph.num_nodes(), rng);
      Assignment y;
      try {
        y = repair(inst, x);
      } catch (const std::runtime_error&) {
        continue;  // cut window unreachable from this start is acceptable
      }
      CHECK(is_feasible(inst, y));
      CHECK(energy(inst, y) <= energy(inst, x) + 1e-9);
    }
  }
}

TEST_CASE("discrete gap frozen cases") {
  Graph one(1, {});
  auto single = make_instance(ProblemKind::MIS, one);
  CHECK(discrete_gap(single, {0}, 0) == -1.0);
  CHECK(discrete_gap(single, {1}, 0) == -1.0);

  Graph edge(2, {{0, 1}});
  auto inst = make_instance(ProblemKind::MIS, edge);
  CHECK(discrete_gap(inst, {0, 1}, 0) == 0.0);  // -1 + beta
  CHECK(discrete_gap(inst, {0, 0}, 0) == -1.0);
}

TEST_CASE("discrete gap equals the energy difference everywhere") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 250; ++trial) {
    ProblemKind kind = kAllKinds[trial % 4];
    ProblemInstance inst = sample_oracle_instance(kind, 3, 10, rng);
    const int n = inst.graph.num_nodes();
    Assignment x = random_assignment(n, rng);
    const int i = static_cast<int>(rng() % n);
    Assignment x1 = x, x0 = x;
    x1[i] = 1;
    x0[i] = 0;
    CHECK(discrete_gap(inst, x, i) ==
          doctest::Approx(energy(inst, x1) - energy(inst, x0))
              .epsilon(1e-12));
  }
}

TEST_CASE("energy is multilinear outside the cut kind") {
  // flipping a bit changes f by an amount independent of that bit
  std::mt19937_64 rng(6);
  const ProblemKind kinds[] = {ProblemKind::MIS, ProblemKind::MaxClique,
                               ProblemKind::MinDominatingSet};
  for (int trial = 0; trial < 150; ++trial) {
    ProblemInstance inst = sample_oracle_instance(kinds[trial % 3], 3, 10, rng);
    const int n = inst.graph.num_nodes();
    Assignment x = random_assignment(n, rng);
    const int i = static_cast<int>(rng() % n);
    Assignment flipped = x;
    flipped[i] = !flipped[i];
    CHECK(discrete_gap(inst, x, i) ==
          doctest::Approx(discrete_gap(inst, flipped, i)).epsilon(1e-12));
  }
}

TEST_CASE("lipschitz bound frozen cases") {
  Graph edge(2, {{0, 1}});
  CHECK(lipschitz_bound(make_instance(ProblemKind::MIS, edge)) == 2.0);

  Graph one(1, {}, {3.0});
  CHECK(lipschitz_bound(make_instance(ProblemKind::MIS, one)) == 3.0);
}

TEST_CASE("lipschitz bound dominates sampled discrete gaps") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 250; ++trial) {
    ProblemKind kind = kAllKinds[trial % 4];
    ProblemInstance inst = sample_oracle_instance(kind, 3, 10, rng);
    const double bound = lipschitz_bound(inst);
    const int n = inst.graph.num_nodes();
    for (int s = 0; s < 4; ++s) {
      Assignment x = random_assignment(n, rng);
      const int i = static_cast<int>(rng() % n);
      CHECK(std::abs(discrete_gap(inst, x, i)) <= bound + 1e-9);
    }
  }
}

TEST_CASE("local conductance of a selected set") {
  Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  auto inst = make_instance(ProblemKind::MinCut, star, VolumeBounds{1.0, 3.0});
  CHECK(local_conductance(inst, {0, 1, 0, 0}) == 1.0);  // cut 1 / vol 1
  CHECK(local_conductance(inst, {1, 0, 0, 0}) == 1.0);  // cut 3 / vol 3
  CHECK(local_conductance(inst, {0, 1, 1, 0}) == 1.0);
}

TEST_CASE("instances survive a json round trip") {
  std::mt19937_64 rng(8);
  for (ProblemKind kind : kAllKinds) {
    ProblemInstance inst = sample_oracle_instance(kind, 4, 9, rng);
    ProblemInstance back = instance_from_json(instance_to_json(inst));
    CHECK(back.kind == inst.kind);
    CHECK(back.graph.edges() == inst.graph.edges());
    CHECK(back.penalties == inst.penalties);
    Assignment x = random_assignment(inst.graph.num_nodes(), rng);
    CHECK(energy(back, x) == doctest::Approx(energy(inst, x)).epsilon(1e-12));
  }
}

TEST_CASE("assignment validation") {
  Graph edge(2, {{0, 1}});
  auto inst = make_instance(ProblemKind::MIS, edge);
  CHECK_THROWS_AS(energy(inst, {1}), std::invalid_argument);
  CHECK_THROWS_AS(energy(inst, {1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(energy(inst, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(discrete_gap(inst, {0, 0}, 2), std::out_of_range);
}
