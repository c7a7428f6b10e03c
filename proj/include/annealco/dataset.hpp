#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "annealco/energy.hpp"

namespace annealco {

// Stateless seed mixing for per-index randomness: the same (base, a, b)
// always yields the same stream seed, independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b);

// Declarative instance source shared by benchmarks, ablations and training.
struct DatasetSpec {
  std::string name = "dataset";
  std::string type = "ba";  // ba | rb | er | files
  int count = 0;

  int n_min = 0, n_max = 0;  // ba / er node-count range
  int m_attach = 4;          // ba attachment degree
  double edge_prob = 0.3;    // er

  int rb_groups = 0, rb_group_size = 0;
  double rb_p = 0.25, rb_r = 0.6;

  std::string node_weights = "unit";  // unit | uniform
  double weight_lo = 0.5, weight_hi = 2.0;

  std::vector<std::string> paths;  // files
  std::uint64_t seed = 0;
};

struct DatasetEntry {
  Graph graph;
  // Planted independent-set size for rb graphs; NaN when the generator does
  // not come with a certificate.
  double known_optimum = std::numeric_limits<double>::quiet_NaN();
};

DatasetSpec dataset_spec_from_json(const nlohmann::json& j);
nlohmann::json dataset_spec_to_json(const DatasetSpec& spec);
std::vector<DatasetEntry> build_dataset(const DatasetSpec& spec);

// Erdos-Renyi draw with optional uniform node/edge weights.
Graph sample_er_graph(int n, double p, std::mt19937_64& rng,
                      bool unit_weights = true, double wlo = 0.5,
                      double whi = 2.0);

// Random small instance for exactness sweeps: ER connectivity with edge
// probability drawn from [0.2, 0.6], sharp default penalties scaled by
// penalty_scale. Cut instances alternate between two shapes, both with a
// volume window at least one max-degree wide (which provably keeps the
// default penalty unbiased and constructive repair convergent):
//  - ER graph, window centered on a random subset's volume;
//  - two cliques joined by one light bridge edge, window displaced just past
//    the lighter-cut split so feasible cuts are forced through a clique.
// The second shape witnesses that halved penalties lose unbiasedness.
ProblemInstance sample_oracle_instance(ProblemKind kind, int n_min, int n_max,
                                       std::mt19937_64& rng,
                                       double penalty_scale = 1.0,
                                       bool unit_weights = false);

}  // namespace annealco
