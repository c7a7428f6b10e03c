#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <stdexcept>

#include "annealco/dataset.hpp"
#include "annealco/exact.hpp"
#include "annealco/graph_io.hpp"
#include "doctest.h"

using namespace annealco;

TEST_CASE("seed derivation is stable and collision-averse") {
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 40; ++a)
    for (std::uint64_t b = 0; b < 40; ++b) seen.insert(derive_seed(9, a, b));
  CHECK(seen.size() == 1600);
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
}

TEST_CASE("attachment datasets: count, size range, determinism") {
  DatasetSpec spec;
  spec.type = "ba";
  spec.count = 6;
  spec.n_min = 12;
  spec.n_max = 20;
  spec.m_attach = 3;
  spec.seed = 5;
  auto ds = build_dataset(spec);
  REQUIRE(ds.size() == 6);
  for (const auto& e : ds) {
    CHECK(e.graph.num_nodes() >= 12);
    CHECK(e.graph.num_nodes() <= 20);
    CHECK(std::isnan(e.known_optimum));
  }
  auto again = build_dataset(spec);
  for (std::size_t i = 0; i < ds.size(); ++i)
    CHECK(ds[i].graph.edges() == again[i].graph.edges());

  spec.seed = 6;
  auto other = build_dataset(spec);
  bool any_diff = false;
  for (std::size_t i = 0; i < ds.size(); ++i)
    any_diff = any_diff || ds[i].graph.edges() != other[i].graph.edges();
  CHECK(any_diff);
}

TEST_CASE("uniform node weights are drawn inside the configured band") {
  DatasetSpec spec;
  spec.type = "ba";
  spec.count = 3;
  spec.n_min = 10;
  spec.n_max = 10;
  spec.m_attach = 2;
  spec.node_weights = "uniform";
  spec.weight_lo = 0.5;
  spec.weight_hi = 2.0;
  bool non_unit = false;
  for (const auto& e : build_dataset(spec))
    for (double w : e.graph.node_weights()) {
      CHECK(w >= 0.5);
      CHECK(w <= 2.0);
      non_unit = non_unit || w != 1.0;
    }
  CHECK(non_unit);
}

TEST_CASE("planted datasets carry their certificate only when unweighted") {
  DatasetSpec spec;
  spec.type = "rb";
  spec.count = 2;
  spec.rb_groups = 4;
  spec.rb_group_size = 3;
  spec.seed = 8;
  for (const auto& e : build_dataset(spec)) {
    CHECK(e.graph.num_nodes() == 12);
    CHECK(e.known_optimum == 4.0);
  }
  spec.node_weights = "uniform";
  for (const auto& e : build_dataset(spec)) CHECK(std::isnan(e.known_optimum));
}

TEST_CASE("planted certificate matches exhaustive search") {
  DatasetSpec spec;
  spec.type = "rb";
  spec.count = 3;
  spec.rb_groups = 4;
  spec.rb_group_size = 3;
  spec.seed = 17;
  for (const auto& e : build_dataset(spec)) {
    auto res = brute_force_optimum(make_instance(ProblemKind::MIS, e.graph));
    CHECK(res.opt_value == -e.known_optimum);
  }
}

TEST_CASE("file datasets load the listed graphs in order") {
  Graph g1(3, {{0, 1}, {1, 2}});
  Graph g2(2, {{0, 1}});
  const std::string p1 = "test_dataset_a.json", p2 = "test_dataset_b.json";
  save_graph(g1, p1, GraphFormat::Json);
  save_graph(g2, p2, GraphFormat::Json);
  DatasetSpec spec;
  spec.type = "files";
  spec.paths = {p1, p2};
  auto ds = build_dataset(spec);
  REQUIRE(ds.size() == 2);
  CHECK(ds[0].graph.edges() == g1.edges());
  CHECK(ds[1].graph.edges() == g2.edges());
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("dataset spec json round trip") {
  DatasetSpec spec;
  spec.name = "toy";
  spec.type = "er";
  spec.count = 4;
  spec.n_min = 5;
  spec.n_max = 9;
  spec.edge_prob = 0.42;
  spec.node_weights = "uniform";
  spec.seed = 99;
  DatasetSpec back = dataset_spec_from_json(dataset_spec_to_json(spec));
  CHECK(back.name == spec.name);
  CHECK(back.type == spec.type);
  CHECK(back.count == spec.count);
  CHECK(back.n_min == spec.n_min);
  CHECK(back.n_max == spec.n_max);
  CHECK(back.edge_prob == spec.edge_prob);
  CHECK(back.node_weights == spec.node_weights);
  CHECK(back.seed == spec.seed);
}

TEST_CASE("dataset spec validation") {
  DatasetSpec spec;
  spec.type = "warp";
  CHECK_THROWS_AS(build_dataset(spec), std::invalid_argument);
  spec.type = "ba";
  spec.count = -1;
  CHECK_THROWS_AS(build_dataset(spec), std::invalid_argument);
}

TEST_CASE("random graph sampler hits roughly the requested density") {
  std::mt19937_64 rng(4);
  int edges = 0, pairs = 0;
  for (int t = 0; t < 30; ++t) {
    Graph g = sample_er_graph(12, 0.3, rng);
    edges += g.num_edges();
    pairs += 66;
  }
  const double density = static_cast<double>(edges) / pairs;
  CHECK(density > 0.2);
  CHECK(density < 0.4);
}

TEST_CASE("oracle sampler: shapes and penalty dimensions per kind") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 80; ++trial) {
    ProblemKind kind = static_cast<ProblemKind>(trial % 4);
    ProblemInstance inst = sample_oracle_instance(kind, 6, 14, rng);
    const int n = inst.graph.num_nodes();
    CHECK(n >= 6);
    CHECK(n <= 14);
    validate_instance(inst);
    if (kind == ProblemKind::MinCut) {
      REQUIRE(inst.volume_bounds.has_value());
      // window wide enough that any assignment can be walked inside it
      CHECK(inst.volume_bounds->hi - inst.volume_bounds->lo >=
            inst.graph.max_degree() - 1e-9);
    } else {
      CHECK(!inst.volume_bounds.has_value());
    }
  }
}

TEST_CASE("oracle sampler: scaled penalties shrink proportionally") {
  std::mt19937_64 rng(13);
  ProblemInstance full = sample_oracle_instance(ProblemKind::MIS, 8, 8, rng);
  std::mt19937_64 rng2(13);
  ProblemInstance half =
      sample_oracle_instance(ProblemKind::MIS, 8, 8, rng2, 0.5);
  REQUIRE(full.penalties.size() == half.penalties.size());
  for (std::size_t i = 0; i < full.penalties.size(); ++i)
    CHECK(half.penalties[i] == doctest::Approx(0.5 * full.penalties[i]));
}
