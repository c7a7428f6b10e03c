#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "annealco/bench.hpp"
#include "annealco/exact.hpp"
#include "annealco/graph_io.hpp"

namespace {

using namespace annealco;

nlohmann::json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

std::filesystem::path out_path(const std::string& out_dir,
                               const std::string& name) {
  std::filesystem::create_directories(out_dir);
  return std::filesystem::path(out_dir) / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct GlobalArgs {
  std::string config;
  std::string out_dir = ".";
  int threads = 1;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int cmd_generate(const GlobalArgs& g) {
  auto j = read_config(g.config);
  DatasetSpec spec = dataset_spec_from_json(j.at("dataset"));
  if (g.seed_set) spec.seed = g.seed;
  const auto entries = build_dataset(spec);

  nlohmann::json manifest;
  manifest["dataset"] = dataset_spec_to_json(spec);
  auto& paths = manifest["paths"] = nlohmann::json::array();
  auto& optima = manifest["known_optima"] = nlohmann::json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "graph_%04zu.json", i);
    const auto path = out_path(g.out_dir, name);
    save_graph(entries[i].graph, path.string(), GraphFormat::Json);
    paths.push_back(name);
    if (std::isnan(entries[i].known_optimum))
      optima.push_back(nullptr);
    else
      optima.push_back(entries[i].known_optimum);
  }
  write_text(out_path(g.out_dir, "manifest.json"), manifest.dump(2) + "\n");
  std::cerr << "wrote " << entries.size() << " graphs to " << g.out_dir
            << "\n";
  return 0;
}

ProblemInstance instance_from_solve_config(const nlohmann::json& j) {
  const ProblemKind kind = kind_from_name(j.at("problem").get<std::string>());
  Graph graph;
  if (j.contains("graph_file")) {
    const std::string path = j.at("graph_file").get<std::string>();
    GraphFormat format = GraphFormat::Json;
    if (j.contains("graph_format"))
      format = graph_format_from_name(j.at("graph_format").get<std::string>());
    graph = load_graph(path, format);
  } else if (j.contains("graph")) {
    std::istringstream in(j.at("graph").dump());
    graph = parse_graph(in, GraphFormat::Json);
  } else {
    throw std::runtime_error("solve config needs graph_file or graph");
  }

  std::optional<VolumeBounds> bounds;
  if (kind == ProblemKind::MinCut) {
    const auto w = j.at("volume_window").get<std::vector<double>>();
    if (w.size() != 2)
      throw std::runtime_error("volume_window must be [lo_frac, hi_frac]");
    const double total = static_cast<double>(graph.total_degree());
    bounds = VolumeBounds{w[0] * total, w[1] * total};
  }
  PenaltyRule rule = PenaltyRule::SharpMin;
  if (j.contains("penalty_rule"))
    rule = penalty_rule_from_name(j.at("penalty_rule").get<std::string>());
  ProblemInstance inst = make_instance(kind, std::move(graph), bounds, rule);
  const double scale = j.value("penalty_scale", 1.0);
  if (scale != 1.0) scale_penalties(inst, scale);
  return inst;
}

int cmd_solve(const GlobalArgs& g) {
  const auto j = read_config(g.config);
  ProblemInstance inst = instance_from_solve_config(j);
  SolverConfig sc;
  if (j.contains("solver")) sc = solver_config_from_json(j.at("solver"));
  if (g.seed_set) sc.seed = g.seed;

  const Solution sol = solve(inst, sc);
  nlohmann::json out = solution_to_json(sol);
  out["problem"] = kind_name(inst.kind);
  if (inst.kind == ProblemKind::MinCut)
    out["conductance"] = local_conductance(inst, sol.assignment);

  const std::string name = j.value("output", std::string("solution.json"));
  write_text(out_path(g.out_dir, name), out.dump(2) + "\n");
  std::cerr << "objective " << sol.objective_value << ", solution written to "
            << (std::filesystem::path(g.out_dir) / name).string() << "\n";
  return 0;
}

int cmd_train(const GlobalArgs& g) {
  const auto j = read_config(g.config);
  const ProblemKind kind = kind_from_name(j.value("problem", std::string("mds")));

  BenchConfig train_src;
  train_src.kind = kind;
  train_src.dataset = dataset_spec_from_json(j.at("dataset"));
  train_src.reference = "none";
  if (j.contains("penalty_scale"))
    train_src.penalty_scale = j.at("penalty_scale").get<double>();
  if (j.contains("volume_window")) {
    const auto w = j.at("volume_window").get<std::vector<double>>();
    train_src.volume_lo_frac = w.at(0);
    train_src.volume_hi_frac = w.at(1);
  }
  const BenchInstances train_data = build_bench_instances(train_src);

  std::vector<ValExample> val;
  if (j.contains("validation")) {
    BenchConfig val_src = train_src;
    val_src.dataset = dataset_spec_from_json(j.at("validation"));
    val_src.reference = "auto";
    BenchInstances val_data = build_bench_instances(val_src);
    for (std::size_t i = 0; i < val_data.instances.size(); ++i)
      if (!std::isnan(val_data.reference_objective[i]))
        val.push_back({std::move(val_data.instances[i]),
                       val_data.reference_objective[i]});
  }

  ModelConfig mc;
  if (j.contains("model")) {
    mc.layers = j.at("model").value("layers", mc.layers);
    mc.hidden = j.at("model").value("hidden", mc.hidden);
  }
  TrainConfig tc;
  if (j.contains("train")) {
    const auto& t = j.at("train");
    tc.epochs = t.value("epochs", tc.epochs);
    tc.batch_size = t.value("batch_size", tc.batch_size);
    tc.learning_rate = t.value("learning_rate", tc.learning_rate);
    tc.per_batch_anneal = t.value("per_batch_anneal", tc.per_batch_anneal);
    tc.seed = t.value("seed", tc.seed);
    if (t.contains("schedule"))
      tc.schedule = schedule_spec_from_json(t.at("schedule"));
  }
  if (g.seed_set) tc.seed = g.seed;

  const TrainResult result = train_model(mc, train_data.instances, val, tc);

  std::ostringstream metrics;
  write_metrics_csv(result, metrics);
  write_text(out_path(g.out_dir, j.value("metrics_output",
                                         std::string("metrics.csv"))),
             metrics.str());
  write_text(out_path(g.out_dir,
                      j.value("params_output", std::string("model.json"))),
             params_to_json(result.params).dump(2) + "\n");
  if (!result.history.empty())
    std::cerr << "final loss " << result.history.back().loss << "\n";
  return 0;
}

int cmd_bench(const GlobalArgs& g) {
  const auto j = read_config(g.config);
  BenchConfig cfg = bench_config_from_json(j);
  if (g.seed_set) cfg.base_seed = g.seed;
  const BenchReport report = run_benchmark(cfg, g.threads);

  std::ostringstream csv;
  write_report_csv(report, csv);
  write_text(out_path(g.out_dir, j.value("output", std::string("bench.csv"))),
             csv.str());
  write_report_table(report, std::cout);
  return 0;
}

int cmd_ablate_beta(const GlobalArgs& g) {
  const auto j = read_config(g.config);
  BenchConfig cfg = bench_config_from_json(j);
  if (g.seed_set) cfg.base_seed = g.seed;
  std::vector<double> betas = {0.0, 0.25, 0.5, 0.75, 1.0, 2.0, 3.0, 5.0};
  if (j.contains("betas")) betas = j.at("betas").get<std::vector<double>>();

  const auto rows = ablate_beta(cfg, betas, g.threads);
  std::ostringstream csv;
  write_beta_csv(cfg.dataset.name, rows, csv);
  write_text(out_path(g.out_dir, j.value("output", std::string("beta.csv"))),
             csv.str());
  std::cout << csv.str();
  return 0;
}

int cmd_ablate_schedule(const GlobalArgs& g) {
  const auto j = read_config(g.config);
  BenchConfig cfg = bench_config_from_json(j);
  if (g.seed_set) cfg.base_seed = g.seed;

  std::vector<ScheduleKind> kinds = {ScheduleKind::Linear,
                                     ScheduleKind::Concave,
                                     ScheduleKind::Convex};
  if (j.contains("schedules")) {
    kinds.clear();
    for (const auto& name : j.at("schedules"))
      kinds.push_back(schedule_kind_from_name(name.get<std::string>()));
  }
  std::vector<double> tau0s = {0.0, 0.1, 0.5, 1.0, 2.0, 5.0};
  if (j.contains("tau0_grid")) {
    tau0s.clear();
    for (const auto& t : j.at("tau0_grid")) {
      if (t.is_string()) {
        if (t.get<std::string>() != "auto")
          throw std::runtime_error("tau0_grid entries: number or \"auto\"");
        tau0s.push_back(-1.0);
      } else {
        tau0s.push_back(t.get<double>());
      }
    }
  }

  const auto rows = ablate_schedule(cfg, kinds, tau0s, g.threads);
  std::ostringstream csv;
  write_schedule_csv(cfg.dataset.name, rows, csv);
  write_text(out_path(g.out_dir,
                      j.value("output", std::string("schedule.csv"))),
             csv.str());
  std::cout << csv.str();
  return 0;
}

struct OracleArgs {
  std::string kind = "mis";
  int n = 12;
  int count = 200;
  double penalty_scale = 1.0;
};

int cmd_oracle_check(const GlobalArgs& g, const OracleArgs& o) {
  const ProblemKind kind = kind_from_name(o.kind);
  std::mt19937_64 rng(g.seed);
  int violations = 0;
  for (int i = 0; i < o.count; ++i) {
    const ProblemInstance inst =
        sample_oracle_instance(kind, o.n, o.n, rng, o.penalty_scale);
    if (!unbiasedness_check(inst)) ++violations;
  }
  std::cout << "checked " << o.count << " " << o.kind
            << " instances (n=" << o.n << ", penalty_scale="
            << o.penalty_scale << "): " << violations << " violations\n";
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"annealed energy-based solver for graph combinatorial "
               "optimization"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config, "JSON config file");
  app.add_option("--out-dir", g.out_dir, "output directory")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for benchmarks")
      ->capture_default_str();
  auto* seed_opt =
      app.add_option("--seed", g.seed, "override the config seed");

  auto* generate = app.add_subcommand("generate", "write a graph dataset");
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance");
  auto* train = app.add_subcommand("train", "train the amortized model");
  auto* bench = app.add_subcommand("bench", "run a benchmark table");
  auto* abeta = app.add_subcommand("ablate-beta", "penalty-strength sweep");
  auto* asched = app.add_subcommand("ablate-schedule", "cooling-ramp sweep");
  auto* oracle =
      app.add_subcommand("oracle-check", "enumerate small instances and "
                                         "verify energy minima are feasible "
                                         "optima");
  OracleArgs o;
  oracle->add_option("--kind", o.kind, "mis | maxclique | mds | mincut")
      ->capture_default_str();
  oracle->add_option("--n", o.n, "nodes per instance")->capture_default_str();
  oracle->add_option("--count", o.count, "instances to check")
      ->capture_default_str();
  oracle->add_option("--penalty-scale", o.penalty_scale,
                     "scale on the default penalties")
      ->capture_default_str();

  // Let global options appear after the subcommand name as well.
  for (auto* sub : {generate, solve_cmd, train, bench, abeta, asched, oracle})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  g.seed_set = seed_opt->count() > 0;

  try {
    if (generate->parsed()) return cmd_generate(g);
    if (solve_cmd->parsed()) return cmd_solve(g);
    if (train->parsed()) return cmd_train(g);
    if (bench->parsed()) return cmd_bench(g);
    if (abeta->parsed()) return cmd_ablate_beta(g);
    if (asched->parsed()) return cmd_ablate_schedule(g);
    if (oracle->parsed()) return cmd_oracle_check(g, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
