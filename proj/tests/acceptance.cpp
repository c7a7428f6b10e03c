// Release gate: nine end-to-end checks, one PASS/FAIL line each. Exit code
// is the number of failed checks. argv[1] names the command-line binary,
// exercised by the determinism check; the rest run against the library.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "annealco/baselines.hpp"
#include "annealco/bench.hpp"
#include "annealco/exact.hpp"

using namespace annealco;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const ProblemKind kKinds[] = {ProblemKind::MIS, ProblemKind::MaxClique,
                              ProblemKind::MinDominatingSet,
                              ProblemKind::MinCut};

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << v;
  return os.str();
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// ---------------------------------------------------------------- check 1
// Sharp default penalties keep every exact minimum feasible; halving them
// must break at least one instance of every kind.
Outcome check_unbiasedness() {
  Outcome out;
  int exact_ok = 0;
  std::string halved;
  for (ProblemKind kind : kKinds) {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 200; ++i) {
      ProblemInstance inst = sample_oracle_instance(kind, 6, 14, rng);
      if (unbiasedness_check(inst)) ++exact_ok;
    }
  }
  bool halved_ok = true;
  for (ProblemKind kind : kKinds) {
    std::mt19937_64 rng(12345);
    int broken = 0;
    for (int i = 0; i < 200; ++i) {
      ProblemInstance inst = sample_oracle_instance(kind, 6, 14, rng, 0.5);
      if (!unbiasedness_check(inst)) ++broken;
    }
    halved_ok = halved_ok && broken >= 1;
    halved += (halved.empty() ? "" : "/") + std::to_string(broken);
  }
  out.pass = exact_ok == 800 && halved_ok;
  out.detail = "defaults exact on " + std::to_string(exact_ok) +
               "/800; halved penalties break " + halved +
               " of 200 per kind";
  return out;
}

// ---------------------------------------------------------------- check 2
// Tempered distribution limits: near-uniform at tau = 1e6, concentrated on
// the enumerated optima at tau = 1e-3, with penalties at 1.5x defaults.
Outcome check_limits() {
  Outcome out;
  std::mt19937_64 rng(777);
  double worst_tv = 0.0, worst_mass = 1.0;
  for (int i = 0; i < 20; ++i) {
    ProblemInstance inst =
        sample_oracle_instance(kKinds[i % 4], 4, 10, rng, 1.5);
    const double taus[] = {1e6, 1e-3};
    auto pts = limit_check(inst, taus);
    worst_tv = std::max(worst_tv, pts[0].tv_uniform);
    worst_mass = std::min(worst_mass, pts[1].mass_on_optima);
  }
  out.pass = worst_tv < 0.01 && worst_mass >= 0.99;
  out.detail = "20 instances at 1.5x penalties: max TV to uniform " +
               fmt(worst_tv, 6) + " (< 0.01), min mass on optima " +
               fmt(worst_mass, 6) + " (>= 0.99)";
  return out;
}

// ---------------------------------------------------------------- check 3
// Analytic gradients against central finite differences: the free-energy
// gradient on 100 random (kind, instance, marginals, tau) triples, and the
// network's full parameter gradient.
Outcome check_gradients() {
  Outcome out;
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> pd(0.05, 0.95), td(0.01, 5.0);
  const double h = 1e-6;

  double worst_var = 0.0;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ProblemInstance inst = sample_oracle_instance(kKinds[trial % 4], 4, 12, rng);
    const int n = inst.graph.num_nodes();
    Marginals phi(n);
    for (auto& p : phi) p = pd(rng);
    const double tau = td(rng);
    std::vector<double> grad;
    loss_grad(inst, phi, tau, grad);
    for (int i = 0; i < n; ++i) {
      Marginals up = phi, dn = phi;
      up[i] += h;
      dn[i] -= h;
      const double fd = (loss(inst, up, tau) - loss(inst, dn, tau)) / (2 * h);
      worst_var = std::max(
          worst_var, std::abs(grad[i] - fd) / std::max(1.0, std::abs(fd)));
      ++checked;
    }
  }

  ModelConfig mc{2, 6};
  ModelParams params = random_params(mc, 5);
  std::vector<ProblemInstance> batch;
  for (int i = 0; i < 4; ++i)
    batch.push_back(sample_oracle_instance(kKinds[i], 5, 9, rng));
  ModelParams grad = zero_params(mc), scratch = zero_params(mc);
  model_loss_and_grad(params, batch, 0.35, grad);
  const std::vector<double> g = flatten_params(grad);
  const std::vector<double> flat = flatten_params(params);
  double worst_net = 0.0;
  for (std::size_t k = 0; k < flat.size(); ++k) {
    std::vector<double> up = flat, dn = flat;
    up[k] += h;
    dn[k] -= h;
    const double lu =
        model_loss_and_grad(unflatten_params(mc, up), batch, 0.35, scratch);
    const double ld =
        model_loss_and_grad(unflatten_params(mc, dn), batch, 0.35, scratch);
    const double fd = (lu - ld) / (2 * h);
    worst_net = std::max(worst_net,
                         std::abs(g[k] - fd) / std::max(1.0, std::abs(fd)));
  }

  out.pass = worst_var <= 1e-6 && worst_net <= 1e-4;
  out.detail = std::to_string(checked) +
               " free-energy partials, worst rel err " + fmt(worst_var, 9) +
               " (<= 1e-6); " + std::to_string(flat.size()) +
               " network params, worst rel err " + fmt(worst_net, 7) +
               " (<= 1e-4)";
  return out;
}

// ---------------------------------------------------------------- check 4
// Rounding and repair: always feasible, and on the multilinear kinds the
// rounded point never beats its own expected energy bound.
Outcome check_decode_repair() {
  Outcome out;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pd(0.0, 1.0);
  int feasible = 0, bounded = 0, bound_cases = 0;
  const int total = 1000;
  for (int trial = 0; trial < total; ++trial) {
    ProblemKind kind = kKinds[trial % 4];
    ProblemInstance inst = sample_oracle_instance(kind, 6, 14, rng);
    Marginals phi(inst.graph.num_nodes());
    for (auto& p : phi) p = pd(rng);
    clamp_marginals(phi);
    Assignment dec = decode(inst, phi);
    if (kind != ProblemKind::MinCut) {
      ++bound_cases;
      if (energy(inst, dec) <= expected_energy(inst, phi) + 1e-9) ++bounded;
    }
    try {
      if (is_feasible(inst, repair(inst, dec))) ++feasible;
    } catch (const std::exception&) {
    }
  }
  out.pass = feasible == total &&
             bounded >= static_cast<int>(0.99 * bound_cases);
  out.detail = "feasible after repair " + std::to_string(feasible) + "/" +
               std::to_string(total) + "; rounded energy within its bound " +
               std::to_string(bounded) + "/" + std::to_string(bound_cases);
  return out;
}

// Dominating-set benchmark on preferential-attachment graphs small enough
// for exact references. Unit weights saturate every method at this size, so
// the quality comparisons run on the weighted variant; the sweep checks
// train on small instances and validate against sets built here.
BenchConfig desk_mds_config(int count, int n_min, int n_max,
                            const std::string& weights,
                            std::uint64_t dataset_seed) {
  BenchConfig cfg;
  cfg.kind = ProblemKind::MinDominatingSet;
  cfg.dataset.type = "ba";
  cfg.dataset.name = "ba-desk";
  cfg.dataset.count = count;
  cfg.dataset.n_min = n_min;
  cfg.dataset.n_max = n_max;
  cfg.dataset.m_attach = 4;
  cfg.dataset.node_weights = weights;
  cfg.dataset.seed = dataset_seed;
  cfg.solver.steps_per_temperature = 50;  // converged at this size
  cfg.timing = false;
  return cfg;
}

// ---------------------------------------------------------------- check 5
// Method ordering on weighted dominating sets with exact reference optima:
// annealed beats mean-field beats greedy, all under one solver budget.
Outcome check_method_ordering() {
  Outcome out;
  BenchConfig cfg = desk_mds_config(50, 20, 30, "uniform", 2024);
  cfg.seed_count = 5;
  BenchReport rep = run_benchmark(cfg, 1);
  std::map<std::string, double> ratio;
  for (const auto& row : rep.rows) ratio[row.method] = row.mean_ratio;
  const double a = ratio["annealed"], m = ratio["mfa"], g = ratio["greedy"];
  out.pass = a > m && m > g && a >= 0.95;
  out.detail = "mean ratios annealed " + fmt(a) + " | mfa " + fmt(m) +
               " | greedy " + fmt(g) +
               "; need annealed > mfa > greedy and annealed >= 0.95";
  return out;
}

// ---------------------------------------------------------------- check 6
// Penalty-strength sweep on the learned sampler: one network per scale,
// trained on small instances and scored on a held-out set. The unit scale
// must top the grid; dropping the penalty must collapse the score.
Outcome check_beta_ablation() {
  Outcome out;
  BenchConfig tr = desk_mds_config(24, 12, 16, "unit", 777);
  BenchInstances train = build_bench_instances(tr);
  BenchConfig va = desk_mds_config(50, 20, 30, "unit", 2024);
  BenchInstances val = build_bench_instances(va);

  const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0, 2.0, 3.0, 5.0};
  std::map<double, double> by_beta;
  for (double beta : grid) {
    std::vector<ProblemInstance> tset = train.instances;
    for (auto& inst : tset) scale_penalties(inst, beta);
    std::vector<ValExample> vex;
    for (std::size_t i = 0; i < val.instances.size(); ++i) {
      ProblemInstance inst = val.instances[i];
      scale_penalties(inst, beta);
      vex.push_back({std::move(inst), val.reference_objective[i]});
    }
    std::vector<double> finals;
    for (int s = 0; s < 5; ++s) {
      TrainConfig tc;
      tc.epochs = 40;
      tc.batch_size = 8;
      tc.seed = s;
      finals.push_back(
          train_model({2, 8}, tset, vex, tc).history.back().val_ratio);
    }
    by_beta[beta] = mean(finals);
  }

  bool unit_is_max = true;
  double best_other = 0.0;
  for (const auto& [beta, r] : by_beta) {
    if (beta == 0.0 || beta == 1.0) continue;
    best_other = std::max(best_other, r);
    if (r > by_beta[1.0]) unit_is_max = false;
  }
  out.pass = unit_is_max && by_beta[0.0] < 0.6;
  out.detail = "held-out ratio at penalty scale 1.0 = " + fmt(by_beta[1.0]) +
               " vs best other scale " + fmt(best_other) + "; scale 0.0 = " +
               fmt(by_beta[0.0]) + " (need < 0.6)";
  return out;
}

// ---------------------------------------------------------------- check 7
// Cooling-ramp shapes on the trained sampler: the three ramps started at
// the gradient bound land together; starting a hundred times colder costs
// measurable held-out ratio.
Outcome check_schedule_ablation() {
  Outcome out;
  BenchConfig tr = desk_mds_config(24, 12, 16, "uniform", 777);
  BenchInstances train = build_bench_instances(tr);
  BenchConfig va = desk_mds_config(12, 20, 30, "uniform", 888);
  BenchInstances val = build_bench_instances(va);
  std::vector<ValExample> vex;
  for (std::size_t i = 0; i < val.instances.size(); ++i)
    vex.push_back({val.instances[i], val.reference_objective[i]});
  double max_l = 0.0;
  for (const auto& inst : train.instances)
    max_l = std::max(max_l, lipschitz_bound(inst));

  auto arm = [&](ScheduleKind kind, double tau0) {
    std::vector<double> finals;
    for (int s = 0; s < 5; ++s) {
      TrainConfig tc;
      tc.epochs = 60;
      tc.batch_size = 8;
      tc.seed = s;
      tc.schedule.kind = kind;
      tc.schedule.tau0 = tau0;  // -1 = auto start at the gradient bound
      finals.push_back(
          train_model({2, 8}, train.instances, vex, tc).history.back().val_ratio);
    }
    return mean(finals);
  };

  const double lin = arm(ScheduleKind::Linear, -1.0);
  const double con = arm(ScheduleKind::Concave, -1.0);
  const double vex_r = arm(ScheduleKind::Convex, -1.0);
  const double cold = arm(ScheduleKind::Linear, 0.01 * max_l);
  const double band = std::max({lin, con, vex_r}) - std::min({lin, con, vex_r});

  out.pass = band <= 0.02 && lin - cold >= 0.02;
  out.detail = "ramps at the auto start: linear " + fmt(lin) + ", concave " +
               fmt(con) + ", convex " + fmt(vex_r) + " (band " + fmt(band) +
               " <= 0.02); 0.01x start drops to " + fmt(cold) + " (loss " +
               fmt(lin - cold) + " >= 0.02)";
  return out;
}

// ---------------------------------------------------------------- check 8
// Annealing against a constant floor temperature with an identical budget:
// the ramp wins most seeds, and it moves the network parameters more.
Outcome check_annealing_ab() {
  Outcome out;
  BenchConfig cfg = desk_mds_config(50, 20, 30, "uniform", 2024);
  BenchInstances data = build_bench_instances(cfg);

  auto seed_mean = [&](bool annealed, int s) {
    std::vector<double> ratios;
    for (std::size_t idx = 0; idx < data.instances.size(); ++idx) {
      SolverConfig sc = cfg.solver;
      if (!annealed) sc.schedule.tau0 = sc.schedule.tauK;  // constant floor
      sc.seed = derive_seed(cfg.base_seed, idx, s);
      Solution sol = solve(data.instances[idx], sc);
      ratios.push_back(solution_ratio(cfg.kind, sol.objective_value,
                                      data.reference_objective[idx]));
    }
    return mean(ratios);
  };

  int wins = 0;
  for (int s = 0; s < 10; ++s)
    if (seed_mean(true, s) > seed_mean(false, s)) ++wins;

  // training arm: same data, ramp against constant floor temperature
  std::mt19937_64 rng(31);
  std::vector<ProblemInstance> train_set;
  for (int i = 0; i < 24; ++i)
    train_set.push_back(sample_oracle_instance(ProblemKind::MinDominatingSet,
                                               10, 16, rng, 1.0, true));
  std::vector<double> ramp_changes, flat_changes;
  for (int s = 0; s < 10; ++s) {
    TrainConfig tc;
    tc.epochs = 20;
    tc.batch_size = 8;
    tc.seed = s;
    TrainResult ramp = train_model({2, 8}, train_set, {}, tc);
    tc.schedule.tau0 = tc.schedule.tauK;
    TrainResult flat = train_model({2, 8}, train_set, {}, tc);
    ramp_changes.push_back(mean(ramp.rel_changes));
    flat_changes.push_back(mean(flat.rel_changes));
  }
  const double ramp_mean = mean(ramp_changes);
  const double flat_mean = mean(flat_changes);

  out.pass = wins >= 8 && ramp_mean > flat_mean;
  out.detail = "ramp wins " + std::to_string(wins) +
               "/10 seeds (>= 8); mean parameter change " + fmt(ramp_mean, 5) +
               " vs " + fmt(flat_mean, 5) + " constant";
  return out;
}

// ---------------------------------------------------------------- check 9
// Byte-identical outputs: every subcommand re-run with the same config and
// seeds, including across different --threads values.
struct CliHarness {
  std::string cli;
  fs::path root;

  int run(const std::string& args, const fs::path& out_dir,
          const std::string& capture = "") const {
    fs::create_directories(out_dir);
    std::string cmd = "\"" + cli + "\" " + args + " --out-dir \"" +
                      out_dir.string() + "\"";
    cmd += " > \"" +
           (capture.empty() ? (out_dir / "_stdout.log").string()
                            : (out_dir / capture).string()) +
           "\" 2> \"" + (out_dir / "_stderr.log").string() + "\"";
    return std::system(cmd.c_str());
  }
};

std::map<std::string, std::string> dir_bytes(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name == "_stdout.log" || name == "_stderr.log") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[name] = ss.str();
  }
  return files;
}

Outcome check_cli_determinism(const std::string& cli) {
  Outcome out;
  CliHarness h{cli, fs::absolute("acceptance_scratch")};
  fs::remove_all(h.root);
  fs::create_directories(h.root);

  auto write_cfg = [&](const std::string& name, const nlohmann::json& j) {
    std::ofstream f(h.root / name);
    f << j.dump(2) << "\n";
    return (h.root / name).string();
  };

  const nlohmann::json tiny_ds = {{"type", "ba"},    {"count", 3},
                                  {"n_min", 8},      {"n_max", 10},
                                  {"m_attach", 2},   {"seed", 5}};
  const nlohmann::json solver = {
      {"steps_per_temperature", 2},
      {"schedule", {{"kind", "linear"}, {"steps", 40}}}};

  struct Step {
    std::string name;
    std::string args;
    std::string capture;  // compare captured stdout when set
  };
  std::vector<Step> steps;

  const std::string gen_cfg = write_cfg("gen.json", {{"dataset", tiny_ds}});
  steps.push_back({"generate", "generate --config \"" + gen_cfg + "\"", ""});

  const nlohmann::json graph = {
      {"n", 6},
      {"edges", {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}}}};
  const std::string solve_cfg = write_cfg(
      "solve.json",
      {{"problem", "mis"}, {"graph", graph}, {"solver", solver}});
  steps.push_back({"solve", "solve --config \"" + solve_cfg + "\"", ""});

  const std::string train_cfg = write_cfg(
      "train.json",
      {{"problem", "mds"},
       {"dataset",
        {{"type", "ba"}, {"count", 6}, {"n_min", 8}, {"n_max", 10},
         {"m_attach", 2}, {"seed", 3}}},
       {"model", {{"layers", 1}, {"hidden", 4}}},
       {"train", {{"epochs", 3}, {"batch_size", 3}}}});
  steps.push_back({"train", "train --config \"" + train_cfg + "\"", ""});

  const std::string bench_cfg = write_cfg(
      "bench.json", {{"problem", "mds"},
                     {"dataset", tiny_ds},
                     {"seed_count", 2},
                     {"timing", false},
                     {"solver", solver}});
  steps.push_back({"bench", "bench --config \"" + bench_cfg + "\"", ""});

  const std::string beta_cfg = write_cfg(
      "beta.json", {{"problem", "mds"},
                    {"dataset", tiny_ds},
                    {"seed_count", 2},
                    {"timing", false},
                    {"betas", {0.5, 1.0}},
                    {"solver", solver}});
  steps.push_back(
      {"ablate-beta", "ablate-beta --config \"" + beta_cfg + "\"", ""});

  const std::string sched_cfg = write_cfg(
      "sched.json", {{"problem", "mds"},
                     {"dataset", tiny_ds},
                     {"seed_count", 2},
                     {"timing", false},
                     {"schedules", {"linear"}},
                     {"tau0_grid", {0.0, "auto"}},
                     {"solver", solver}});
  steps.push_back({"ablate-schedule",
                   "ablate-schedule --config \"" + sched_cfg + "\"", ""});

  steps.push_back({"oracle-check",
                   "oracle-check --kind mds --n 8 --count 20 --seed 11",
                   "oracle.txt"});

  std::string failures;
  for (const auto& step : steps) {
    const fs::path base = h.root / (step.name + "_a");
    const fs::path rerun = h.root / (step.name + "_b");
    const fs::path threaded = h.root / (step.name + "_c");
    const int ra = h.run(step.args + " --threads 1", base, step.capture);
    const int rb = h.run(step.args + " --threads 1", rerun, step.capture);
    const int rc = h.run(step.args + " --threads 3", threaded, step.capture);
    if (ra != 0 || rb != 0 || rc != 0) {
      failures += " " + step.name + "(exit)";
      continue;
    }
    const auto a = dir_bytes(base);
    if (a.empty()) {
      failures += " " + step.name + "(no output)";
      continue;
    }
    if (a != dir_bytes(rerun)) failures += " " + step.name + "(rerun)";
    if (a != dir_bytes(threaded)) failures += " " + step.name + "(threads)";
  }

  out.pass = failures.empty();
  out.detail = out.pass ? std::to_string(steps.size()) +
                              " subcommands byte-identical across reruns "
                              "and --threads 1/3"
                        : "mismatches:" + failures;
  if (out.pass) fs::remove_all(h.root);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli-binary>\n";
    return 64;
  }
  const std::string cli = argv[1];

  struct Check {
    std::string title;
    double budget_s;  // 0 = unbounded
    std::function<Outcome()> fn;
  };
  const std::vector<Check> checks = {
      {"unbiased penalties, sharpness at one half", 300,
       check_unbiasedness},
      {"temperature limits of the tempered distribution", 60, check_limits},
      {"gradient fidelity against finite differences", 120, check_gradients},
      {"rounding and repair always land feasible", 0, check_decode_repair},
      {"method ordering: annealed > mean-field > greedy", 900,
       check_method_ordering},
      {"penalty sweep peaks at the sharp threshold", 1200,
       check_beta_ablation},
      {"ramp shapes agree; cold starts lose", 1200, check_schedule_ablation},
      {"annealing beats the constant floor", 0, check_annealing_ab},
      {"command-line outputs are byte-stable", 0,
       [&] { return check_cli_determinism(cli); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = checks[i].fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_budget = checks[i].budget_s <= 0 || secs <= checks[i].budget_s;
    const bool pass = o.pass && in_budget;
    if (!pass) ++failed;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << (i + 1) << ". "
              << checks[i].title << ": " << o.detail;
    if (!in_budget)
      std::cout << " [over budget: " << fmt(secs, 1) << "s > "
                << fmt(checks[i].budget_s, 0) << "s]";
    else
      std::cout << " [" << fmt(secs, 1) << "s]";
    std::cout << "\n" << std::flush;
  }
  if (failed == 0)
    std::cout << "all 9 checks passed\n";
  else
    std::cout << failed << " of 9 checks failed\n";
  return failed;
}
