#include "annealco/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "annealco/exact.hpp"

namespace annealco {

namespace {

void csv_number(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "na";
    return;
  }
  if (std::isinf(v)) {
    out << (v > 0 ? "inf" : "-inf");
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  out << buf;
}

struct RunOutcome {
  double ratio = std::numeric_limits<double>::quiet_NaN();
  double time_s = 0.0;
  bool feasible = false;
};

RunOutcome execute_run(const BenchConfig& cfg, const ProblemInstance& inst,
                       double ref_objective, const std::string& method,
                       std::uint64_t run_seed) {
  SolverConfig sc = cfg.solver;
  sc.seed = run_seed;

  RunOutcome out;
  const auto start = std::chrono::steady_clock::now();
  Solution sol;
  if (method == "greedy") {
    sol = greedy_solve(inst);
  } else if (method == "mfa") {
    sc.optimizer = OptimizerKind::Mfa;
    sol = solve(inst, sc);
  } else if (method == "annealed") {
    sc.optimizer = OptimizerKind::Langevin;
    sol = solve(inst, sc);
  } else {
    throw std::invalid_argument("unknown method: " + method);
  }
  const auto stop = std::chrono::steady_clock::now();
  if (cfg.timing)
    out.time_s = std::chrono::duration<double>(stop - start).count();

  out.feasible = is_feasible(inst, sol.assignment);
  if (inst.kind == ProblemKind::MinCut)
    out.ratio = local_conductance(inst, sol.assignment);
  else if (!std::isnan(ref_objective))
    out.ratio = solution_ratio(inst.kind, sol.objective_value, ref_objective);
  return out;
}

struct Aggregate {
  double mean_ratio, std_ratio, mean_time, feasibility;
  bool available;
};

Aggregate aggregate_outcomes(const RunOutcome* begin, int count) {
  Aggregate agg{0.0, 0.0, 0.0, 0.0, true};
  double sum = 0.0;
  for (int k = 0; k < count; ++k) {
    const auto& o = begin[k];
    if (std::isnan(o.ratio)) agg.available = false;
    sum += o.ratio;
    agg.mean_time += o.time_s;
    agg.feasibility += o.feasible ? 1.0 : 0.0;
  }
  agg.mean_time /= count;
  agg.feasibility /= count;
  if (!agg.available) {
    agg.mean_ratio = agg.std_ratio =
        std::numeric_limits<double>::quiet_NaN();
    return agg;
  }
  agg.mean_ratio = sum / count;
  double sq = 0.0;
  for (int k = 0; k < count; ++k) {
    const double d = begin[k].ratio - agg.mean_ratio;
    sq += d * d;
  }
  agg.std_ratio = count > 1 ? std::sqrt(sq / (count - 1)) : 0.0;
  return agg;
}

}  // namespace

ScheduleSpec schedule_spec_from_json(const nlohmann::json& j) {
  ScheduleSpec spec;
  if (j.contains("kind"))
    spec.kind = schedule_kind_from_name(j.at("kind").get<std::string>());
  if (j.contains("tau0")) {
    const auto& t = j.at("tau0");
    if (t.is_string()) {
      if (t.get<std::string>() != "auto")
        throw std::invalid_argument(
            "schedule: tau0 must be a number or \"auto\"");
      spec.tau0 = -1.0;
    } else {
      spec.tau0 = t.get<double>();
    }
  }
  spec.tauK = j.value("tauK", spec.tauK);
  spec.steps = j.value("steps", spec.steps);
  return spec;
}

SolverConfig solver_config_from_json(const nlohmann::json& j) {
  SolverConfig cfg;
  if (j.contains("schedule"))
    cfg.schedule = schedule_spec_from_json(j.at("schedule"));
  if (j.contains("optimizer"))
    cfg.optimizer =
        optimizer_kind_from_name(j.at("optimizer").get<std::string>());
  cfg.steps_per_temperature =
      j.value("steps_per_temperature", cfg.steps_per_temperature);
  if (j.contains("learning_rate")) {
    const auto& lr = j.at("learning_rate");
    if (lr.is_string()) {
      if (lr.get<std::string>() != "auto")
        throw std::invalid_argument(
            "solver: learning_rate must be a number or \"auto\"");
      cfg.learning_rate = -1.0;
    } else {
      cfg.learning_rate = lr.get<double>();
    }
  }
  cfg.noise_sigma = j.value("noise_sigma", cfg.noise_sigma);
  cfg.seed = j.value("seed", cfg.seed);
  return cfg;
}

BenchConfig bench_config_from_json(const nlohmann::json& j) {
  BenchConfig cfg;
  if (j.contains("problem"))
    cfg.kind = kind_from_name(j.at("problem").get<std::string>());
  if (j.contains("dataset"))
    cfg.dataset = dataset_spec_from_json(j.at("dataset"));
  if (j.contains("methods"))
    cfg.methods = j.at("methods").get<std::vector<std::string>>();
  cfg.seed_count = j.value("seed_count", cfg.seed_count);
  cfg.base_seed = j.value("base_seed", cfg.base_seed);
  if (j.contains("solver")) cfg.solver = solver_config_from_json(j.at("solver"));
  if (j.contains("penalty_rule"))
    cfg.penalty_rule =
        penalty_rule_from_name(j.at("penalty_rule").get<std::string>());
  cfg.penalty_scale = j.value("penalty_scale", cfg.penalty_scale);
  if (j.contains("volume_window")) {
    const auto w = j.at("volume_window").get<std::vector<double>>();
    if (w.size() != 2)
      throw std::invalid_argument("volume_window must be [lo_frac, hi_frac]");
    cfg.volume_lo_frac = w[0];
    cfg.volume_hi_frac = w[1];
  }
  cfg.timing = j.value("timing", cfg.timing);
  cfg.reference = j.value("reference", cfg.reference);
  return cfg;
}

BenchInstances build_bench_instances(const BenchConfig& cfg) {
  auto entries = build_dataset(cfg.dataset);
  BenchInstances out;
  out.instances.reserve(entries.size());
  out.reference_objective.reserve(entries.size());
  for (auto& entry : entries) {
    const double known = entry.known_optimum;
    std::optional<VolumeBounds> bounds;
    if (cfg.kind == ProblemKind::MinCut) {
      const double total = static_cast<double>(entry.graph.total_degree());
      bounds =
          VolumeBounds{cfg.volume_lo_frac * total, cfg.volume_hi_frac * total};
    }
    ProblemInstance inst =
        make_instance(cfg.kind, std::move(entry.graph), bounds, cfg.penalty_rule);
    if (cfg.penalty_scale != 1.0) scale_penalties(inst, cfg.penalty_scale);

    double ref = std::numeric_limits<double>::quiet_NaN();
    if (cfg.reference != "none" && cfg.kind != ProblemKind::MinCut) {
      const int n = inst.graph.num_nodes();
      if (cfg.kind == ProblemKind::MIS && !std::isnan(known))
        ref = -known;  // planted independent-set size, objective convention
      else if (cfg.kind == ProblemKind::MinDominatingSet && n <= 64)
        ref = exact_min_dominating_set(inst.graph).weight;
      else if (n <= 20)
        ref = brute_force_optimum(inst).opt_value;
    }
    out.instances.push_back(std::move(inst));
    out.reference_objective.push_back(ref);
  }
  return out;
}

BenchReport run_benchmark(const BenchConfig& cfg, int threads) {
  if (cfg.seed_count < 1)
    throw std::invalid_argument("bench: seed_count must be >= 1");
  if (cfg.methods.empty())
    throw std::invalid_argument("bench: no methods requested");
  const BenchInstances data = build_bench_instances(cfg);
  const int I = static_cast<int>(data.instances.size());
  const int S = cfg.seed_count;
  const int M = static_cast<int>(cfg.methods.size());

  std::vector<RunOutcome> outcomes(static_cast<std::size_t>(M) * I * S);
  parallel_for(M * I * S, threads, [&](int idx) {
    const int m = idx / (I * S);
    const int rem = idx % (I * S);
    const int i = rem / S;
    const int s = rem % S;
    outcomes[idx] =
        execute_run(cfg, data.instances[i], data.reference_objective[i],
                    cfg.methods[m], derive_seed(cfg.base_seed, i, s));
  });

  BenchReport report;
  for (int m = 0; m < M; ++m) {
    const Aggregate agg =
        aggregate_outcomes(outcomes.data() + static_cast<std::size_t>(m) * I * S,
                           I * S);
    BenchRow row;
    row.dataset = cfg.dataset.name;
    row.method = cfg.methods[m];
    row.seed_count = S;
    row.mean_ratio = agg.mean_ratio;
    row.std_ratio = agg.std_ratio;
    row.mean_time_s = agg.mean_time;
    row.feasibility_rate = agg.feasibility;
    row.ratio_available = agg.available;
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_report_csv(const BenchReport& report, std::ostream& out) {
  out << "dataset,method,seed_count,mean_ratio,std_ratio,mean_time_s,"
         "feasibility_rate\n";
  for (const auto& row : report.rows) {
    out << row.dataset << "," << row.method << "," << row.seed_count << ",";
    csv_number(out, row.ratio_available
                        ? row.mean_ratio
                        : std::numeric_limits<double>::quiet_NaN());
    out << ",";
    csv_number(out, row.ratio_available
                        ? row.std_ratio
                        : std::numeric_limits<double>::quiet_NaN());
    out << ",";
    csv_number(out, row.mean_time_s);
    out << ",";
    csv_number(out, row.feasibility_rate);
    out << "\n";
  }
}

void write_report_table(const BenchReport& report, std::ostream& out) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-20s %-10s %6s %12s %10s %12s %6s\n",
                "dataset", "method", "seeds", "ratio", "std", "time_s",
                "feas");
  out << buf;
  for (const auto& row : report.rows) {
    char ratio[32] = "na", stdv[32] = "na";
    if (row.ratio_available) {
      std::snprintf(ratio, sizeof(ratio), "%.4f", row.mean_ratio);
      std::snprintf(stdv, sizeof(stdv), "%.4f", row.std_ratio);
    }
    std::snprintf(buf, sizeof(buf), "%-20s %-10s %6d %12s %10s %12.3f %6.2f\n",
                  row.dataset.c_str(), row.method.c_str(), row.seed_count,
                  ratio, stdv, row.mean_time_s, row.feasibility_rate);
    out << buf;
  }
}

std::vector<BetaRow> ablate_beta(const BenchConfig& cfg,
                                 const std::vector<double>& betas,
                                 int threads) {
  if (betas.empty()) throw std::invalid_argument("beta grid is empty");
  if (cfg.seed_count < 1)
    throw std::invalid_argument("bench: seed_count must be >= 1");
  const BenchInstances data = build_bench_instances(cfg);
  const int I = static_cast<int>(data.instances.size());
  const int S = cfg.seed_count;
  const int B = static_cast<int>(betas.size());

  // One scaled copy of the instance list per grid point.
  std::vector<std::vector<ProblemInstance>> scaled(B);
  for (int b = 0; b < B; ++b) {
    scaled[b] = data.instances;
    for (auto& inst : scaled[b]) scale_penalties(inst, betas[b]);
  }

  std::vector<RunOutcome> outcomes(static_cast<std::size_t>(B) * I * S);
  parallel_for(B * I * S, threads, [&](int idx) {
    const int b = idx / (I * S);
    const int rem = idx % (I * S);
    const int i = rem / S;
    const int s = rem % S;
    outcomes[idx] =
        execute_run(cfg, scaled[b][i], data.reference_objective[i], "annealed",
                    derive_seed(cfg.base_seed, i, s));
  });

  std::vector<BetaRow> rows;
  for (int b = 0; b < B; ++b) {
    const Aggregate agg = aggregate_outcomes(
        outcomes.data() + static_cast<std::size_t>(b) * I * S, I * S);
    rows.push_back({betas[b], S, agg.mean_ratio, agg.std_ratio});
  }
  return rows;
}

void write_beta_csv(const std::string& dataset,
                    const std::vector<BetaRow>& rows, std::ostream& out) {
  out << "dataset,beta,seed_count,mean_ratio,std_ratio\n";
  for (const auto& row : rows) {
    out << dataset << ",";
    csv_number(out, row.beta);
    out << "," << row.seed_count << ",";
    csv_number(out, row.mean_ratio);
    out << ",";
    csv_number(out, row.std_ratio);
    out << "\n";
  }
}

std::vector<ScheduleRow> ablate_schedule(const BenchConfig& cfg,
                                         const std::vector<ScheduleKind>& kinds,
                                         const std::vector<double>& tau0s,
                                         int threads) {
  if (kinds.empty() || tau0s.empty())
    throw std::invalid_argument("schedule grid is empty");
  if (cfg.seed_count < 1)
    throw std::invalid_argument("bench: seed_count must be >= 1");
  const BenchInstances data = build_bench_instances(cfg);
  const int I = static_cast<int>(data.instances.size());
  const int S = cfg.seed_count;
  const int C = static_cast<int>(kinds.size() * tau0s.size());

  std::vector<ScheduleRow> rows(C);
  std::vector<SolverConfig> cell_cfg(C);
  for (std::size_t ki = 0; ki < kinds.size(); ++ki)
    for (std::size_t ti = 0; ti < tau0s.size(); ++ti) {
      const int c = static_cast<int>(ki * tau0s.size() + ti);
      rows[c].kind = kinds[ki];
      rows[c].tau0 = tau0s[ti];
      rows[c].seed_count = S;
      SolverConfig sc = cfg.solver;
      sc.schedule.kind = kinds[ki];
      if (tau0s[ti] == 0.0) {
        // Degenerate: no ramp, the run sits at the floor temperature.
        sc.schedule.tau0 = sc.schedule.tauK;
        rows[c].degenerate = true;
      } else {
        sc.schedule.tau0 = tau0s[ti];  // negative requests auto
      }
      cell_cfg[c] = sc;
    }

  std::vector<RunOutcome> outcomes(static_cast<std::size_t>(C) * I * S);
  parallel_for(C * I * S, threads, [&](int idx) {
    const int c = idx / (I * S);
    const int rem = idx % (I * S);
    const int i = rem / S;
    const int s = rem % S;
    BenchConfig run_cfg = cfg;
    run_cfg.solver = cell_cfg[c];
    outcomes[idx] =
        execute_run(run_cfg, data.instances[i], data.reference_objective[i],
                    "annealed", derive_seed(cfg.base_seed, i, s));
  });

  for (int c = 0; c < C; ++c) {
    const Aggregate agg = aggregate_outcomes(
        outcomes.data() + static_cast<std::size_t>(c) * I * S, I * S);
    rows[c].mean_ratio = agg.mean_ratio;
    rows[c].std_ratio = agg.std_ratio;
  }
  return rows;
}

void write_schedule_csv(const std::string& dataset,
                        const std::vector<ScheduleRow>& rows,
                        std::ostream& out) {
  out << "dataset,schedule,tau0,degenerate,seed_count,mean_ratio,std_ratio\n";
  for (const auto& row : rows) {
    out << dataset << "," << schedule_kind_name(row.kind) << ",";
    if (row.tau0 < 0.0)
      out << "auto";
    else
      csv_number(out, row.tau0);
    out << "," << (row.degenerate ? 1 : 0) << "," << row.seed_count << ",";
    csv_number(out, row.mean_ratio);
    out << ",";
    csv_number(out, row.std_ratio);
    out << "\n";
  }
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
          fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace annealco
