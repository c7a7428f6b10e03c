#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "annealco/baselines.hpp"
#include "annealco/dataset.hpp"
#include "annealco/model.hpp"

namespace annealco {

ScheduleSpec schedule_spec_from_json(const nlohmann::json& j);
SolverConfig solver_config_from_json(const nlohmann::json& j);

// One benchmark table: a dataset, a set of methods, and shared solver
// settings. Ratios need a reference optimum; "auto" resolves it from the
// generator certificate (rb), the exact dominating-set search (n <= 64), or
// brute force (n <= 20), and otherwise marks the ratio unavailable. Cut
// instances report local conductance in the ratio column instead.
struct BenchConfig {
  ProblemKind kind = ProblemKind::MinDominatingSet;
  DatasetSpec dataset;
  std::vector<std::string> methods = {"annealed", "mfa", "greedy"};
  int seed_count = 5;
  std::uint64_t base_seed = 1;
  SolverConfig solver;
  PenaltyRule penalty_rule = PenaltyRule::SharpMin;
  double penalty_scale = 1.0;
  double volume_lo_frac = 0.2, volume_hi_frac = 0.4;  // MinCut window
  bool timing = true;  // false writes zeroed wall times (reproducible output)
  std::string reference = "auto";  // auto | none
};

BenchConfig bench_config_from_json(const nlohmann::json& j);

struct BenchRow {
  std::string dataset;
  std::string method;
  int seed_count = 0;
  double mean_ratio = 0.0;  // conductance for MinCut
  double std_ratio = 0.0;
  double mean_time_s = 0.0;
  double feasibility_rate = 0.0;
  bool ratio_available = true;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

BenchReport run_benchmark(const BenchConfig& cfg, int threads = 1);
void write_report_csv(const BenchReport& report, std::ostream& out);
void write_report_table(const BenchReport& report, std::ostream& out);

// Penalty-strength sweep: the default sharp penalties scaled by each grid
// value, solved with the annealed method.
struct BetaRow {
  double beta = 0.0;
  int seed_count = 0;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;
};

std::vector<BetaRow> ablate_beta(const BenchConfig& cfg,
                                 const std::vector<double>& betas,
                                 int threads = 1);
void write_beta_csv(const std::string& dataset,
                    const std::vector<BetaRow>& rows, std::ostream& out);

// Cooling-ramp sweep over kind x starting temperature. tau0 < 0 picks the
// automatic per-instance start; tau0 == 0 degenerates to the constant floor
// temperature and is flagged.
struct ScheduleRow {
  ScheduleKind kind = ScheduleKind::Linear;
  double tau0 = -1.0;
  bool degenerate = false;
  int seed_count = 0;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;
};

std::vector<ScheduleRow> ablate_schedule(const BenchConfig& cfg,
                                         const std::vector<ScheduleKind>& kinds,
                                         const std::vector<double>& tau0s,
                                         int threads = 1);
void write_schedule_csv(const std::string& dataset,
                        const std::vector<ScheduleRow>& rows,
                        std::ostream& out);

// Index-parallel map; each index writes only its own outputs, so results are
// independent of the thread count. Exceptions propagate to the caller.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

// Instances plus reference optima for a benchmark config (exposed for tests
// and the training CLI). reference_objective is NaN when unavailable.
struct BenchInstances {
  std::vector<ProblemInstance> instances;
  std::vector<double> reference_objective;
};

BenchInstances build_bench_instances(const BenchConfig& cfg);

}  // namespace annealco
