#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "annealco/solver.hpp"

namespace annealco {

// Per-node input features: (node weight, degree / max degree, 1).
inline constexpr int kNodeFeatures = 3;

struct ModelConfig {
  int layers = 2;
  int hidden = 16;
};

// Message-passing network: L rounds of
//   h_i <- tanh(W_l (h_i + sum_{j in N(i)} h_j) + b_l)
// followed by a scalar projection and sigmoid into marginals.
struct ModelParams {
  ModelConfig config;
  std::vector<std::vector<double>> W;  // layer l: hidden x in_dim, row-major
  std::vector<std::vector<double>> b;  // layer l: hidden
  std::vector<double> w_out;           // hidden
  double b_out = 0.0;
};

ModelParams zero_params(const ModelConfig& cfg);
ModelParams random_params(const ModelConfig& cfg, std::uint64_t seed);

std::size_t param_count(const ModelConfig& cfg);
std::vector<double> flatten_params(const ModelParams& p);
ModelParams unflatten_params(const ModelConfig& cfg,
                             std::span<const double> flat);

nlohmann::json params_to_json(const ModelParams& p);
ModelParams params_from_json(const nlohmann::json& j);

// ||u - v||_2 / ||v||_2 over flattened parameters, v = before.
double param_rel_change(const ModelParams& before, const ModelParams& after);

Marginals model_forward(const ModelParams& p, const Graph& g);

// Mean annealed loss over the batch and its parameter gradient (analytic
// backward pass). grad is overwritten with ModelParams-shaped sums / batch.
double model_loss_and_grad(const ModelParams& p,
                           std::span<const ProblemInstance> batch, double tau,
                           ModelParams& grad);

struct ValExample {
  ProblemInstance instance;
  double optimum_objective;
};

struct TrainConfig {
  int epochs = 100;
  int batch_size = 8;
  double learning_rate = 0.05;
  ScheduleSpec schedule;  // steps is overridden to the epoch count
  bool per_batch_anneal = false;
  std::uint64_t seed = 0;
};

struct TrainMetricsRow {
  int epoch;
  double tau;
  double loss;       // mean of batch losses in the epoch
  double val_ratio;  // NaN when no validation set was given
};

struct TrainResult {
  ModelParams params;
  std::vector<TrainMetricsRow> history;
  std::vector<double> rel_changes;  // per-epoch parameter relative change
};

// Mini-batch gradient descent with the temperature annealed once per epoch
// (or continuously per batch when per_batch_anneal is set). Deterministic
// given (dataset order, seed).
TrainResult train_model(const ModelConfig& cfg,
                        const std::vector<ProblemInstance>& train_set,
                        const std::vector<ValExample>& val_set,
                        const TrainConfig& tc);

// CSV columns: epoch,tau,loss,val_ratio.
void write_metrics_csv(const TrainResult& result, std::ostream& out);

// Solution-quality ratio in (0, 1]: obtained/optimum for the maximization
// kinds, optimum/obtained for min dominating set. Not defined for MinCut
// (conductance is reported instead); throws in that case.
double solution_ratio(ProblemKind kind, double obtained_objective,
                      double optimum_objective);

}  // namespace annealco
