#include "annealco/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

namespace annealco {

namespace {

int in_dim(const ModelConfig& cfg, int layer) {
  return layer == 0 ? kNodeFeatures : cfg.hidden;
}

void check_config(const ModelConfig& cfg) {
  if (cfg.layers < 1 || cfg.hidden < 1)
    throw std::invalid_argument("model config: layers and hidden must be >= 1");
}

void check_shapes(const ModelParams& p) {
  check_config(p.config);
  const int L = p.config.layers, H = p.config.hidden;
  if (static_cast<int>(p.W.size()) != L || static_cast<int>(p.b.size()) != L ||
      static_cast<int>(p.w_out.size()) != H)
    throw std::invalid_argument("model params: layer shape mismatch");
  for (int l = 0; l < L; ++l)
    if (static_cast<int>(p.W[l].size()) != H * in_dim(p.config, l) ||
        static_cast<int>(p.b[l].size()) != H)
      throw std::invalid_argument("model params: layer shape mismatch");
}

double clamp01(double p) {
  return std::clamp(p, kMarginClamp, 1.0 - kMarginClamp);
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct ForwardCache {
  std::vector<std::vector<double>> h;  // levels 0..L, flattened n x dim
  std::vector<std::vector<double>> s;  // per layer, aggregated inputs n x in_dim
  std::vector<double> logit;
  std::vector<double> phi_raw;  // sigmoid before clamping
  Marginals phi;
};

void forward_pass(const ModelParams& p, const Graph& g, ForwardCache& cache) {
  const int n = g.num_nodes();
  const int L = p.config.layers, H = p.config.hidden;
  const double max_d = std::max(1, g.max_degree());

  cache.h.assign(L + 1, {});
  cache.s.assign(L, {});
  cache.h[0].resize(static_cast<std::size_t>(n) * kNodeFeatures);
  for (int i = 0; i < n; ++i) {
    cache.h[0][i * kNodeFeatures + 0] = g.node_weight(i);
    cache.h[0][i * kNodeFeatures + 1] = g.degree(i) / max_d;
    cache.h[0][i * kNodeFeatures + 2] = 1.0;
  }

  for (int l = 0; l < L; ++l) {
    const int d = in_dim(p.config, l);
    const auto& hin = cache.h[l];
    auto& s = cache.s[l];
    s.assign(static_cast<std::size_t>(n) * d, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < d; ++c) s[i * d + c] = hin[i * d + c];
      for (const auto& e : g.neighbors(i))
        for (int c = 0; c < d; ++c) s[i * d + c] += hin[e.to * d + c];
    }
    auto& hout = cache.h[l + 1];
    hout.resize(static_cast<std::size_t>(n) * H);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < H; ++r) {
        double z = p.b[l][r];
        const double* wrow = p.W[l].data() + static_cast<std::size_t>(r) * d;
        for (int c = 0; c < d; ++c) z += wrow[c] * s[i * d + c];
        hout[i * H + r] = std::tanh(z);
      }
  }

  cache.logit.resize(n);
  cache.phi_raw.resize(n);
  cache.phi.resize(n);
  const auto& hl = cache.h[L];
  for (int i = 0; i < n; ++i) {
    double z = p.b_out;
    for (int r = 0; r < H; ++r) z += p.w_out[r] * hl[i * H + r];
    cache.logit[i] = z;
    cache.phi_raw[i] = sigmoid(z);
    cache.phi[i] = clamp01(cache.phi_raw[i]);
  }
}

// Backpropagates dL/dphi into the parameter gradient accumulator.
void backward_pass(const ModelParams& p, const Graph& g,
                   const ForwardCache& cache, const std::vector<double>& dphi,
                   ModelParams& acc) {
  const int n = g.num_nodes();
  const int L = p.config.layers, H = p.config.hidden;

  std::vector<double> dh(static_cast<std::size_t>(n) * H, 0.0);
  for (int i = 0; i < n; ++i) {
    const double raw = cache.phi_raw[i];
    // Clamping zeroes the derivative outside the open interval.
    if (raw <= kMarginClamp || raw >= 1.0 - kMarginClamp) continue;
    const double dlogit = dphi[i] * raw * (1.0 - raw);
    acc.b_out += dlogit;
    for (int r = 0; r < H; ++r) {
      acc.w_out[r] += dlogit * cache.h[L][i * H + r];
      dh[i * H + r] = dlogit * p.w_out[r];
    }
  }

  std::vector<double> dz(static_cast<std::size_t>(n) * H);
  for (int l = L - 1; l >= 0; --l) {
    const int d = in_dim(p.config, l);
    const auto& hout = cache.h[l + 1];
    const auto& s = cache.s[l];
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < H; ++r) {
        const double t = hout[i * H + r];
        dz[i * H + r] = dh[i * H + r] * (1.0 - t * t);
      }
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < H; ++r) {
        const double v = dz[i * H + r];
        if (v == 0.0) continue;
        acc.b[l][r] += v;
        double* wrow = acc.W[l].data() + static_cast<std::size_t>(r) * d;
        for (int c = 0; c < d; ++c) wrow[c] += v * s[i * d + c];
      }
    std::vector<double> ds(static_cast<std::size_t>(n) * d, 0.0);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < H; ++r) {
        const double v = dz[i * H + r];
        if (v == 0.0) continue;
        const double* wrow = p.W[l].data() + static_cast<std::size_t>(r) * d;
        for (int c = 0; c < d; ++c) ds[i * d + c] += wrow[c] * v;
      }
    // s_j aggregates h_i for every j in the closed neighborhood of i.
    std::vector<double> dprev(static_cast<std::size_t>(n) * d, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < d; ++c) dprev[i * d + c] = ds[i * d + c];
      for (const auto& e : g.neighbors(i))
        for (int c = 0; c < d; ++c) dprev[i * d + c] += ds[e.to * d + c];
    }
    dh.swap(dprev);
  }
}

void axpy_params(ModelParams& dst, const ModelParams& src, double scale) {
  for (std::size_t l = 0; l < dst.W.size(); ++l) {
    for (std::size_t k = 0; k < dst.W[l].size(); ++k)
      dst.W[l][k] += scale * src.W[l][k];
    for (std::size_t k = 0; k < dst.b[l].size(); ++k)
      dst.b[l][k] += scale * src.b[l][k];
  }
  for (std::size_t k = 0; k < dst.w_out.size(); ++k)
    dst.w_out[k] += scale * src.w_out[k];
  dst.b_out += scale * src.b_out;
}

void scale_params(ModelParams& p, double scale) {
  for (auto& w : p.W)
    for (auto& v : w) v *= scale;
  for (auto& b : p.b)
    for (auto& v : b) v *= scale;
  for (auto& v : p.w_out) v *= scale;
  p.b_out *= scale;
}

void csv_number(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "na";
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  out << buf;
}

}  // namespace

ModelParams zero_params(const ModelConfig& cfg) {
  check_config(cfg);
  ModelParams p;
  p.config = cfg;
  p.W.resize(cfg.layers);
  p.b.resize(cfg.layers);
  for (int l = 0; l < cfg.layers; ++l) {
    p.W[l].assign(static_cast<std::size_t>(cfg.hidden) * in_dim(cfg, l), 0.0);
    p.b[l].assign(cfg.hidden, 0.0);
  }
  p.w_out.assign(cfg.hidden, 0.0);
  p.b_out = 0.0;
  return p;
}

ModelParams random_params(const ModelConfig& cfg, std::uint64_t seed) {
  ModelParams p = zero_params(cfg);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 0.1);
  for (auto& w : p.W)
    for (auto& v : w) v = dist(rng);
  for (auto& b : p.b)
    for (auto& v : b) v = dist(rng);
  for (auto& v : p.w_out) v = dist(rng);
  p.b_out = dist(rng);
  return p;
}

std::size_t param_count(const ModelConfig& cfg) {
  check_config(cfg);
  std::size_t count = 0;
  for (int l = 0; l < cfg.layers; ++l)
    count += static_cast<std::size_t>(cfg.hidden) * (in_dim(cfg, l) + 1);
  return count + cfg.hidden + 1;
}

std::vector<double> flatten_params(const ModelParams& p) {
  check_shapes(p);
  std::vector<double> flat;
  flat.reserve(param_count(p.config));
  for (int l = 0; l < p.config.layers; ++l) {
    flat.insert(flat.end(), p.W[l].begin(), p.W[l].end());
    flat.insert(flat.end(), p.b[l].begin(), p.b[l].end());
  }
  flat.insert(flat.end(), p.w_out.begin(), p.w_out.end());
  flat.push_back(p.b_out);
  return flat;
}

ModelParams unflatten_params(const ModelConfig& cfg,
                             std::span<const double> flat) {
  if (flat.size() != param_count(cfg))
    throw std::invalid_argument("unflatten_params: length mismatch");
  ModelParams p = zero_params(cfg);
  std::size_t pos = 0;
  for (int l = 0; l < cfg.layers; ++l) {
    std::copy_n(flat.begin() + pos, p.W[l].size(), p.W[l].begin());
    pos += p.W[l].size();
    std::copy_n(flat.begin() + pos, p.b[l].size(), p.b[l].begin());
    pos += p.b[l].size();
  }
  std::copy_n(flat.begin() + pos, p.w_out.size(), p.w_out.begin());
  pos += p.w_out.size();
  p.b_out = flat[pos];
  return p;
}

nlohmann::json params_to_json(const ModelParams& p) {
  check_shapes(p);
  nlohmann::json j;
  j["layers"] = p.config.layers;
  j["hidden"] = p.config.hidden;
  j["values"] = flatten_params(p);
  return j;
}

ModelParams params_from_json(const nlohmann::json& j) {
  ModelConfig cfg;
  cfg.layers = j.at("layers").get<int>();
  cfg.hidden = j.at("hidden").get<int>();
  const auto values = j.at("values").get<std::vector<double>>();
  return unflatten_params(cfg, values);
}

double param_rel_change(const ModelParams& before, const ModelParams& after) {
  const auto u = flatten_params(after);
  const auto v = flatten_params(before);
  if (u.size() != v.size())
    throw std::invalid_argument("param_rel_change: shape mismatch");
  double diff2 = 0.0, base2 = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double d = u[k] - v[k];
    diff2 += d * d;
    base2 += v[k] * v[k];
  }
  if (base2 == 0.0)
    throw std::invalid_argument("param_rel_change: zero-norm reference");
  return std::sqrt(diff2) / std::sqrt(base2);
}

Marginals model_forward(const ModelParams& p, const Graph& g) {
  check_shapes(p);
  ForwardCache cache;
  forward_pass(p, g, cache);
  return cache.phi;
}

double model_loss_and_grad(const ModelParams& p,
                           std::span<const ProblemInstance> batch, double tau,
                           ModelParams& grad) {
  check_shapes(p);
  if (batch.empty())
    throw std::invalid_argument("model_loss_and_grad: empty batch");

  grad = zero_params(p.config);
  double total = 0.0;
  ForwardCache cache;
  std::vector<double> dphi;
  for (const auto& inst : batch) {
    forward_pass(p, inst.graph, cache);
    total += loss(inst, cache.phi, tau);
    loss_grad(inst, cache.phi, tau, dphi);
    backward_pass(p, inst.graph, cache, dphi, grad);
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  scale_params(grad, inv);
  return total * inv;
}

TrainResult train_model(const ModelConfig& cfg,
                        const std::vector<ProblemInstance>& train_set,
                        const std::vector<ValExample>& val_set,
                        const TrainConfig& tc) {
  if (train_set.empty())
    throw std::invalid_argument("train_model: empty training set");
  if (tc.epochs < 1 || tc.batch_size < 1)
    throw std::invalid_argument("train_model: epochs and batch_size must be >= 1");

  double tau0 = tc.schedule.tau0;
  if (tau0 < 0.0) {
    tau0 = tc.schedule.tauK;
    for (const auto& inst : train_set)
      tau0 = std::max(tau0, lipschitz_bound(inst));
  }
  const Schedule sched(tc.schedule.kind, tau0, tc.schedule.tauK, tc.epochs);

  TrainResult result;
  result.params = random_params(cfg, tc.seed);
  std::mt19937_64 shuffle_rng(tc.seed + 0x517cc1b727220a95ull);

  std::vector<int> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  const int num_batches =
      (static_cast<int>(train_set.size()) + tc.batch_size - 1) / tc.batch_size;

  ModelParams grad;
  std::vector<ProblemInstance> batch;
  for (int e = 0; e < tc.epochs; ++e) {
    const double tau_epoch = sched.temperature(e);
    const ModelParams before = result.params;
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double loss_sum = 0.0;
    for (int bi = 0; bi < num_batches; ++bi) {
      batch.clear();
      for (int k = bi * tc.batch_size;
           k < std::min<int>((bi + 1) * tc.batch_size, order.size()); ++k)
        batch.push_back(train_set[order[k]]);
      const double tau =
          tc.per_batch_anneal
              ? sched.temperature_at(e + bi / static_cast<double>(num_batches))
              : tau_epoch;
      loss_sum += model_loss_and_grad(result.params, batch, tau, grad);
      axpy_params(result.params, grad, -tc.learning_rate);
    }

    result.rel_changes.push_back(param_rel_change(before, result.params));

    double val_ratio = std::numeric_limits<double>::quiet_NaN();
    if (!val_set.empty()) {
      double sum = 0.0;
      for (const auto& ex : val_set) {
        Marginals phi = model_forward(result.params, ex.instance.graph);
        Assignment x = repair(ex.instance, decode(ex.instance, phi));
        sum += solution_ratio(ex.instance.kind, objective(ex.instance, x),
                              ex.optimum_objective);
      }
      val_ratio = sum / static_cast<double>(val_set.size());
    }
    result.history.push_back({e, tau_epoch, loss_sum / num_batches, val_ratio});
  }
  return result;
}

void write_metrics_csv(const TrainResult& result, std::ostream& out) {
  out << "epoch,tau,loss,val_ratio\n";
  for (const auto& row : result.history) {
    out << row.epoch << ",";
    csv_number(out, row.tau);
    out << ",";
    csv_number(out, row.loss);
    out << ",";
    csv_number(out, row.val_ratio);
    out << "\n";
  }
}

double solution_ratio(ProblemKind kind, double obtained_objective,
                      double optimum_objective) {
  switch (kind) {
    case ProblemKind::MIS:
    case ProblemKind::MaxClique: {
      // Objectives are negated selected weights; the quotient recovers
      // obtained weight / optimum weight.
      if (optimum_objective == 0.0) return obtained_objective == 0.0 ? 1.0 : 0.0;
      const double r = obtained_objective / optimum_objective;
      return r > 0.0 ? r : 0.0;
    }
    case ProblemKind::MinDominatingSet: {
      if (obtained_objective == 0.0) return 1.0;  // empty graph
      const double r = optimum_objective / obtained_objective;
      return r > 0.0 ? r : 0.0;
    }
    case ProblemKind::MinCut:
      throw std::invalid_argument(
          "solution_ratio: cut quality is reported as conductance");
  }
  throw std::logic_error("solution_ratio: unknown problem kind");
}

}  // namespace annealco
