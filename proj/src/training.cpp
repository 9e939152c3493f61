#include "qfreq/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qfreq/rng.hpp"
#include "qfreq/threading.hpp"

namespace qfreq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_data(const AnsatzSpec& spec, const Dataset& data) {
  if (data.inputs.size() != data.labels.size())
    throw shape_error("dataset input/label counts differ");
  if (data.inputs.empty()) throw shape_error("dataset is empty");
  if (data.feature_dim() < spec.feature_dim)
    throw shape_error("dataset feature dimension below ansatz requirement");
}

std::vector<double> batch_outputs(const AnsatzSpec& spec,
                                  const ParamVector& params,
                                  const Dataset& data, int threads) {
  std::vector<double> out(data.size());
  parallel_for_chunks(data.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      out[i] = evaluate(spec, params, data.inputs[i]);
  });
  return out;
}

// Per-sample outputs and gradient rows, parallel over samples.
void batch_gradients(const AnsatzSpec& spec, const ParamVector& params,
                     const Dataset& data, int threads,
                     std::vector<double>& outputs,
                     std::vector<std::vector<double>>& grads) {
  outputs.resize(data.size());
  grads.resize(data.size());
  parallel_for_chunks(data.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      outputs[i] = evaluate(spec, params, data.inputs[i]);
      grads[i] = gradient(spec, params, data.inputs[i]);
    }
  });
}

// Observation phases exp(-i k x_i) for one frequency, either on the implicit
// uniform angle grid or along a fixed projection of general inputs.
struct SpectralTracker {
  std::vector<double> tracked_ks;
  std::vector<cplx> y_hat;                 // label transform at tracked ks
  std::vector<std::vector<cplx>> phases;   // [peak][sample]
  double inv_sqrt_n = 1.0;
  ProjectionDirection direction;           // general grids only
  std::vector<double> k_grid;              // general grids only

  // Transform of arbitrary per-sample values at tracked peak `t`.
  cplx transform(std::size_t t, const std::vector<double>& values) const {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < values.size(); ++i)
      acc += phases[t][i] * values[i];
    return acc * inv_sqrt_n;
  }
};

SpectralTracker make_tracker(const Dataset& data, int tracked_peaks) {
  SpectralTracker tr;
  const std::size_t n = data.size();
  tr.inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

  std::vector<double> proj(n);
  if (data.grid == GridKind::UniformAngle) {
    for (std::size_t i = 0; i < n; ++i)
      proj[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const SpectrumSeries y_spec = dft_uniform(data.labels);
    tr.tracked_ks = top_peaks(y_spec, tracked_peaks);
    for (double k : tr.tracked_ks) tr.y_hat.push_back(y_spec.at(k));
  } else {
    ProjectedGrid grid = make_projected_grid(data);
    tr.direction = std::move(grid.direction);
    tr.k_grid = std::move(grid.k_grid);
    for (std::size_t i = 0; i < n; ++i) {
      double dot = 0.0;
      for (std::size_t d = 0; d < tr.direction.components.size(); ++d)
        dot += tr.direction.components[d] * data.inputs[i][d];
      proj[i] = dot;
    }
    const SpectrumSeries y_spec =
        nudft_projected(data.inputs, data.labels, tr.direction, tr.k_grid);
    tr.tracked_ks = top_peaks(y_spec, tracked_peaks);
    for (double k : tr.tracked_ks) tr.y_hat.push_back(y_spec.at(k));
  }

  tr.phases.resize(tr.tracked_ks.size());
  for (std::size_t t = 0; t < tr.tracked_ks.size(); ++t) {
    tr.phases[t].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double phase = -tr.tracked_ks[t] * proj[i];
      tr.phases[t][i] = cplx{std::cos(phase), std::sin(phase)};
    }
  }
  return tr;
}

}  // namespace

double mse_loss(const AnsatzSpec& spec, const ParamVector& params,
                const Dataset& data) {
  const std::vector<double> eps = residuals(spec, params, data);
  double acc = 0.0;
  for (double e : eps) acc += e * e;
  return 0.5 * acc;
}

std::vector<double> residuals(const AnsatzSpec& spec, const ParamVector& params,
                              const Dataset& data) {
  check_data(spec, data);
  std::vector<double> eps = batch_outputs(spec, params, data, 1);
  for (std::size_t i = 0; i < eps.size(); ++i) eps[i] -= data.labels[i];
  return eps;
}

ParamVector gd_step(const AnsatzSpec& spec, const ParamVector& params,
                    const Dataset& data, double eta) {
  check_data(spec, data);
  if (!(eta >= 0.0)) throw config_error("gd_step: learning rate must be >= 0");
  std::vector<double> outputs;
  std::vector<std::vector<double>> grads;
  batch_gradients(spec, params, data, 1, outputs, grads);
  ParamVector next = params;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double eps = outputs[i] - data.labels[i];
    for (std::size_t l = 0; l < next.size(); ++l) {
      const double g = eps * grads[i][l];
      if (!std::isfinite(g)) throw numeric_error("gd_step: non-finite gradient");
      next[l] -= eta * g;
    }
  }
  return next;
}

ParamVector random_params(const AnsatzSpec& spec, std::uint64_t seed, double lo,
                          double hi) {
  Rng rng(seed);
  ParamVector params(static_cast<std::size_t>(spec.parameter_count));
  for (double& p : params) p = rng.uniform(lo, hi);
  return params;
}

TrainLog train(const AnsatzSpec& spec, const ParamVector& init_params,
               const Dataset& data, const TrainConfig& config) {
  check_data(spec, data);
  if (config.iterations < 1)
    throw config_error("train: iterations must be >= 1");
  if (!(config.eta > 0.0))
    throw config_error("train: learning rate must be > 0");
  if (config.record_every < 1)
    throw config_error("train: record_every must be >= 1");

  const SpectralTracker tracker = make_tracker(data, config.tracked_peaks);
  const std::size_t n = data.size();
  const std::size_t n_peaks = tracker.tracked_ks.size();

  TrainLog log;
  log.tracked_ks = tracker.tracked_ks;
  ParamVector params = init_params;

  std::vector<double> outputs;
  std::vector<std::vector<double>> grads;
  std::vector<double> eps(n);
  std::vector<double> grad_col(n);

  for (int t = 0; t < config.iterations; ++t) {
    try {
      batch_gradients(spec, params, data, config.threads, outputs, grads);
    } catch (const numeric_error&) {
      log.final_params = params;
      log.final_loss = std::numeric_limits<double>::quiet_NaN();
      log.complete = false;
      return log;
    }

    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      eps[i] = outputs[i] - data.labels[i];
      loss += eps[i] * eps[i];
    }
    loss *= 0.5;
    if (!std::isfinite(loss)) {
      log.final_params = params;
      log.final_loss = loss;
      log.complete = false;
      return log;
    }

    if (t % config.record_every == 0) {
      TrainRecord rec;
      rec.iter = t;
      rec.loss = loss;
      rec.residuals = eps;
      for (std::size_t pk = 0; pk < n_peaks; ++pk) {
        const cplx eps_hat = tracker.transform(pk, eps);
        rec.delta_f.push_back(std::abs(eps_hat) / std::abs(tracker.y_hat[pk]));
        double norm_sq = 0.0;
        for (std::size_t l = 0; l < params.size(); ++l) {
          for (std::size_t i = 0; i < n; ++i) grad_col[i] = grads[i][l];
          const cplx g_hat = tracker.transform(pk, grad_col);
          const double comp = (std::conj(eps_hat) * g_hat).real();
          norm_sq += comp * comp;
        }
        rec.freq_grad_norms.push_back(std::sqrt(norm_sq));
      }
      log.records.push_back(std::move(rec));
    }

    bool finite = true;
    for (std::size_t l = 0; l < params.size(); ++l) {
      double g = 0.0;
      for (std::size_t i = 0; i < n; ++i) g += eps[i] * grads[i][l];
      params[l] -= config.eta * g;
      finite = finite && std::isfinite(params[l]);
    }
    if (!finite) {
      log.final_params = params;
      log.final_loss = std::numeric_limits<double>::quiet_NaN();
      log.complete = false;
      return log;
    }
  }

  log.final_params = params;
  log.final_loss = mse_loss(spec, params, data);
  log.complete = true;
  return log;
}

double freq_gradient_norm(const AnsatzSpec& spec, const ParamVector& params,
                          const Dataset& data, double k) {
  check_data(spec, data);
  if (data.grid != GridKind::UniformAngle)
    throw unsupported_error("freq_gradient_norm needs the uniform curve grid");
  const std::size_t n = data.size();
  const double lo = -std::floor(static_cast<double>(n) / 2.0);
  const double hi = std::ceil(static_cast<double>(n) / 2.0) - 1.0;
  if (k != std::round(k) || k < lo || k > hi)
    throw index_error("frequency off the DFT grid");

  std::vector<double> outputs;
  std::vector<std::vector<double>> grads;
  batch_gradients(spec, params, data, 1, outputs, grads);

  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<cplx> phases(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phase =
        -k * kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    phases[i] = cplx{std::cos(phase), std::sin(phase)};
  }
  cplx eps_hat{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    eps_hat += phases[i] * (outputs[i] - data.labels[i]);
  eps_hat *= inv_sqrt_n;

  double norm_sq = 0.0;
  for (std::size_t l = 0; l < params.size(); ++l) {
    cplx g_hat{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) g_hat += phases[i] * grads[i][l];
    g_hat *= inv_sqrt_n;
    const double comp = (std::conj(eps_hat) * g_hat).real();
    norm_sq += comp * comp;
  }
  return std::sqrt(norm_sq);
}

ProjectedGrid make_projected_grid(const Dataset& data) {
  ProjectedGrid grid;
  grid.direction = principal_direction(data.inputs);
  const std::size_t n = data.size();
  std::vector<double> proj(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dot = 0.0;
    for (std::size_t d = 0; d < grid.direction.components.size(); ++d)
      dot += grid.direction.components[d] * data.inputs[i][d];
    proj[i] = dot;
  }
  std::sort(proj.begin(), proj.end());
  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < proj.size(); ++i) {
    const double g = proj[i + 1] - proj[i];
    if (g > 1e-12) gaps.push_back(g);
  }
  if (gaps.empty())
    throw degenerate_data_error("all projected points coincide");
  std::sort(gaps.begin(), gaps.end());
  const double median = gaps[gaps.size() / 2];
  const double k_max = std::numbers::pi / median;
  grid.k_grid.resize(128);
  for (std::size_t j = 0; j < 128; ++j)
    grid.k_grid[j] = k_max * static_cast<double>(j) / 127.0;
  return grid;
}

int first_peak_below(const TrainLog& log, double threshold) {
  int best = -1;
  int best_time = std::numeric_limits<int>::max();
  for (std::size_t pk = 0; pk < log.tracked_ks.size(); ++pk) {
    for (const TrainRecord& rec : log.records) {
      if (rec.delta_f[pk] < threshold) {
        if (rec.iter < best_time) {
          best_time = rec.iter;
          best = static_cast<int>(pk);
        }
        break;
      }
    }
  }
  return best;
}

}  // namespace qfreq
