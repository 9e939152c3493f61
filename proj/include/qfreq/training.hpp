#pragma once

#include <cstdint>
#include <vector>

#include "qfreq/ansatz.hpp"
#include "qfreq/datasets.hpp"
#include "qfreq/fourier.hpp"

namespace qfreq {

struct TrainConfig {
  double eta = 0.01;
  int iterations = 200;
  std::uint64_t seed = 0;
  double init_lo = 0.0;
  double init_hi = 6.283185307179586476925286766559;
  int record_every = 1;
  int tracked_peaks = 3;
  double output_scale = 1.0;  // applied by the caller when building the spec
  int threads = 0;
};

struct TrainRecord {
  int iter = 0;
  double loss = 0.0;
  std::vector<double> residuals;        // f(x_i) - y_i on the training grid
  std::vector<double> delta_f;          // relative error per tracked peak
  std::vector<double> freq_grad_norms;  // gradient norm per tracked peak
};

struct TrainLog {
  std::vector<double> tracked_ks;  // descending label amplitude
  std::vector<TrainRecord> records;
  ParamVector final_params;
  double final_loss = 0.0;
  bool complete = false;
};

// L = 1/2 sum_i (f(x_i) - y_i)^2.
double mse_loss(const AnsatzSpec& spec, const ParamVector& params,
                const Dataset& data);

std::vector<double> residuals(const AnsatzSpec& spec, const ParamVector& params,
                              const Dataset& data);

// One full-batch update theta - eta * sum_i eps_i * grad f(x_i).
ParamVector gd_step(const AnsatzSpec& spec, const ParamVector& params,
                    const Dataset& data, double eta);

// Seeded uniform initialization in [lo, hi).
ParamVector random_params(const AnsatzSpec& spec, std::uint64_t seed, double lo,
                          double hi);

// Gradient descent with per-iteration frequency diagnostics. Peaks of the
// label spectrum are tracked; on the uniform curve grid the spectrum is the
// unitary DFT, otherwise labels are projected onto the first principal
// component and transformed on a Nyquist-guarded k grid.
TrainLog train(const AnsatzSpec& spec, const ParamVector& init_params,
               const Dataset& data, const TrainConfig& config);

// Euclidean norm over parameters of Re[conj(eps_hat(k)) * df_hat(k)/dtheta_l]
// on the uniform curve grid; k must be an on-grid integer frequency.
double freq_gradient_norm(const AnsatzSpec& spec, const ParamVector& params,
                          const Dataset& data, double k);

// First-principal-component projection with a Nyquist-guarded grid of 128
// frequencies over [0, pi / median nearest-neighbour spacing]. Used for
// spectral tracking of multi-dimensional datasets.
struct ProjectedGrid {
  ProjectionDirection direction;
  std::vector<double> k_grid;
};

ProjectedGrid make_projected_grid(const Dataset& data);

// Index into log.tracked_ks of the peak whose delta_f first falls below the
// threshold; ties break toward the larger-amplitude peak. Returns -1 when no
// peak ever crosses.
int first_peak_below(const TrainLog& log, double threshold);

}  // namespace qfreq
