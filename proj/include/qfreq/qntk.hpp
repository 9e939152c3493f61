#pragma once

#include <vector>

#include "qfreq/ansatz.hpp"
#include "qfreq/fourier.hpp"
#include "qfreq/training.hpp"

namespace qfreq {

// Real symmetric x-space kernel.
struct KernelMatrix {
  int size = 0;
  std::vector<double> entries;  // row-major

  double& at(int i, int j) { return entries[static_cast<std::size_t>(i) * size + j]; }
  double at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * size + j];
  }
};

// Hermitian k-space image of a KernelMatrix.
struct ComplexKernel {
  std::vector<double> k_values;
  std::vector<cplx> entries;  // row-major, row = k', column = k

  int size() const { return static_cast<int>(k_values.size()); }
};

// Gram matrix of output gradients: entry (i',i) = grad f(x_i') . grad f(x_i).
KernelMatrix empirical_qntk(const AnsatzSpec& spec, const ParamVector& params,
                            const std::vector<std::vector<double>>& inputs,
                            int threads = 0);

// Constant-kernel approximation
//   2 L (D |chi|^2 - 1) / (D^2 - 1)^2 * (D Tr(M^2) - (Tr M)^2)
// with chi the overlap of the prepared states at the reference parameters,
// L the trainable parameter count and D the Hilbert-space dimension.
KernelMatrix frozen_qntk(const AnsatzSpec& spec, const ParamVector& params_ref,
                         const std::vector<std::vector<double>>& inputs);

// k-space transform on the uniform curve grid:
//   K_hat(k',k) = (1/N) sum_{i,i'} K(x_i',x_i) exp(+i k' x_i') exp(-i k x_i).
ComplexKernel kernel_to_kspace(const KernelMatrix& kernel, int grid_size);

enum class DynamicsMode { Continuous, Discrete };

// Frozen-kernel residual forecast: exp(-eta*K*t) eps0 (continuous) or
// (I - eta*K)^t eps0 (discrete).
SpectrumSeries predict_residuals(const ComplexKernel& kernel,
                                 const SpectrumSeries& eps0, double eta, int t,
                                 DynamicsMode mode);

// Batch variant sharing one eigendecomposition across the requested times.
std::vector<SpectrumSeries> predict_residual_series(
    const ComplexKernel& kernel, const SpectrumSeries& eps0, double eta,
    const std::vector<int>& times, DynamicsMode mode);

struct DynamicsRow {
  int iter = 0;
  double k = 0.0;
  double actual_abs = 0.0;
  double predicted_abs = 0.0;
  double ratio = 1.0;  // predicted / actual; 1 when both vanish
};

// Per tracked frequency and recorded iteration: actual |eps_hat(k,t)| from
// the log's residual snapshots against the forecast magnitude.
std::vector<DynamicsRow> compare_dynamics(
    const TrainLog& log, const std::vector<SpectrumSeries>& predicted,
    const std::vector<double>& tracked_ks);

double frobenius_norm(const KernelMatrix& kernel);
double frobenius_distance(const KernelMatrix& a, const KernelMatrix& b);

}  // namespace qfreq
