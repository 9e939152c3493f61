#pragma once

#include <span>
#include <vector>

#include "qfreq/ansatz.hpp"
#include "qfreq/datasets.hpp"
#include "qfreq/qntk.hpp"

namespace qfreq {

// Fidelity kernel K_ij = |<psi(x_i)|psi(x_j)>|^2 from exact statevector
// overlaps (equal to the |0^n> return probability of U^dag(x_j) U(x_i) for
// pure states).
KernelMatrix kernel_matrix(const AnsatzSpec& spec, const ParamVector& params,
                           const std::vector<std::vector<double>>& inputs,
                           int threads = 0);

// Kernel-target alignment A = sum_ij K_ij y_i y_j / (N ||K||_F) for +/-1
// labels; equals 1 iff K is proportional to y y^T.
double alignment(const KernelMatrix& kernel, std::span<const double> labels);

struct AlignmentResult {
  ParamVector params;
  double initial = 0.0;
  double final = 0.0;
  std::vector<double> history;  // alignment after each step, [0] = initial
  bool warning = false;         // numeric abort, best-so-far returned
};

// Gradient ascent on A(theta); kernel derivatives use the parameter-shift
// rule applied to each of the two state preparations. Returns the best
// iterate seen.
AlignmentResult optimize_alignment(const AnsatzSpec& spec,
                                   const ParamVector& params0,
                                   const Dataset& data, int steps, double eta,
                                   int threads = 0);

struct SvmModel {
  std::vector<double> alpha;
  double bias = 0.0;
  std::vector<int> support_indices;  // alpha_i > 0
  double c = 0.0;
  std::vector<double> labels;
};

struct SvmOptions {
  double tol = 1e-5;            // KKT violation tolerance
  int max_passes_factor = 10;   // pass budget = factor * N
  bool track_objective = false;
};

struct SvmTrainStats {
  int passes = 0;
  int updates = 0;
  std::vector<double> objectives;  // after each accepted update
};

// Dual soft-margin solve by sequential minimal optimization on a precomputed
// kernel.
SvmModel svm_train(const KernelMatrix& kernel, std::span<const double> labels,
                   double c, const SvmOptions& options = {},
                   SvmTrainStats* stats = nullptr);

// sign(sum_i alpha_i y_i K(x_i, x) + b); sign(0) is +1.
int svm_predict(const SvmModel& model, std::span<const double> kernel_row);

double dual_objective(const KernelMatrix& kernel,
                      std::span<const double> labels,
                      std::span<const double> alpha);

}  // namespace qfreq
