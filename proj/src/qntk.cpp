#include "qfreq/qntk.hpp"

#include <cmath>
#include <numbers>

#include "qfreq/linalg.hpp"
#include "qfreq/threading.hpp"

namespace qfreq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_hermitian(const ComplexKernel& kernel) {
  const int n = kernel.size();
  double scale = 0.0;
  for (const cplx& e : kernel.entries) scale = std::max(scale, std::abs(e));
  const double tol = 1e-8 * std::max(scale, 1.0);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (std::abs(kernel.entries[a * n + b] -
                   std::conj(kernel.entries[b * n + a])) > tol)
        throw shape_error("k-space kernel is not Hermitian");
}

}  // namespace

KernelMatrix empirical_qntk(const AnsatzSpec& spec, const ParamVector& params,
                            const std::vector<std::vector<double>>& inputs,
                            int threads) {
  if (inputs.empty()) throw shape_error("empirical_qntk: no inputs");
  const int n = static_cast<int>(inputs.size());
  std::vector<std::vector<double>> grads(inputs.size());
  parallel_for_chunks(inputs.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      grads[i] = gradient(spec, params, inputs[i]);
  });
  KernelMatrix kernel;
  kernel.size = n;
  kernel.entries.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double acc = 0.0;
      for (std::size_t l = 0; l < grads[0].size(); ++l)
        acc += grads[static_cast<std::size_t>(i)][l] *
               grads[static_cast<std::size_t>(j)][l];
      kernel.at(i, j) = acc;
      kernel.at(j, i) = acc;
    }
  }
  return kernel;
}

KernelMatrix frozen_qntk(const AnsatzSpec& spec, const ParamVector& params_ref,
                         const std::vector<std::vector<double>>& inputs) {
  if (inputs.empty()) throw shape_error("frozen_qntk: no inputs");
  const int n = static_cast<int>(inputs.size());
  std::vector<StateVector> states;
  states.reserve(inputs.size());
  for (const auto& x : inputs)
    states.push_back(prepare_state(spec, params_ref, x));

  const double dim = std::ldexp(1.0, spec.num_qubits);
  const double l_count = static_cast<double>(spec.parameter_count);
  const double tr_m = spec.observable.trace_m(spec.num_qubits);
  const double tr_m2 = spec.observable.trace_m2(spec.num_qubits);
  const double observable_factor = dim * tr_m2 - tr_m * tr_m;
  const double denom = (dim * dim - 1.0) * (dim * dim - 1.0);

  KernelMatrix kernel;
  kernel.size = n;
  kernel.entries.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double chi2 = std::norm(inner_product(
          states[static_cast<std::size_t>(i)], states[static_cast<std::size_t>(j)]));
      const double value =
          2.0 * l_count * (dim * chi2 - 1.0) / denom * observable_factor;
      kernel.at(i, j) = value;
      kernel.at(j, i) = value;
    }
  }
  return kernel;
}

ComplexKernel kernel_to_kspace(const KernelMatrix& kernel, int grid_size) {
  if (kernel.size != grid_size)
    throw unsupported_error(
        "kernel_to_kspace: kernel must come from the uniform curve grid of "
        "the given size");
  const int n = grid_size;
  ComplexKernel out;
  out.k_values.resize(static_cast<std::size_t>(n));
  const long lo = -static_cast<long>(n / 2);
  for (int j = 0; j < n; ++j)
    out.k_values[static_cast<std::size_t>(j)] =
        static_cast<double>(lo + static_cast<long>(j));

  // E[i][k] = exp(-i k x_i); K_hat = (1/N) E^H (K E).
  std::vector<cplx> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    for (int j = 0; j < n; ++j) {
      const double phase = -out.k_values[static_cast<std::size_t>(j)] * x;
      e[i * n + j] = cplx{std::cos(phase), std::sin(phase)};
    }
  }
  std::vector<cplx> g(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m) {
      const double kim = kernel.at(i, m);
      for (int j = 0; j < n; ++j) g[i * n + j] += kim * e[m * n + j];
    }
  out.entries.assign(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) {
      const cplx w = std::conj(e[i * n + a]);
      for (int b = 0; b < n; ++b) out.entries[a * n + b] += w * g[i * n + b];
    }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (cplx& v : out.entries) v *= inv_n;
  return out;
}

std::vector<SpectrumSeries> predict_residual_series(
    const ComplexKernel& kernel, const SpectrumSeries& eps0, double eta,
    const std::vector<int>& times, DynamicsMode mode) {
  const int n = kernel.size();
  if (eps0.size() != static_cast<std::size_t>(n))
    throw shape_error("predict_residuals: spectrum/kernel size mismatch");
  for (int j = 0; j < n; ++j)
    if (std::abs(eps0.k_values[static_cast<std::size_t>(j)] -
                 kernel.k_values[static_cast<std::size_t>(j)]) > 1e-9)
      throw shape_error("predict_residuals: frequency grids differ");
  check_hermitian(kernel);
  for (int t : times)
    if (t < 0) throw shape_error("predict_residuals: negative time");

  std::vector<SpectrumSeries> out(times.size());
  if (mode == DynamicsMode::Continuous) {
    const HermitianEig eig(kernel.entries, n);
    for (std::size_t idx = 0; idx < times.size(); ++idx) {
      out[idx].k_values = eps0.k_values;
      out[idx].amplitudes =
          eig.apply_exp(-eta * static_cast<double>(times[idx]), eps0.amplitudes);
    }
    return out;
  }

  int t_max = 0;
  for (int t : times) t_max = std::max(t_max, t);
  std::vector<cplx> cur = eps0.amplitudes;
  std::vector<cplx> next(static_cast<std::size_t>(n));
  std::vector<std::vector<cplx>> snapshots(static_cast<std::size_t>(t_max) + 1);
  snapshots[0] = cur;
  for (int t = 1; t <= t_max; ++t) {
    for (int a = 0; a < n; ++a) {
      cplx acc{0.0, 0.0};
      for (int b = 0; b < n; ++b)
        acc += kernel.entries[a * n + b] * cur[static_cast<std::size_t>(b)];
      next[static_cast<std::size_t>(a)] =
          cur[static_cast<std::size_t>(a)] - eta * acc;
    }
    cur.swap(next);
    snapshots[static_cast<std::size_t>(t)] = cur;
  }
  for (std::size_t idx = 0; idx < times.size(); ++idx) {
    out[idx].k_values = eps0.k_values;
    out[idx].amplitudes = snapshots[static_cast<std::size_t>(times[idx])];
  }
  return out;
}

SpectrumSeries predict_residuals(const ComplexKernel& kernel,
                                 const SpectrumSeries& eps0, double eta, int t,
                                 DynamicsMode mode) {
  return predict_residual_series(kernel, eps0, eta, {t}, mode)[0];
}

std::vector<DynamicsRow> compare_dynamics(
    const TrainLog& log, const std::vector<SpectrumSeries>& predicted,
    const std::vector<double>& tracked_ks) {
  if (predicted.size() != log.records.size())
    throw shape_error("compare_dynamics: iteration grids differ");
  std::vector<DynamicsRow> rows;
  for (std::size_t r = 0; r < log.records.size(); ++r) {
    const SpectrumSeries actual = dft_uniform(log.records[r].residuals);
    for (double k : tracked_ks) {
      DynamicsRow row;
      row.iter = log.records[r].iter;
      row.k = k;
      row.actual_abs = std::abs(actual.at(k));
      row.predicted_abs = std::abs(predicted[r].at(k));
      if (row.actual_abs < 1e-15 && row.predicted_abs < 1e-15) {
        row.ratio = 1.0;
      } else if (row.actual_abs < 1e-15) {
        row.ratio = std::numeric_limits<double>::infinity();
      } else {
        row.ratio = row.predicted_abs / row.actual_abs;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

double frobenius_norm(const KernelMatrix& kernel) {
  double acc = 0.0;
  for (double v : kernel.entries) acc += v * v;
  return std::sqrt(acc);
}

double frobenius_distance(const KernelMatrix& a, const KernelMatrix& b) {
  if (a.size != b.size)
    throw shape_error("frobenius_distance: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const double d = a.entries[i] - b.entries[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace qfreq
