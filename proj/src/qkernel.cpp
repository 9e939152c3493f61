#include "qfreq/qkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qfreq/linalg.hpp"
#include "qfreq/threading.hpp"

namespace qfreq {

namespace {

void check_labels(std::span<const double> labels) {
  if (labels.empty()) throw shape_error("empty label vector");
  for (double y : labels)
    if (y != 1.0 && y != -1.0)
      throw domain_error("labels must be exactly +1 or -1");
}

std::vector<StateVector> prepare_all(const AnsatzSpec& spec,
                                     const ParamVector& params,
                                     const std::vector<std::vector<double>>& xs,
                                     int threads) {
  std::vector<StateVector> states(xs.size());
  parallel_for_chunks(xs.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      states[i] = prepare_state(spec, params, xs[i]);
  });
  return states;
}

KernelMatrix overlaps_to_kernel(const std::vector<StateVector>& states) {
  const int n = static_cast<int>(states.size());
  KernelMatrix kernel;
  kernel.size = n;
  kernel.entries.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double f = std::norm(inner_product(
          states[static_cast<std::size_t>(i)], states[static_cast<std::size_t>(j)]));
      kernel.at(i, j) = f;
      kernel.at(j, i) = f;
    }
  }
  return kernel;
}

}  // namespace

KernelMatrix kernel_matrix(const AnsatzSpec& spec, const ParamVector& params,
                           const std::vector<std::vector<double>>& inputs,
                           int threads) {
  if (inputs.empty()) throw shape_error("kernel_matrix: no inputs");
  return overlaps_to_kernel(prepare_all(spec, params, inputs, threads));
}

double alignment(const KernelMatrix& kernel, std::span<const double> labels) {
  check_labels(labels);
  const int n = kernel.size;
  if (static_cast<std::size_t>(n) != labels.size())
    throw shape_error("alignment: kernel/label size mismatch");
  double s = 0.0;
  double frob2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double k = kernel.at(i, j);
      s += k * labels[static_cast<std::size_t>(i)] *
           labels[static_cast<std::size_t>(j)];
      frob2 += k * k;
    }
  if (frob2 <= 0.0) throw numeric_error("alignment: zero kernel");
  return s / (static_cast<double>(n) * std::sqrt(frob2));
}

AlignmentResult optimize_alignment(const AnsatzSpec& spec,
                                   const ParamVector& params0,
                                   const Dataset& data, int steps, double eta,
                                   int threads) {
  check_labels(data.labels);
  if (data.inputs.size() != data.labels.size())
    throw shape_error("optimize_alignment: input/label counts differ");
  if (steps < 0) throw config_error("optimize_alignment: negative step count");
  const std::size_t n = data.size();
  const std::size_t n_params = params0.size();
  const double half_pi = std::numbers::pi / 2.0;

  // Circuit positions of the trainable slots, in parameter order.
  std::vector<std::size_t> slot_pos(n_params);
  for (std::size_t g = 0; g < spec.gates.size(); ++g)
    if (spec.gates[g].role == SlotRole::Trainable)
      slot_pos[static_cast<std::size_t>(spec.gates[g].param_index)] = g;

  AlignmentResult result;
  result.params = params0;
  ParamVector params = params0;
  double best_a = -std::numeric_limits<double>::infinity();

  // Flattened per-sample partials, reduced in sample order for determinism.
  std::vector<double> partial_s(n * n_params);
  std::vector<double> partial_h(n * n_params);

  for (int step = 0;; ++step) {
    const std::vector<StateVector> base =
        prepare_all(spec, params, data.inputs, threads);
    const KernelMatrix kernel = overlaps_to_kernel(base);
    const double a_now = alignment(kernel, data.labels);
    result.history.push_back(a_now);
    if (a_now > best_a) {
      best_a = a_now;
      result.params = params;
    }
    if (step == steps) break;

    double frob2 = 0.0;
    double s_now = 0.0;
    for (int i = 0; i < kernel.size; ++i)
      for (int j = 0; j < kernel.size; ++j) {
        frob2 += kernel.at(i, j) * kernel.at(i, j);
        s_now += kernel.at(i, j) * data.labels[static_cast<std::size_t>(i)] *
                 data.labels[static_cast<std::size_t>(j)];
      }

    std::fill(partial_s.begin(), partial_s.end(), 0.0);
    std::fill(partial_h.begin(), partial_h.end(), 0.0);
    parallel_for_chunks(n, threads, [&](std::size_t sb, std::size_t se) {
      // Forward prefix cache for one sample; a shifted preparation then only
      // replays the suffix behind the shifted slot.
      std::vector<StateVector> prefix(spec.gates.size() + 1);
      for (std::size_t a = sb; a < se; ++a) {
        prefix[0] = init_zero(spec.num_qubits);
        for (std::size_t g = 0; g < spec.gates.size(); ++g) {
          prefix[g + 1] = prefix[g];
          const GateSlot& slot = spec.gates[g];
          if (slot.role == SlotRole::Entangler) {
            apply_cnot(prefix[g + 1], slot.qubit, slot.target);
          } else {
            const double angle =
                slot.role == SlotRole::Trainable
                    ? params[static_cast<std::size_t>(slot.param_index)]
                    : slot.feature_scale *
                          data.inputs[a][static_cast<std::size_t>(
                              slot.feature_index)];
            apply_rotation(prefix[g + 1], slot.axis, slot.qubit, angle);
          }
        }
        for (std::size_t l = 0; l < n_params; ++l) {
          const std::size_t g = slot_pos[l];
          const GateSlot& slot = spec.gates[g];
          double t_row_s = 0.0;
          double t_row_h = 0.0;
          for (int sign = 0; sign < 2; ++sign) {
            StateVector shifted = prefix[g];
            const double shift = sign == 0 ? half_pi : -half_pi;
            apply_rotation(shifted, slot.axis, slot.qubit, params[l] + shift);
            for (std::size_t g2 = g + 1; g2 < spec.gates.size(); ++g2) {
              const GateSlot& s2 = spec.gates[g2];
              if (s2.role == SlotRole::Entangler) {
                apply_cnot(shifted, s2.qubit, s2.target);
              } else {
                const double angle =
                    s2.role == SlotRole::Trainable
                        ? params[static_cast<std::size_t>(s2.param_index)]
                        : s2.feature_scale *
                              data.inputs[a][static_cast<std::size_t>(
                                  s2.feature_index)];
                apply_rotation(shifted, s2.axis, s2.qubit, angle);
              }
            }
            const double w = sign == 0 ? 0.5 : -0.5;
            for (std::size_t b = 0; b < n; ++b) {
              const double f = std::norm(inner_product(shifted, base[b]));
              const double t = w * f;
              t_row_s += t * data.labels[b];
              t_row_h += t * kernel.at(static_cast<int>(a), static_cast<int>(b));
            }
          }
          partial_s[a * n_params + l] = 2.0 * data.labels[a] * t_row_s;
          partial_h[a * n_params + l] = 2.0 * t_row_h;
        }
      }
    });

    const double frob = std::sqrt(frob2);
    bool finite = true;
    for (std::size_t l = 0; l < n_params; ++l) {
      double ds = 0.0;
      double dh = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        ds += partial_s[a * n_params + l];
        dh += partial_h[a * n_params + l];
      }
      const double grad =
          (ds - s_now * dh / frob2) / (static_cast<double>(n) * frob);
      params[l] += eta * grad;
      finite = finite && std::isfinite(params[l]);
    }
    if (!finite) {
      result.warning = true;
      break;
    }
  }

  result.initial = result.history.front();
  result.final = best_a;
  return result;
}

double dual_objective(const KernelMatrix& kernel,
                      std::span<const double> labels,
                      std::span<const double> alpha) {
  const int n = kernel.size;
  double linear = 0.0;
  double quad = 0.0;
  for (int i = 0; i < n; ++i) {
    linear += alpha[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j)
      quad += alpha[static_cast<std::size_t>(i)] *
              alpha[static_cast<std::size_t>(j)] *
              labels[static_cast<std::size_t>(i)] *
              labels[static_cast<std::size_t>(j)] * kernel.at(i, j);
  }
  return linear - 0.5 * quad;
}

namespace {

// Working state for SMO with maximal-violating-pair selection. grad is the
// gradient of the minimization form (1/2 a^T Q a - e^T a), Q_ij = y_i y_j K_ij,
// so E_i = f(x_i) - y_i = y_i * grad_i independently of the bias.
struct SmoState {
  const KernelMatrix& kernel;
  std::span<const double> y;
  double c;
  std::vector<double> alpha;
  std::vector<double> grad;
  SvmTrainStats* stats;
  bool track_objective;

  bool in_up(int i) const {
    const double a = alpha[static_cast<std::size_t>(i)];
    return (y[static_cast<std::size_t>(i)] > 0.0 && a < c) ||
           (y[static_cast<std::size_t>(i)] < 0.0 && a > 0.0);
  }
  bool in_low(int i) const {
    const double a = alpha[static_cast<std::size_t>(i)];
    return (y[static_cast<std::size_t>(i)] < 0.0 && a < c) ||
           (y[static_cast<std::size_t>(i)] > 0.0 && a > 0.0);
  }
  double score(int i) const {  // -y_i grad_i
    return -y[static_cast<std::size_t>(i)] * grad[static_cast<std::size_t>(i)];
  }

  // Maximum KKT violation m - M; optimal when <= tol.
  double violation(int* arg_up = nullptr, int* arg_low = nullptr) const {
    double m = -std::numeric_limits<double>::infinity();
    double mm = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kernel.size; ++i) {
      if (in_up(i) && score(i) > m) {
        m = score(i);
        if (arg_up != nullptr) *arg_up = i;
      }
      if (in_low(i) && score(i) < mm) {
        mm = score(i);
        if (arg_low != nullptr) *arg_low = i;
      }
    }
    if (!std::isfinite(m) || !std::isfinite(mm)) return 0.0;
    return m - mm;
  }

  bool take_step(int i1, int i2) {
    if (i1 == i2) return false;
    const double a1 = alpha[static_cast<std::size_t>(i1)];
    const double a2 = alpha[static_cast<std::size_t>(i2)];
    const double y1 = y[static_cast<std::size_t>(i1)];
    const double y2 = y[static_cast<std::size_t>(i2)];
    const double e1 = y1 * grad[static_cast<std::size_t>(i1)];
    const double e2 = y2 * grad[static_cast<std::size_t>(i2)];
    const double s = y1 * y2;
    double lo, hi;
    if (s > 0.0) {
      lo = std::max(0.0, a1 + a2 - c);
      hi = std::min(c, a1 + a2);
    } else {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c, c + a2 - a1);
    }
    if (hi - lo < 1e-12 * c) return false;

    const double k11 = kernel.at(i1, i1);
    const double k12 = kernel.at(i1, i2);
    const double k22 = kernel.at(i2, i2);
    const double curvature = k11 + k22 - 2.0 * k12;
    double a2_new;
    if (curvature > 1e-12) {
      a2_new = std::clamp(a2 + y2 * (e1 - e2) / curvature, lo, hi);
    } else {
      // Flat direction: pick the better box endpoint by the exact objective.
      std::vector<double> trial = alpha;
      trial[static_cast<std::size_t>(i2)] = lo;
      trial[static_cast<std::size_t>(i1)] = a1 + s * (a2 - lo);
      const double obj_lo = dual_objective(kernel, y, trial);
      trial[static_cast<std::size_t>(i2)] = hi;
      trial[static_cast<std::size_t>(i1)] = a1 + s * (a2 - hi);
      const double obj_hi = dual_objective(kernel, y, trial);
      if (obj_lo > obj_hi + 1e-12) {
        a2_new = lo;
      } else if (obj_hi > obj_lo + 1e-12) {
        a2_new = hi;
      } else {
        return false;
      }
    }
    const double delta2 = a2_new - a2;
    if (std::abs(delta2) < 1e-14 * c) return false;
    const double a1_new = a1 + s * (a2 - a2_new);
    const double delta1 = a1_new - a1;

    for (int k = 0; k < kernel.size; ++k)
      grad[static_cast<std::size_t>(k)] +=
          y[static_cast<std::size_t>(k)] *
          (y1 * delta1 * kernel.at(i1, k) + y2 * delta2 * kernel.at(i2, k));
    alpha[static_cast<std::size_t>(i1)] = a1_new;
    alpha[static_cast<std::size_t>(i2)] = a2_new;
    if (stats != nullptr) {
      ++stats->updates;
      if (track_objective)
        stats->objectives.push_back(dual_objective(kernel, y, alpha));
    }
    return true;
  }
};

}  // namespace

SvmModel svm_train(const KernelMatrix& kernel, std::span<const double> labels,
                   double c, const SvmOptions& options, SvmTrainStats* stats) {
  check_labels(labels);
  const int n = kernel.size;
  if (static_cast<std::size_t>(n) != labels.size())
    throw shape_error("svm_train: kernel/label size mismatch");
  if (!(c > 0.0)) throw config_error("svm_train: C must be positive");
  double scale = 0.0;
  for (double v : kernel.entries) scale = std::max(scale, std::abs(v));
  if (min_eigenvalue(kernel.entries, n) < -1e-9 * std::max(1.0, scale))
    throw numeric_error("svm_train: kernel is not positive semidefinite");

  SmoState smo{kernel,
               labels,
               c,
               std::vector<double>(static_cast<std::size_t>(n), 0.0),
               std::vector<double>(static_cast<std::size_t>(n), -1.0),
               stats,
               options.track_objective};

  // One "pass" is n pair updates; the budget mirrors a sweep-based solver.
  const long max_updates = static_cast<long>(options.max_passes_factor) * n * n;
  long updates = 0;
  double gap = 0.0;
  while (updates < max_updates) {
    int i_up = -1, i_low = -1;
    gap = smo.violation(&i_up, &i_low);
    if (gap <= options.tol || i_up < 0 || i_low < 0) break;
    bool stepped = smo.take_step(i_up, i_low);
    if (!stepped) {
      // The maximal pair can be box-blocked; fall back to the most-violating
      // partner that admits progress.
      std::vector<int> candidates;
      for (int j = 0; j < n; ++j)
        if (j != i_up && smo.in_low(j)) candidates.push_back(j);
      std::sort(candidates.begin(), candidates.end(),
                [&](int a, int b) { return smo.score(a) < smo.score(b); });
      for (int j : candidates)
        if ((stepped = smo.take_step(i_up, j))) break;
      if (!stepped) {
        for (int i = 0; i < n && !stepped; ++i)
          if (i != i_low && smo.in_up(i)) stepped = smo.take_step(i, i_low);
      }
      if (!stepped) break;  // no admissible progress left
    }
    ++updates;
  }
  if (stats != nullptr)
    stats->passes = static_cast<int>((updates + n - 1) / n);
  gap = smo.violation();
  if (gap > options.tol)
    throw convergence_error(
        "svm_train: KKT violation " + std::to_string(gap) + " above " +
        std::to_string(options.tol) + " after " + std::to_string(updates) +
        " pair updates");

  SvmModel model;
  model.alpha = smo.alpha;
  model.c = c;
  model.labels.assign(labels.begin(), labels.end());
  for (int i = 0; i < n; ++i)
    if (smo.alpha[static_cast<std::size_t>(i)] > 0.0)
      model.support_indices.push_back(i);

  // Bias from unbounded support vectors; box midpoint as the fallback.
  double acc = 0.0;
  int count = 0;
  const double edge = 1e-8 * std::max(1.0, c);
  for (int i = 0; i < n; ++i) {
    const double a = smo.alpha[static_cast<std::size_t>(i)];
    if (a > edge && a < c - edge) {
      double f = 0.0;
      for (int j = 0; j < n; ++j)
        f += smo.alpha[static_cast<std::size_t>(j)] *
             labels[static_cast<std::size_t>(j)] * kernel.at(j, i);
      acc += labels[static_cast<std::size_t>(i)] - f;
      ++count;
    }
  }
  if (count > 0) {
    model.bias = acc / static_cast<double>(count);
  } else {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      double f = 0.0;
      for (int j = 0; j < n; ++j)
        f += smo.alpha[static_cast<std::size_t>(j)] *
             labels[static_cast<std::size_t>(j)] * kernel.at(j, i);
      const double yi = labels[static_cast<std::size_t>(i)];
      const double ai = smo.alpha[static_cast<std::size_t>(i)];
      const double bound = yi - f;
      // alpha = 0 wants y*(f+b) >= 1; alpha = C wants y*(f+b) <= 1.
      const bool wants_ge = (ai <= edge && yi > 0.0) || (ai >= c - edge && yi < 0.0);
      if (wants_ge) {
        lo = std::max(lo, bound);
      } else {
        hi = std::min(hi, bound);
      }
    }
    if (std::isfinite(lo) && std::isfinite(hi)) {
      model.bias = 0.5 * (lo + hi);
    } else if (std::isfinite(lo)) {
      model.bias = lo;
    } else if (std::isfinite(hi)) {
      model.bias = hi;
    } else {
      model.bias = 0.0;
    }
  }
  return model;
}

int svm_predict(const SvmModel& model, std::span<const double> kernel_row) {
  if (kernel_row.size() != model.alpha.size())
    throw shape_error("svm_predict: kernel row length mismatch");
  double f = model.bias;
  for (std::size_t i = 0; i < model.alpha.size(); ++i)
    f += model.alpha[i] * model.labels[i] * kernel_row[i];
  return f >= 0.0 ? 1 : -1;
}

}  // namespace qfreq
