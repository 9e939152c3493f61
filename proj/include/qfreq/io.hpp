#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qfreq/fourier.hpp"
#include "qfreq/qntk.hpp"
#include "qfreq/training.hpp"

namespace qfreq::io {

// Full round-trip precision (17 significant digits) so golden files are
// byte-stable.
std::string format_double(double v);

std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string hex64(std::uint64_t v);

// columns: k, re, im, abs
void write_spectrum_csv(const std::filesystem::path& path,
                        const SpectrumSeries& series);

// columns: iter, loss, delta_f per tracked peak, grad_norm per tracked peak
void write_train_log_csv(const std::filesystem::path& path,
                         const TrainLog& log);

// columns: iter, eps_0 ... eps_{N-1}
void write_residuals_csv(const std::filesystem::path& path,
                         const TrainLog& log);

// dense matrix dump, one row per line
void write_kernel_csv(const std::filesystem::path& path,
                      const KernelMatrix& kernel);

// columns: t, then actual_abs/predicted_abs per tracked k
void write_dynamics_csv(const std::filesystem::path& path,
                        const std::vector<DynamicsRow>& rows,
                        const std::vector<double>& tracked_ks);

// columns: index, predicted, true
void write_predictions_csv(const std::filesystem::path& path,
                           const std::vector<int>& predicted,
                           const std::vector<double>& truth);

}  // namespace qfreq::io
