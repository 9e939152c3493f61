#include "qfreq/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "qfreq/errors.hpp"

namespace qfreq::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write " + path.string());
  return out;
}

std::string trim_k(double k) {
  // Short label form for column headers.
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", k);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read " + path.string());
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char chunk[4096];
  while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(chunk[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  return hash;
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_spectrum_csv(const std::filesystem::path& path,
                        const SpectrumSeries& series) {
  std::ofstream out = open_out(path);
  out << "k,re,im,abs\n";
  for (std::size_t j = 0; j < series.size(); ++j) {
    out << format_double(series.k_values[j]) << ','
        << format_double(series.amplitudes[j].real()) << ','
        << format_double(series.amplitudes[j].imag()) << ','
        << format_double(std::abs(series.amplitudes[j])) << '\n';
  }
}

void write_train_log_csv(const std::filesystem::path& path,
                         const TrainLog& log) {
  std::ofstream out = open_out(path);
  out << "iter,loss";
  for (double k : log.tracked_ks) out << ",delta_f_k" << trim_k(k);
  for (double k : log.tracked_ks) out << ",grad_norm_k" << trim_k(k);
  out << '\n';
  for (const TrainRecord& rec : log.records) {
    out << rec.iter << ',' << format_double(rec.loss);
    for (double v : rec.delta_f) out << ',' << format_double(v);
    for (double v : rec.freq_grad_norms) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_residuals_csv(const std::filesystem::path& path,
                         const TrainLog& log) {
  std::ofstream out = open_out(path);
  out << "iter";
  if (!log.records.empty())
    for (std::size_t i = 0; i < log.records[0].residuals.size(); ++i)
      out << ",eps_" << i;
  out << '\n';
  for (const TrainRecord& rec : log.records) {
    out << rec.iter;
    for (double v : rec.residuals) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_kernel_csv(const std::filesystem::path& path,
                      const KernelMatrix& kernel) {
  std::ofstream out = open_out(path);
  for (int i = 0; i < kernel.size; ++i) {
    for (int j = 0; j < kernel.size; ++j) {
      if (j > 0) out << ',';
      out << format_double(kernel.at(i, j));
    }
    out << '\n';
  }
}

void write_dynamics_csv(const std::filesystem::path& path,
                        const std::vector<DynamicsRow>& rows,
                        const std::vector<double>& tracked_ks) {
  std::ofstream out = open_out(path);
  out << "t";
  for (double k : tracked_ks)
    out << ",actual_abs_k" << trim_k(k) << ",predicted_abs_k" << trim_k(k);
  out << '\n';
  const std::size_t per_iter = tracked_ks.size();
  for (std::size_t r = 0; r + per_iter <= rows.size(); r += per_iter) {
    out << rows[r].iter;
    for (std::size_t j = 0; j < per_iter; ++j)
      out << ',' << format_double(rows[r + j].actual_abs) << ','
          << format_double(rows[r + j].predicted_abs);
    out << '\n';
  }
}

void write_predictions_csv(const std::filesystem::path& path,
                           const std::vector<int>& predicted,
                           const std::vector<double>& truth) {
  if (predicted.size() != truth.size())
    throw shape_error("write_predictions_csv: size mismatch");
  std::ofstream out = open_out(path);
  out << "index,predicted,true\n";
  for (std::size_t i = 0; i < predicted.size(); ++i)
    out << i << ',' << predicted[i] << ',' << static_cast<int>(truth[i]) << '\n';
}

}  // namespace qfreq::io
