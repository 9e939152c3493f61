#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qfreq/errors.hpp"

namespace qfreq {

enum class GridKind { UniformAngle, General };

// Supervised dataset; held-out vectors are empty unless the constructor
// produced a split.
struct Dataset {
  std::vector<std::vector<double>> inputs;
  std::vector<double> labels;
  std::vector<std::vector<double>> heldout_inputs;
  std::vector<double> heldout_labels;
  GridKind grid = GridKind::General;

  std::size_t size() const { return inputs.size(); }
  int feature_dim() const {
    return inputs.empty() ? 0 : static_cast<int>(inputs[0].size());
  }
};

enum class CurveKind { Low, Mid, High };

CurveKind curve_kind_from_string(const std::string& s);
std::string to_string(CurveKind kind);

// Target value at x: a 0.9/0.1/0.1 mix of sin(x), sin(3x), sin(8x) with the
// dominant weight on the component named by `kind`.
double curve_value(CurveKind kind, double x);

// N uniform samples of the target curve on [0, 2*pi); N >= 17 so that the
// k = 8 component is resolved without aliasing.
Dataset curve_dataset(CurveKind kind, int n_samples);

// Reads a 5-column CSV (4 numeric features + class name), keeps the two named
// classes (first -> +1, second -> -1) and min-max scales each feature to
// [lo, hi]. Constant columns map to lo. Row order follows the file.
Dataset iris_load(const std::filesystem::path& path,
                  const std::pair<std::string, std::string>& class_pair,
                  double lo = 0.0, double hi = 3.14159265358979323846);

// Deterministic Iris-like stand-in: three 50-row classes drawn from the
// published per-class feature statistics. Used when no real file is supplied.
void write_synthetic_iris_csv(const std::filesystem::path& path,
                              std::uint64_t seed);

struct DlpConfig {
  long prime = 67;
  long generator = 2;
  long interval_start = 0;
  int sample_count = 40;
  std::uint64_t seed = 0;
  double train_fraction = 0.75;
  enum class Feature { GroupElement, Logarithm } features = Feature::GroupElement;
};

long pow_mod(long base, long exp, long mod);
bool is_prime(long n);
// alpha generates Z_p^*: alpha^((p-1)/q) != 1 mod p for every prime q | p-1.
bool is_generator(long alpha, long p);

// Discrete logs of 1..p-1 via the brute-force power table; table[beta] = x
// with alpha^x = beta (mod p). Index 0 is unused (-1).
std::vector<long> dlp_log_table(long p, long alpha);

// Samples beta uniformly without replacement from Z_p^*; label +1 iff
// log_alpha(beta) lies in the half interval {s, ..., s+(p-3)/2} mod (p-1).
// The trailing (1 - train_fraction) of the samples become the held-out split.
Dataset dlp_dataset(const DlpConfig& config);

}  // namespace qfreq
