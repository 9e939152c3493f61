#include "qfreq/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qfreq/rng.hpp"

namespace qfreq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

CurveKind curve_kind_from_string(const std::string& s) {
  if (s == "low") return CurveKind::Low;
  if (s == "mid") return CurveKind::Mid;
  if (s == "high") return CurveKind::High;
  throw config_error("unknown curve kind '" + s + "' (expected low/mid/high)");
}

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Low: return "low";
    case CurveKind::Mid: return "mid";
    case CurveKind::High: return "high";
  }
  return "?";
}

double curve_value(CurveKind kind, double x) {
  const double s1 = std::sin(x);
  const double s3 = std::sin(3.0 * x);
  const double s8 = std::sin(8.0 * x);
  switch (kind) {
    case CurveKind::Low: return 0.9 * s1 + 0.1 * s3 + 0.1 * s8;
    case CurveKind::Mid: return 0.1 * s1 + 0.9 * s3 + 0.1 * s8;
    case CurveKind::High: return 0.1 * s1 + 0.1 * s3 + 0.9 * s8;
  }
  return 0.0;
}

Dataset curve_dataset(CurveKind kind, int n_samples) {
  if (n_samples < 17)
    throw config_error("curve dataset needs at least 17 samples to resolve k=8");
  Dataset data;
  data.grid = GridKind::UniformAngle;
  data.inputs.reserve(static_cast<std::size_t>(n_samples));
  data.labels.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double x = kTwoPi * static_cast<double>(i) /
                     static_cast<double>(n_samples);
    data.inputs.push_back({x});
    data.labels.push_back(curve_value(kind, x));
  }
  return data;
}

Dataset iris_load(const std::filesystem::path& path,
                  const std::pair<std::string, std::string>& class_pair,
                  double lo, double hi) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open dataset file " + path.string());

  Dataset data;
  std::string line;
  int line_no = 0;
  bool saw_first = false;
  bool saw_second = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream ss(line);
    std::string field;
    std::vector<double> features;
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ss, field, ','))
        throw config_error(path.string() + ":" + std::to_string(line_no) +
                           ": expected 4 feature columns");
      try {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size()) throw std::invalid_argument(field);
        features.push_back(v);
      } catch (const std::exception&) {
        if (line_no == 1 && c == 0) {
          features.clear();
          break;  // header row
        }
        throw config_error(path.string() + ":" + std::to_string(line_no) +
                           ": non-numeric feature '" + field + "'");
      }
    }
    if (features.empty()) continue;  // skipped header
    std::string cls;
    if (!std::getline(ss, cls))
      throw config_error(path.string() + ":" + std::to_string(line_no) +
                         ": missing class column");
    if (cls == class_pair.first) {
      data.inputs.push_back(std::move(features));
      data.labels.push_back(1.0);
      saw_first = true;
    } else if (cls == class_pair.second) {
      data.inputs.push_back(std::move(features));
      data.labels.push_back(-1.0);
      saw_second = true;
    }
  }
  if (!saw_first || !saw_second)
    throw config_error("class '" +
                       (saw_first ? class_pair.second : class_pair.first) +
                       "' not found in " + path.string());

  for (int d = 0; d < 4; ++d) {
    double mn = data.inputs[0][static_cast<std::size_t>(d)];
    double mx = mn;
    for (const auto& row : data.inputs) {
      mn = std::min(mn, row[static_cast<std::size_t>(d)]);
      mx = std::max(mx, row[static_cast<std::size_t>(d)]);
    }
    const double range = mx - mn;
    for (auto& row : data.inputs) {
      double& v = row[static_cast<std::size_t>(d)];
      v = range > 0.0 ? lo + (hi - lo) * (v - mn) / range : lo;
    }
  }
  return data;
}

void write_synthetic_iris_csv(const std::filesystem::path& path,
                              std::uint64_t seed) {
  struct ClassStats {
    const char* name;
    double mean[4];
    double sd[4];
  };
  // Per-class feature means/sds of the classic four-feature Iris table.
  static const ClassStats stats[3] = {
      {"Iris-setosa", {5.01, 3.43, 1.46, 0.25}, {0.35, 0.38, 0.17, 0.11}},
      {"Iris-versicolor", {5.94, 2.77, 4.26, 1.33}, {0.52, 0.31, 0.47, 0.20}},
      {"Iris-virginica", {6.59, 2.97, 5.55, 2.03}, {0.64, 0.32, 0.55, 0.27}},
  };
  Rng rng(seed);
  std::ofstream out(path);
  if (!out) throw config_error("cannot write " + path.string());
  for (const ClassStats& cs : stats) {
    for (int i = 0; i < 50; ++i) {
      for (int d = 0; d < 4; ++d) {
        double v = cs.mean[d] + cs.sd[d] * rng.normal();
        v = std::max(v, 0.1);
        out << std::round(v * 10.0) / 10.0 << ",";
      }
      out << cs.name << "\n";
    }
  }
}

long pow_mod(long base, long exp, long mod) {
  if (mod <= 0) throw config_error("pow_mod: modulus must be positive");
  unsigned long long result = 1;
  unsigned long long b = static_cast<unsigned long long>(((base % mod) + mod) % mod);
  unsigned long long e = static_cast<unsigned long long>(exp);
  const unsigned long long m = static_cast<unsigned long long>(mod);
  while (e > 0) {
    if (e & 1ULL) result = result * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<long>(result);
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_generator(long alpha, long p) {
  if (alpha <= 1 || alpha >= p) return false;
  long m = p - 1;
  std::vector<long> prime_factors;
  for (long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      prime_factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) prime_factors.push_back(m);
  for (long q : prime_factors)
    if (pow_mod(alpha, (p - 1) / q, p) == 1) return false;
  return true;
}

std::vector<long> dlp_log_table(long p, long alpha) {
  std::vector<long> table(static_cast<std::size_t>(p), -1);
  long value = 1;
  for (long x = 0; x < p - 1; ++x) {
    table[static_cast<std::size_t>(value)] = x;
    value = static_cast<long>(
        static_cast<unsigned long long>(value) *
        static_cast<unsigned long long>(alpha) %
        static_cast<unsigned long long>(p));
  }
  return table;
}

Dataset dlp_dataset(const DlpConfig& config) {
  const long p = config.prime;
  if (p > 1000000)
    throw config_error("dlp prime too large for the brute-force log table");
  if (!is_prime(p)) throw config_error("dlp: p = " + std::to_string(p) +
                                       " is not prime");
  if (!is_generator(config.generator, p))
    throw config_error("dlp: alpha = " + std::to_string(config.generator) +
                       " does not generate Z_" + std::to_string(p) + "^*");
  if (config.sample_count < 1 || config.sample_count > p - 1)
    throw config_error("dlp: sample count must lie in [1, p-1]");
  if (config.train_fraction <= 0.0 || config.train_fraction > 1.0)
    throw config_error("dlp: train fraction must lie in (0, 1]");

  const std::vector<long> logs = dlp_log_table(p, config.generator);
  const long half = (p - 3) / 2;  // interval {s, ..., s + half} has (p-1)/2 logs

  std::vector<long> pool(static_cast<std::size_t>(p - 1));
  for (long b = 1; b < p; ++b) pool[static_cast<std::size_t>(b - 1)] = b;
  Rng rng(config.seed);
  rng.shuffle(pool);

  Dataset data;
  const int n_train = std::max(
      1, static_cast<int>(std::lround(config.train_fraction *
                                       static_cast<double>(config.sample_count))));
  for (int i = 0; i < config.sample_count; ++i) {
    const long beta = pool[static_cast<std::size_t>(i)];
    const long x = logs[static_cast<std::size_t>(beta)];
    const long offset = ((x - config.interval_start) % (p - 1) + (p - 1)) % (p - 1);
    const double label = offset <= half ? 1.0 : -1.0;
    const double feature =
        config.features == DlpConfig::Feature::GroupElement
            ? static_cast<double>(beta)
            : static_cast<double>(x);
    if (i < n_train) {
      data.inputs.push_back({feature});
      data.labels.push_back(label);
    } else {
      data.heldout_inputs.push_back({feature});
      data.heldout_labels.push_back(label);
    }
  }
  return data;
}

}  // namespace qfreq
