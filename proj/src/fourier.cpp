#include "qfreq/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qfreq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> integer_grid(std::size_t n) {
  const long lo = -static_cast<long>(n / 2);
  std::vector<double> ks(n);
  for (std::size_t j = 0; j < n; ++j)
    ks[j] = static_cast<double>(lo + static_cast<long>(j));
  return ks;
}

template <class T>
SpectrumSeries dft_uniform_impl(std::span<const T> values) {
  const std::size_t n = values.size();
  if (n == 0) throw shape_error("dft_uniform: empty input");
  SpectrumSeries out;
  out.k_values = integer_grid(n);
  out.amplitudes.resize(n);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const double k = out.k_values[j];
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const double phase = -k * kTwoPi * static_cast<double>(i) /
                           static_cast<double>(n);
      acc += cplx{std::cos(phase), std::sin(phase)} * values[i];
    }
    out.amplitudes[j] = acc * inv_sqrt_n;
  }
  return out;
}

}  // namespace

std::size_t SpectrumSeries::index_of(double k) const {
  const auto it = std::lower_bound(k_values.begin(), k_values.end(), k - 1e-9);
  if (it == k_values.end() || std::abs(*it - k) > 1e-9)
    throw index_error("frequency " + std::to_string(k) + " not on the grid");
  return static_cast<std::size_t>(it - k_values.begin());
}

SpectrumSeries dft_uniform(std::span<const double> values) {
  return dft_uniform_impl<double>(values);
}

SpectrumSeries dft_uniform_complex(std::span<const cplx> values) {
  return dft_uniform_impl<cplx>(values);
}

SpectrumSeries nudft_projected(const std::vector<std::vector<double>>& points,
                               std::span<const double> values,
                               const ProjectionDirection& p,
                               std::span<const double> k_grid) {
  if (points.size() != values.size())
    throw shape_error("nudft_projected: point/value counts differ");
  if (k_grid.empty()) throw shape_error("nudft_projected: empty k grid");
  const std::size_t n = points.size();
  std::vector<double> proj(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].size() != p.components.size())
      throw shape_error("nudft_projected: point dimension mismatch");
    double dot = 0.0;
    for (std::size_t d = 0; d < p.components.size(); ++d)
      dot += p.components[d] * points[i][d];
    proj[i] = dot;
  }
  SpectrumSeries out;
  out.k_values.assign(k_grid.begin(), k_grid.end());
  out.amplitudes.resize(k_grid.size());
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < k_grid.size(); ++j) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const double phase = -proj[i] * k_grid[j];
      acc += cplx{std::cos(phase), std::sin(phase)} * values[i];
    }
    out.amplitudes[j] = acc * inv_sqrt_n;
  }
  return out;
}

ProjectionDirection principal_direction(
    const std::vector<std::vector<double>>& points) {
  if (points.size() < 2)
    throw degenerate_data_error("principal_direction: need at least 2 points");
  const std::size_t dim = points[0].size();
  std::vector<double> mean(dim, 0.0);
  for (const auto& x : points) {
    if (x.size() != dim)
      throw shape_error("principal_direction: ragged point set");
    for (std::size_t d = 0; d < dim; ++d) mean[d] += x[d];
  }
  for (double& m : mean) m /= static_cast<double>(points.size());

  std::vector<double> cov(dim * dim, 0.0);
  for (const auto& x : points) {
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b)
        cov[a * dim + b] += (x[a] - mean[a]) * (x[b] - mean[b]);
  }
  const double denom = static_cast<double>(points.size() - 1);
  double frob = 0.0;
  for (double& c : cov) {
    c /= denom;
    frob += c * c;
  }
  if (std::sqrt(frob) < 1e-14)
    throw degenerate_data_error("principal_direction: zero covariance");

  // Start from the column with the largest diagonal entry.
  std::size_t start = 0;
  for (std::size_t d = 1; d < dim; ++d)
    if (cov[d * dim + d] > cov[start * dim + start]) start = d;
  std::vector<double> v(dim, 0.0);
  for (std::size_t d = 0; d < dim; ++d) v[d] = cov[d * dim + start];
  double norm = 0.0;
  for (double c : v) norm += c * c;
  if (norm < 1e-300) v[start] = 1.0;

  std::vector<double> next(dim);
  for (int it = 0; it < 1000; ++it) {
    for (std::size_t a = 0; a < dim; ++a) {
      double acc = 0.0;
      for (std::size_t b = 0; b < dim; ++b) acc += cov[a * dim + b] * v[b];
      next[a] = acc;
    }
    double nn = 0.0;
    for (double c : next) nn += c * c;
    nn = std::sqrt(nn);
    if (nn < 1e-300)
      throw degenerate_data_error("principal_direction: iteration collapsed");
    double delta = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      next[d] /= nn;
      delta = std::max(delta, std::abs(std::abs(next[d]) - std::abs(v[d])));
    }
    v.swap(next);
    if (delta < 1e-12 && it > 0) break;
  }
  std::size_t arg = 0;
  for (std::size_t d = 1; d < dim; ++d)
    if (std::abs(v[d]) > std::abs(v[arg])) arg = d;
  if (v[arg] < 0.0)
    for (double& c : v) c = -c;
  return ProjectionDirection{std::move(v)};
}

double relative_error(const SpectrumSeries& f_hat, const SpectrumSeries& y_hat,
                      double k) {
  const cplx y = y_hat.at(k);
  const double denom = std::abs(y);
  if (denom <= 1e-12)
    throw numeric_error("relative_error: |y_hat| below tolerance at k = " +
                        std::to_string(k));
  return std::abs(f_hat.at(k) - y) / denom;
}

SpectrumSeries half_spectrum(const SpectrumSeries& series) {
  SpectrumSeries out;
  for (std::size_t j = 0; j < series.size(); ++j) {
    if (series.k_values[j] >= -1e-12) {
      out.k_values.push_back(series.k_values[j]);
      out.amplitudes.push_back(series.amplitudes[j]);
    }
  }
  return out;
}

std::vector<double> top_peaks(const SpectrumSeries& series, int m) {
  if (m < 1) throw shape_error("top_peaks: m must be >= 1");
  const SpectrumSeries half = half_spectrum(series);
  const std::size_t n = half.size();
  struct Peak {
    double k;
    double amp;
  };
  std::vector<Peak> peaks;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = std::abs(half.amplitudes[j]);
    const bool left_ok = (j == 0) || a > std::abs(half.amplitudes[j - 1]);
    const bool right_ok = (j + 1 == n) || a > std::abs(half.amplitudes[j + 1]);
    if (left_ok && right_ok && n > 1) peaks.push_back({half.k_values[j], a});
  }
  if (n == 1) peaks.push_back({half.k_values[0], std::abs(half.amplitudes[0])});
  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.amp != b.amp) return a.amp > b.amp;
    return a.k < b.k;
  });
  std::vector<double> result;
  for (const Peak& p : peaks) {
    if (static_cast<int>(result.size()) == m) break;
    result.push_back(p.k);
  }
  return result;
}

std::map<int, cplx> pqc_fourier_coefficients(const AnsatzSpec& spec,
                                             const ParamVector& params) {
  const FrequencySpectrum sp = spectrum(spec);
  const int e = sp.max_frequency;
  const int n = 2 * e + 1;
  std::vector<double> samples(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    samples[static_cast<std::size_t>(j)] = evaluate(spec, params, {&x, 1});
  }
  std::map<int, cplx> coeffs;
  for (int w = -e; w <= e; ++w) {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      const double phase =
          -static_cast<double>(w) * kTwoPi * static_cast<double>(j) /
          static_cast<double>(n);
      acc += cplx{std::cos(phase), std::sin(phase)} *
             samples[static_cast<std::size_t>(j)];
    }
    coeffs[w] = acc / static_cast<double>(n);
  }
  return coeffs;
}

double parseval_gap(std::span<const double> x_residuals,
                    const SpectrumSeries& k_residuals) {
  double ex = 0.0;
  for (double r : x_residuals) ex += r * r;
  double ek = 0.0;
  for (const cplx& a : k_residuals.amplitudes) ek += std::norm(a);
  return std::abs(ex - ek);
}

}  // namespace qfreq
